#ifndef BETAFRECHET_SERIES_HPP
#define BETAFRECHET_SERIES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "betafrechet/distribution.hpp"

namespace bf {

// Truncation controls shared by every infinite sum in this library.
// term_tol is an absolute threshold on summand magnitude; a sum stops once
// consecutive_small successive terms fall below it (single small terms of
// an alternating series prove nothing).
struct SeriesOptions {
    std::size_t max_terms = 100000;
    double term_tol = 1e-14;
    int consecutive_small = 3;
};

struct SeriesValue {
    double value;
    std::size_t terms;
};

/// True when b is stored as an exact positive integer.
bool is_exact_positive_integer(double b);

// cdf as the exponential series in e^{-(a+j)(sigma/x)^lambda}; the sum
// terminates at b-1 for integer b and otherwise runs under the stopping
// rule. Throws convergence_error (carrying the partial sum) on failure.
SeriesValue cdf_series(const BFParams& th, double x, const SeriesOptions& opts = {});

/// Closed form for integer b; domain error if b is not a positive integer.
double cdf_closed_integer_b(const BFParams& th, double x);

/// Closed form for integer a; domain error if a is not a positive integer.
double cdf_closed_integer_a(const BFParams& th, double x);

// Signed weights w_k and Frechet scales a_k = sigma*(k+a)^{1/lambda} of the
// mixture representation of the density. Integer b gives exactly b weights
// summing to one; otherwise the sequence is truncated and weight_sum
// reports how much of the unit mass the kept terms carry.
struct MixtureWeights {
    std::vector<double> weights;
    std::vector<double> scales;
    bool truncated;
    double weight_sum;
};

MixtureWeights mixture_weights(const BFParams& th, const SeriesOptions& opts = {});

/// Pointwise partial sum of the mixture density at x.
double mixture_pdf(const BFParams& th, double x, const SeriesOptions& opts = {});

// Coefficients of (sum_k a_k x^k)^n up to degree K through the
// Gradshteyn-Ryzhik recursion; requires a_0 != 0.
std::vector<double> power_series_coeffs(std::span<const double> a_coeffs, int n, int K);

/// Exact order-statistic density f(x) F^{i-1} (1-F)^{n-i} / B(i, n-i+1).
double order_stat_pdf_exact(const BFParams& th, int i, int n, double x);

/// Exact order-statistic cdf as the binomial tail sum in F(x).
double order_stat_cdf_exact(const BFParams& th, int i, int n, double x);

// Order-statistic expansion coefficients: table[k][j] multiplies the
// density (or moment) of BF(a*(i+k)+j, b, sigma, lambda). Built through
// the c-ladder recursion with every 1/Gamma(b-l) routed through
// recip_gamma_signed, in scaled log magnitudes, so it is valid for integer
// and non-integer b alike. For integer b the j range is the exact
// polynomial degree (i+k-1)(b-1). Note the c-ladder cost is quadratic in
// the j extent, so opts.max_terms bounds per-k work accordingly.
struct OrderStatCoeffs {
    int rank;
    int sample_size;
    bool integer_b;
    bool truncated;
    std::vector<std::vector<double>> table; // [k][j]
};

OrderStatCoeffs order_stat_coeffs(const BFParams& th, int i, int n,
                                  const SeriesOptions& opts = {});

// Evaluates the expansion sum coeff(j,k) * bf_pdf(BF(a(i+k)+j, b, ...), x)
// under the pointwise stopping rule. Throws convergence_error if the table
// extent ends before the rule is satisfied.
double order_stat_pdf_expansion(const OrderStatCoeffs& c, const BFParams& th, double x,
                                const SeriesOptions& opts = {});

} // namespace bf

#endif
