#ifndef BETAFRECHET_SPECFUN_HPP
#define BETAFRECHET_SPECFUN_HPP

#include "betafrechet/errors.hpp"

namespace bf::specfun {

// Value stored as sign * exp(log_abs). sign == 0 encodes an exact zero,
// which is how 1/Gamma behaves at the poles of Gamma.
struct SignedLog {
    double log_abs;
    int sign; // -1, 0, +1

    double value() const;
    static SignedLog zero();
    static SignedLog from_value(double v);
};

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// log Beta(a,b) for a,b > 0.
double ln_beta(double a, double b);

// log Gamma(z+delta) - log Gamma(z), computed through the Stirling series
// when both arguments are large (direct subtraction of two huge log-gammas
// loses the small difference).
double ln_gamma_ratio(double z, double delta);

// 1/Gamma(x) for any finite x; entire, exactly zero at 0, -1, -2, ...
// Negative non-integer arguments go through the reflection identity
// 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi.
SignedLog recip_gamma_signed(double x);

/// psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

/// psi'(x), x > 0.
double trigamma(double x);

// Regularized incomplete beta I_y(a,b), continued-fraction evaluation with
// the symmetry switch at y = (a+1)/(a+b+2).
double reg_inc_beta(double y, double a, double b);

// Inverse of reg_inc_beta in y: monotone, |I_y(a,b) - p| driven below ~1e-13.
double inv_reg_inc_beta(double p, double a, double b);

// Gauss hypergeometric series 2F1(alpha,beta,gamma;x) on 0 <= x < 1.
// Partial summation with stopping rule |term| < tol*|sum|; throws
// convergence_error after max_terms.
double gauss_2f1(double alpha, double beta, double gamma, double x,
                 double tol = 1e-14, std::size_t max_terms = 1000000);

/// Regularized upper incomplete gamma Q(s,x) = Gamma(s,x)/Gamma(s).
double reg_gamma_q(double s, double x);

/// Upper tail P(chi^2_k > w) of the chi-square distribution.
double chi2_sf(double w, int k);

/// Quantile of the standard normal distribution.
double std_normal_quantile(double p);

/// sin(pi x) with argument reduction exact in the integer part.
double sin_pi(double x);

} // namespace bf::specfun

#endif
