#ifndef BETAFRECHET_DISTRIBUTION_HPP
#define BETAFRECHET_DISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include "betafrechet/errors.hpp"
#include "betafrechet/rng.hpp"

namespace bf {

struct FrechetParams {
    double sigma;
    double lambda;

    FrechetParams(double sigma_, double lambda_);
};

// Parameter vector of the beta Frechet distribution BF(a, b, sigma, lambda):
// the beta shapes a, b and the Frechet scale/shape sigma, lambda, all
// strictly positive and finite.
struct BFParams {
    double a;
    double b;
    double sigma;
    double lambda;

    BFParams(double a_, double b_, double sigma_, double lambda_);
    FrechetParams frechet() const { return {sigma, lambda}; }
};

double frechet_cdf(const FrechetParams& p, double x);
double frechet_pdf(const FrechetParams& p, double x);
double frechet_logpdf(const FrechetParams& p, double x);

/// Density of BF(a,b,sigma,lambda) at x > 0.
double bf_pdf(const BFParams& th, double x);

// Log-density computed entirely in log space (log-beta, log1p of -e^{-t}),
// stable for the very large b seen in real fits.
double bf_logpdf(const BFParams& th, double x);

/// Distribution function: I applied at y = exp(-(sigma/x)^lambda).
double bf_cdf(const BFParams& th, double x);

/// Survival 1 - F(x), evaluated through the swapped incomplete beta.
double bf_survival(const BFParams& th, double x);

// Hazard pdf/(1-cdf). Throws bf::overflow_error when the survival
// underflows to zero, so callers can tell saturation from a domain error.
double bf_hazard(const BFParams& th, double x);

/// Quantile x = sigma * (-log Q)^{-1/lambda}, Q the beta(a,b) quantile of p.
double bf_quantile(const BFParams& th, double p);

// Inverse-transform sampler: X = sigma / (-log V)^{1/lambda} with V a
// beta(a,b) variate from the inverse incomplete beta applied to a
// xoshiro256++ uniform stream. Deterministic for a given seed.
class BFSampler {
public:
    BFSampler(const BFParams& th, std::uint64_t seed);
    double next();

private:
    BFParams theta_;
    Xoshiro256pp rng_;
};

std::vector<double> bf_sample(const BFParams& th, std::size_t n, std::uint64_t seed);

} // namespace bf

#endif
