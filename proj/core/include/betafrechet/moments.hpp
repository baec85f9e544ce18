#ifndef BETAFRECHET_MOMENTS_HPP
#define BETAFRECHET_MOMENTS_HPP

#include <vector>

#include "betafrechet/series.hpp"

namespace bf {

struct MomentRequest {
    double r;
    BFParams theta;
    SeriesOptions opts{};
};

// Existence gate shared by the moment operations. The r-th moment needs
// r < lambda (the published condition) and, because the upper tail decays
// like x^{-lambda b}, also r < lambda*b; the binding constraint is
// r < lambda*min(1, b).
bool bf_moment_exists(const BFParams& th, double r);

// r-th ordinary moment by the alternating gamma-ratio series. For integer b
// the sum stops at b-1 and is exact; otherwise the first block is summed
// directly and the smooth power-law tail is finished with an
// Euler-Maclaurin correction so slow (small b - r/lambda) cases still reach
// ~1e-10 relative accuracy.
double raw_moment(const MomentRequest& req);
double raw_moment(const BFParams& th, double r, const SeriesOptions& opts = {});

struct CumulantSummary {
    double mean;
    double variance;
    double skewness; // dimensionless
    double kurtosis; // dimensionless
};

/// Frechet mean/variance/skewness/kurtosis from g_k = Gamma(1 - k/lambda); lambda > 4.
CumulantSummary frechet_cumulant_summary(const FrechetParams& p);

struct ShapeSummary {
    double skewness;
    double kurtosis;
};

/// Standardized third/fourth central moments from the first four raw moments.
ShapeSummary bf_skewness_kurtosis(const BFParams& th, const SeriesOptions& opts = {});

// E[X_{i:n}^r] by combining the order-statistic coefficient table with raw
// moments of the shifted-a distributions BF(a(i+k)+j, b, sigma, lambda).
double order_stat_moment(const BFParams& th, int i, int n, double r,
                         const SeriesOptions& opts = {});

/// First `count` (<= 4) L-moments; requires the mean to exist.
std::vector<double> l_moments(const BFParams& th, int count,
                              const SeriesOptions& opts = {});

} // namespace bf

#endif
