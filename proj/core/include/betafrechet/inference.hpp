#ifndef BETAFRECHET_INFERENCE_HPP
#define BETAFRECHET_INFERENCE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "betafrechet/distribution.hpp"

namespace bf {

enum class Model { BF, EF, Frechet };

std::string model_name(Model m);

// Index quadruple of a beta-expectation integral
// T_{i,j,k,l} = E[ V^i (1-V)^{-j} (-log V)^k {log(-log V)}^l ], V ~ Beta(a,b).
struct TSpec {
    int i, j, k, l;
    double a, b;
};

// Adaptive quadrature of the T integrand on the u = -log v axis, split so
// both endpoint singularities are resolved; target absolute error ~1e-9.
// Requires b > j (integrability of (1-V)^{-j}).
double t_integral(const TSpec& spec);

enum class InfoSource { analytic, numeric };

// 4x4 symmetric unit (per-observation) expected information, indexed in the
// parameter order (a, b, sigma, lambda).
struct InfoMatrix {
    std::array<double, 16> m{};
    InfoSource source = InfoSource::analytic;

    double& operator()(int i, int j) { return m[static_cast<std::size_t>(4 * i + j)]; }
    double operator()(int i, int j) const { return m[static_cast<std::size_t>(4 * i + j)]; }
};

struct FitResult {
    BFParams theta;
    double loglik;
    InfoMatrix info;                  // numeric expected information at theta
    std::array<double, 4> std_errors; // 0 for parameters the model fixes
    bool converged;
    int iterations;
    Model model;
    std::size_t n_obs;
};

struct LRTest {
    double statistic;
    int df;
    double p_value;
    Model null_model;
    double alt_loglik;
    double null_loglik;
    bool alt_converged;
    bool null_converged;
};

/// Total log-likelihood (sum of log densities) of positive observations.
double loglik(const BFParams& th, std::span<const double> data);

/// Analytic score (d loglik / d(a,b,sigma,lambda)) summed over the data.
std::array<double, 4> score(const BFParams& th, std::span<const double> data);

// The information matrix assembled exactly from the published element
// formulas (T's by t_integral). Requires b > 1 for the T_{.,1,.,.} elements
// and b > 2 for the T_{.,2,.,.} ones; otherwise throws divergence_error
// naming the offending element.
InfoMatrix info_matrix_analytic(const BFParams& th);

// Independent oracle: -E[d^2 loglik] by central finite differences of the
// analytic score, the expectation taken by beta-weighted quadrature on
// u = -log v. Symmetrized by averaging.
InfoMatrix info_matrix_numeric(const BFParams& th);

/// Observed information -(1/n) Hessian of the log-likelihood at theta (diagnostic).
InfoMatrix observed_info_matrix(const BFParams& th, std::span<const double> data);

struct FitOptions {
    double grad_tol = 1e-6;  // sup-norm of the log-scale gradient
    int max_iterations = 2000; // per restart, for each of the two phases
    int restarts = 3;          // jittered restarts on top of the seeded start
    std::uint64_t seed = 20090901;
};

// Maximum likelihood in log-parameter space: Nelder-Mead then a BFGS polish
// driven by the analytic score. EF fixes a=1, Frechet fixes a=b=1.
// Initialization is Frechet moment matching plus jittered restarts (and the
// caller's init, when given). Non-convergence is reported through the
// converged flag, never by inventing a value.
FitResult fit(std::span<const double> data, Model model,
              std::optional<BFParams> init = std::nullopt,
              const FitOptions& opts = {});

// Fits Frechet, EF and BF with each fit seeded from the previous one, which
// enforces the nesting inequality loglik_BF >= loglik_EF >= loglik_Frechet.
struct NestedFits {
    FitResult frechet;
    FitResult ef;
    FitResult bf;
};
NestedFits fit_nested(std::span<const double> data, const FitOptions& opts = {});

struct Interval {
    double lo, hi;
};

// Asymptotic confidence intervals theta_i -+ z_{gamma/2} sqrt(k^{ii}) from
// the inverse of n*K at theta-hat (numeric expected information).
std::array<Interval, 4> confidence_intervals(const FitResult& fit, double gamma);

/// Likelihood-ratio test of a submodel (df = 2 for Frechet, 1 for EF).
LRTest lr_test(std::span<const double> data, Model null_model,
               const FitOptions& opts = {});

/// Same, from already-computed fits.
LRTest lr_test_from_fits(const FitResult& alt, const FitResult& null_fit);

} // namespace bf

#endif
