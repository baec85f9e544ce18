#include "betafrechet/moments.hpp"

#include <cmath>

#include "betafrechet/quadrature.hpp"
#include "betafrechet/specfun.hpp"

namespace bf {

using specfun::SignedLog;

bool bf_moment_exists(const BFParams& th, double r) {
    return r < th.lambda * std::fmin(1.0, th.b);
}

namespace {

void check_existence(const BFParams& th, double r, const char* who) {
    if (!(r > 0.0))
        throw domain_error(std::string(who) + ": requires r > 0");
    if (r >= th.lambda)
        throw existence_error(std::string(who) + ": moment requires r < lambda");
    if (r >= th.lambda * th.b)
        throw existence_error(std::string(who) +
                              ": moment requires r < lambda*b (upper tail index)");
}

// summand of the moment series without the outer prefactor:
// (-1)^j (a+j)^{r/lambda - 1} / (Gamma(b-j) j!)
double moment_term(const BFParams& th, double rho, double j) {
    const SignedLog rg = specfun::recip_gamma_signed(th.b - j);
    if (rg.sign == 0) return 0.0;
    const double ln_t = (rho - 1.0) * std::log(th.a + j) + rg.log_abs
                        - specfun::ln_gamma(j + 1.0);
    const int sign = (static_cast<long long>(j) % 2 == 0 ? 1 : -1) * rg.sign;
    return sign * std::exp(ln_t);
}

// Smooth continuation of the summand past the sign transient:
// phi(u) = (a+u)^{rho-1} Gamma(u+1-b)/Gamma(u+1), with
// (-1)^u / Gamma(b-u) == sin(pi b)/pi * Gamma(u+1-b)/Gamma(u+1) for u > b.
double moment_tail(const BFParams& th, double rho, double from) {
    const double s = specfun::sin_pi(th.b) / 3.141592653589793238462643383279502884;
    auto phi = [&](double u) {
        return std::exp((rho - 1.0) * std::log(th.a + u)
                        + specfun::ln_gamma_ratio(u + 1.0, -th.b));
    };
    // int_J^inf phi over dyadic blocks (phi is smooth and power-law on
    // each), then close the far tail with the two-term asymptotic
    // phi(u) = u^{rho-1-b} [1 + c1/u + O(u^{-2})]
    double integral = 0.0;
    double u_lo = from;
    while (u_lo < 1e8) {
        const double u_hi = 2.0 * u_lo;
        const auto block = quadrature::integrate(phi, u_lo, u_hi, 1e-14, 1e-12, 200);
        if (!block.converged)
            throw convergence_error("raw_moment: tail quadrature failed", integral, 0);
        integral += block.value;
        u_lo = u_hi;
    }
    const double power = rho - th.b; // < 0 by the existence gate
    const double c1 = th.a * (rho - 1.0) - th.b * (1.0 - th.b) / 2.0;
    integral += std::pow(u_lo, power) / (-power)
                + c1 * std::pow(u_lo, power - 1.0) / (1.0 - power);
    // Euler-Maclaurin: sum_{j>=J} phi(j) = int_J^inf phi + phi(J)/2 - phi'(J)/12 + ...
    const double pJ = phi(from);
    const double dlog = (rho - 1.0) / (th.a + from)
                        + specfun::digamma(from + 1.0 - th.b) - specfun::digamma(from + 1.0);
    return s * (integral + 0.5 * pJ - pJ * dlog / 12.0);
}

} // namespace

double raw_moment(const BFParams& th, double r, const SeriesOptions& opts) {
    check_existence(th, r, "raw_moment");
    const double rho = r / th.lambda;
    const double ln_pref = r * std::log(th.sigma) + specfun::ln_gamma(1.0 - rho)
                           + specfun::ln_gamma(th.a + th.b) - specfun::ln_gamma(th.a);
    const double pref = std::exp(ln_pref);
    const bool int_b = is_exact_positive_integer(th.b);

    if (int_b) {
        double sum = 0.0;
        for (long long j = 0; j < static_cast<long long>(th.b); ++j)
            sum += moment_term(th, rho, static_cast<double>(j));
        return pref * sum;
    }

    // direct block, then the Euler-Maclaurin tail
    const std::size_t head = std::min<std::size_t>(
        std::max<std::size_t>(48, static_cast<std::size_t>(th.b) + 16), opts.max_terms);
    double sum = 0.0;
    int small_run = 0;
    std::size_t j = 0;
    bool settled = false;
    for (; j < head; ++j) {
        const double term = moment_term(th, rho, static_cast<double>(j));
        sum += term;
        if (std::fabs(pref * term) < opts.term_tol) {
            if (++small_run >= opts.consecutive_small) {
                settled = true;
                ++j;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if (!settled)
        sum += moment_tail(th, rho, static_cast<double>(j));
    return pref * sum;
}

double raw_moment(const MomentRequest& req) {
    return raw_moment(req.theta, req.r, req.opts);
}

CumulantSummary frechet_cumulant_summary(const FrechetParams& p) {
    if (!(p.lambda > 4.0))
        throw existence_error("frechet_cumulant_summary: requires lambda > 4");
    double g[5];
    for (int k = 1; k <= 4; ++k)
        g[k] = std::exp(specfun::ln_gamma(1.0 - k / p.lambda));
    const double v = g[2] - g[1] * g[1];
    CumulantSummary out;
    out.mean = p.sigma * g[1];
    out.variance = p.sigma * p.sigma * v;
    out.skewness = (g[3] - 3.0 * g[1] * g[2] + 2.0 * g[1] * g[1] * g[1]) / std::pow(v, 1.5);
    out.kurtosis = (g[4] - 4.0 * g[1] * g[3] + 6.0 * g[1] * g[1] * g[2]
                    - 3.0 * std::pow(g[1], 4)) / (v * v);
    return out;
}

ShapeSummary bf_skewness_kurtosis(const BFParams& th, const SeriesOptions& opts) {
    if (!(th.lambda > 4.0))
        throw existence_error("bf_skewness_kurtosis: requires lambda > 4");
    if (!bf_moment_exists(th, 4.0))
        throw existence_error("bf_skewness_kurtosis: fourth moment requires 4 < lambda*b");
    const double m1 = raw_moment(th, 1.0, opts);
    const double m2 = raw_moment(th, 2.0, opts);
    const double m3 = raw_moment(th, 3.0, opts);
    const double m4 = raw_moment(th, 4.0, opts);
    // Horner grouping keeps the cancellation between the large raw moments mild
    const double v = m2 - m1 * m1;
    const double mu3 = m3 - m1 * (3.0 * m2 - 2.0 * m1 * m1);
    const double mu4 = m4 - m1 * (4.0 * m3 - m1 * (6.0 * m2 - 3.0 * m1 * m1));
    return {mu3 / std::pow(v, 1.5), mu4 / (v * v)};
}

double order_stat_moment(const BFParams& th, int i, int n, double r,
                         const SeriesOptions& opts) {
    if (n < 1 || i < 1 || i > n)
        throw domain_error("order_stat_moment: requires 1 <= i <= n");
    check_existence(th, r, "order_stat_moment");
    const OrderStatCoeffs c = order_stat_coeffs(th, i, n, opts);
    if (c.truncated)
        throw convergence_error("order_stat_moment: coefficient table truncated "
                                "before the stopping rule", 0.0, opts.max_terms);
    double sum = 0.0;
    for (int k = 0; k < static_cast<int>(c.table.size()); ++k) {
        const double alpha0 = th.a * (i + k);
        const auto& row = c.table[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] == 0.0) continue;
            const BFParams shifted(alpha0 + static_cast<double>(j), th.b, th.sigma, th.lambda);
            sum += row[j] * raw_moment(shifted, r, opts);
        }
    }
    return sum;
}

std::vector<double> l_moments(const BFParams& th, int count, const SeriesOptions& opts) {
    if (count < 1 || count > 4)
        throw domain_error("l_moments: count must be 1..4");
    if (!bf_moment_exists(th, 1.0))
        throw existence_error("l_moments: requires lambda*min(1,b) > 1 (finite mean)");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int r = 0; r < count; ++r) {
        double acc = 0.0;
        double binom = 1.0;
        for (int k = 0; k <= r; ++k) {
            if (k > 0) binom *= static_cast<double>(r - k + 1) / k;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom * order_stat_moment(th, r + 1 - k, r + 1, 1.0, opts);
        }
        out.push_back(acc / (r + 1));
    }
    return out;
}

} // namespace bf
