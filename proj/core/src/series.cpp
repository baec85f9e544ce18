#include "betafrechet/series.hpp"

#include <cmath>

#include "betafrechet/specfun.hpp"

namespace bf {

using specfun::SignedLog;

bool is_exact_positive_integer(double b) {
    return b >= 1.0 && b == std::floor(b) && b < 1e15;
}

SeriesValue cdf_series(const BFParams& th, double x, const SeriesOptions& opts) {
    if (!(x > 0.0))
        throw domain_error("cdf_series: requires x > 0");
    const double t = std::pow(th.sigma / x, th.lambda);
    const double ln_pref = specfun::ln_gamma(th.a + th.b) - specfun::ln_gamma(th.a);
    const bool int_b = is_exact_positive_integer(th.b);
    const std::size_t j_end = int_b ? static_cast<std::size_t>(th.b) : opts.max_terms;

    double sum = 0.0;
    int small_run = 0;
    std::size_t j = 0;
    for (; j < j_end; ++j) {
        const double dj = static_cast<double>(j);
        const SignedLog rg = specfun::recip_gamma_signed(th.b - dj);
        if (rg.sign == 0) {
            if (int_b) break;
            continue; // exact zero term, not evidence of convergence
        }
        const double ln_term = ln_pref + rg.log_abs - specfun::ln_gamma(dj + 1.0)
                               - std::log(th.a + dj) - (th.a + dj) * t;
        const int sign = (j % 2 == 0 ? 1 : -1) * rg.sign;
        const double term = sign * std::exp(ln_term);
        sum += term;
        if (!int_b) {
            if (std::fabs(term) < opts.term_tol) {
                if (++small_run >= opts.consecutive_small) {
                    ++j;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
    }
    if (!int_b && j >= opts.max_terms && small_run < opts.consecutive_small)
        throw convergence_error("cdf_series: stopping rule not met", sum, j);
    return {sum, j};
}

double cdf_closed_integer_b(const BFParams& th, double x) {
    if (!is_exact_positive_integer(th.b))
        throw domain_error("cdf_closed_integer_b: b must be a positive integer");
    if (!(x > 0.0))
        throw domain_error("cdf_closed_integer_b: requires x > 0");
    const double t = std::pow(th.sigma / x, th.lambda);
    const double one_minus_y = -std::expm1(-t);
    const int n = static_cast<int>(th.b);
    // F = e^{-a t} sum_{j<b} [Gamma(a+j)/(Gamma(a) j!)] (1-y)^j
    double coeff = 1.0, powr = 1.0, sum = 1.0;
    for (int j = 1; j < n; ++j) {
        coeff *= (th.a + j - 1.0) / j;
        powr *= one_minus_y;
        sum += coeff * powr;
    }
    return std::exp(-th.a * t) * sum;
}

double cdf_closed_integer_a(const BFParams& th, double x) {
    if (!is_exact_positive_integer(th.a))
        throw domain_error("cdf_closed_integer_a: a must be a positive integer");
    if (!(x > 0.0))
        throw domain_error("cdf_closed_integer_a: requires x > 0");
    const double t = std::pow(th.sigma / x, th.lambda);
    const double y = std::exp(-t);
    const double one_minus_y = -std::expm1(-t);
    const int n = static_cast<int>(th.a);
    // F = 1 - (1-y)^b sum_{j<a} [Gamma(b+j)/(Gamma(b) j!)] y^j
    double coeff = 1.0, powr = 1.0, sum = 1.0;
    for (int j = 1; j < n; ++j) {
        coeff *= (th.b + j - 1.0) / j;
        powr *= y;
        sum += coeff * powr;
    }
    return 1.0 - std::pow(one_minus_y, th.b) * sum;
}

namespace {

// w_k of the Frechet mixture, through logs and explicit sign
double mixture_weight(const BFParams& th, std::size_t k, double ln_pref) {
    const double dk = static_cast<double>(k);
    const SignedLog rg = specfun::recip_gamma_signed(th.b - dk);
    if (rg.sign == 0) return 0.0;
    const double ln_w = ln_pref + rg.log_abs - specfun::ln_gamma(dk + 1.0)
                        - std::log(dk + th.a);
    const int sign = (k % 2 == 0 ? 1 : -1) * rg.sign;
    return sign * std::exp(ln_w);
}

} // namespace

MixtureWeights mixture_weights(const BFParams& th, const SeriesOptions& opts) {
    const double ln_pref = specfun::ln_gamma(th.a + th.b) - specfun::ln_gamma(th.a);
    const bool int_b = is_exact_positive_integer(th.b);
    MixtureWeights out;
    out.truncated = false;
    out.weight_sum = 0.0;
    const double inv_lambda = 1.0 / th.lambda;
    if (int_b) {
        const std::size_t nb = static_cast<std::size_t>(th.b);
        out.weights.reserve(nb);
        out.scales.reserve(nb);
        for (std::size_t k = 0; k < nb; ++k) {
            out.weights.push_back(mixture_weight(th, k, ln_pref));
            out.scales.push_back(th.sigma * std::pow(k + th.a, inv_lambda));
            out.weight_sum += out.weights.back();
        }
        return out;
    }
    int small_run = 0;
    for (std::size_t k = 0; k < opts.max_terms; ++k) {
        const double w = mixture_weight(th, k, ln_pref);
        out.weights.push_back(w);
        out.scales.push_back(th.sigma * std::pow(k + th.a, inv_lambda));
        out.weight_sum += w;
        if (std::fabs(w) < opts.term_tol) {
            if (++small_run >= opts.consecutive_small)
                return out;
        } else {
            small_run = 0;
        }
    }
    out.truncated = true;
    return out;
}

double mixture_pdf(const BFParams& th, double x, const SeriesOptions& opts) {
    if (!(x > 0.0))
        throw domain_error("mixture_pdf: requires x > 0");
    const double t = std::pow(th.sigma / x, th.lambda);
    const double ln_pref = specfun::ln_gamma(th.a + th.b) - specfun::ln_gamma(th.a);
    // g_{a_k,lambda}(x) = lambda sigma^lambda (k+a) x^{-(lambda+1)} e^{-(k+a)t}
    const double ln_g_base = std::log(th.lambda) + th.lambda * std::log(th.sigma)
                             - (th.lambda + 1.0) * std::log(x);
    const bool int_b = is_exact_positive_integer(th.b);
    const std::size_t k_end = int_b ? static_cast<std::size_t>(th.b) : opts.max_terms;

    double sum = 0.0;
    int small_run = 0;
    for (std::size_t k = 0; k < k_end; ++k) {
        const double dk = static_cast<double>(k);
        const SignedLog rg = specfun::recip_gamma_signed(th.b - dk);
        if (rg.sign == 0) {
            if (int_b) break;
            continue;
        }
        const double ln_term = ln_pref + rg.log_abs - specfun::ln_gamma(dk + 1.0)
                               + ln_g_base - (dk + th.a) * t;
        const int sign = (k % 2 == 0 ? 1 : -1) * rg.sign;
        const double term = sign * std::exp(ln_term);
        sum += term;
        if (!int_b) {
            if (std::fabs(term) < opts.term_tol * std::fmax(1.0, std::fabs(sum))) {
                if (++small_run >= opts.consecutive_small)
                    return sum;
            } else {
                small_run = 0;
            }
        }
    }
    if (!int_b)
        throw convergence_error("mixture_pdf: stopping rule not met", sum, opts.max_terms);
    return sum;
}

std::vector<double> power_series_coeffs(std::span<const double> a_coeffs, int n, int K) {
    if (a_coeffs.empty() || a_coeffs[0] == 0.0)
        throw domain_error("power_series_coeffs: requires a_0 != 0");
    if (n < 1 || K < 0)
        throw domain_error("power_series_coeffs: requires n >= 1, K >= 0");
    const double a0 = a_coeffs[0];
    std::vector<double> c(static_cast<std::size_t>(K) + 1, 0.0);
    c[0] = std::pow(a0, n);
    for (int k = 1; k <= K; ++k) {
        double s = 0.0;
        const int l_max = std::min<int>(k, static_cast<int>(a_coeffs.size()) - 1);
        for (int l = 1; l <= l_max; ++l)
            s += (static_cast<double>(n) * l - k + l) * a_coeffs[l] * c[k - l];
        c[k] = s / (k * a0);
    }
    return c;
}

namespace {

double ln_beta_int(int i, int n) {
    return specfun::ln_beta(static_cast<double>(i), static_cast<double>(n - i + 1));
}

void check_rank(int i, int n, const char* who) {
    if (n < 1 || i < 1 || i > n)
        throw domain_error(std::string(who) + ": requires 1 <= i <= n");
}

} // namespace

double order_stat_pdf_exact(const BFParams& th, int i, int n, double x) {
    check_rank(i, n, "order_stat_pdf_exact");
    const double F = bf_cdf(th, x);
    const double S = bf_survival(th, x);
    double v = bf_pdf(th, x) * std::exp(-ln_beta_int(i, n));
    if (i > 1) v *= std::pow(F, i - 1);
    if (i < n) v *= std::pow(S, n - i);
    return v;
}

double order_stat_cdf_exact(const BFParams& th, int i, int n, double x) {
    check_rank(i, n, "order_stat_cdf_exact");
    const double F = bf_cdf(th, x);
    const double S = bf_survival(th, x);
    double sum = 0.0;
    for (int r = i; r <= n; ++r) {
        const double ln_binom = specfun::ln_gamma(n + 1.0) - specfun::ln_gamma(r + 1.0)
                                - specfun::ln_gamma(n - r + 1.0);
        double term = std::exp(ln_binom);
        term *= std::pow(F, r);
        term *= std::pow(S, n - r);
        sum += term;
    }
    return std::fmin(sum, 1.0);
}

OrderStatCoeffs order_stat_coeffs(const BFParams& th, int i, int n,
                                  const SeriesOptions& opts) {
    check_rank(i, n, "order_stat_coeffs");
    const bool int_b = is_exact_positive_integer(th.b);
    const double lnB_ab = specfun::ln_beta(th.a, th.b);
    const double lnG_b = specfun::ln_gamma(th.b);
    const double ln_s0 = -(std::log(th.a) + lnG_b); // s_0 = 1/(a Gamma(b))

    OrderStatCoeffs out;
    out.rank = i;
    out.sample_size = n;
    out.integer_b = int_b;
    out.truncated = false;

    // inner-series coefficients s_j = (-1)^j / (Gamma(b-j) j! (a+j)),
    // scaled by 1/s_0 so the c-ladder starts at 1
    std::vector<double> s_scaled{1.0};
    auto extend_s = [&](std::size_t upto) {
        while (s_scaled.size() <= upto) {
            const double j = static_cast<double>(s_scaled.size());
            const SignedLog rg = specfun::recip_gamma_signed(th.b - j);
            if (rg.sign == 0) {
                s_scaled.push_back(0.0);
                continue;
            }
            const double ln_s = rg.log_abs - specfun::ln_gamma(j + 1.0) - std::log(th.a + j);
            const int sign = (static_cast<std::size_t>(j) % 2 == 0 ? 1 : -1) * rg.sign;
            s_scaled.push_back(sign * std::exp(ln_s - ln_s0));
        }
    };

    for (int k = 0; k <= n - i; ++k) {
        const int m = i + k - 1; // power of the cdf factor
        const double ln_binom = specfun::ln_gamma(n - i + 1.0) - specfun::ln_gamma(k + 1.0)
                                - specfun::ln_gamma(n - i - k + 1.0);
        // prefactor (-1)^k C(n-i,k) Gamma(b)^{i+k-1} s_0^m / (B(a,b)^{i+k} B(i,n-i+1))
        const double ln_pref = ln_binom + m * lnG_b + m * ln_s0
                               - (i + k) * lnB_ab - ln_beta_int(i, n);
        const int sign_pref = (k % 2 == 0) ? 1 : -1;

        std::vector<double> row;
        const double alpha0 = th.a * (i + k);
        if (m == 0) {
            row.push_back(sign_pref * std::exp(ln_pref + specfun::ln_beta(alpha0, th.b)));
        } else {
            const std::size_t j_cap = int_b
                ? static_cast<std::size_t>(m) * (static_cast<std::size_t>(th.b) - 1)
                : opts.max_terms;
            std::vector<double> c{1.0}; // scaled ladder, c_0 = 1
            int small_run = 0;
            for (std::size_t j = 0; j <= j_cap; ++j) {
                if (j > 0) {
                    extend_s(j);
                    double s = 0.0;
                    for (std::size_t l = 1; l <= j; ++l)
                        s += (static_cast<double>(m) * l - j + l) * s_scaled[l] * c[j - l];
                    c.push_back(s / static_cast<double>(j));
                }
                const double lnB_shift = specfun::ln_beta(alpha0 + static_cast<double>(j), th.b);
                const double coeff = sign_pref * c[j]
                                     * std::exp(ln_pref + lnB_shift);
                row.push_back(coeff);
                if (!int_b) {
                    if (std::fabs(coeff) < opts.term_tol) {
                        if (++small_run >= opts.consecutive_small)
                            break;
                    } else {
                        small_run = 0;
                    }
                }
            }
            if (!int_b && row.size() >= opts.max_terms)
                out.truncated = true;
        }
        out.table.push_back(std::move(row));
    }
    return out;
}

double order_stat_pdf_expansion(const OrderStatCoeffs& c, const BFParams& th, double x,
                                const SeriesOptions& opts) {
    if (!(x > 0.0))
        throw domain_error("order_stat_pdf_expansion: requires x > 0");
    const int i = c.rank;
    double sum = 0.0;
    for (int k = 0; k < static_cast<int>(c.table.size()); ++k) {
        const double alpha0 = th.a * (i + k);
        const auto& row = c.table[static_cast<std::size_t>(k)];
        int small_run = 0;
        bool settled = row.empty();
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] == 0.0) continue;
            const BFParams shifted(alpha0 + static_cast<double>(j), th.b, th.sigma, th.lambda);
            const double term = row[j] * bf_pdf(shifted, x);
            sum += term;
            if (std::fabs(term) < opts.term_tol * std::fmax(1.0, std::fabs(sum))) {
                if (++small_run >= opts.consecutive_small) {
                    settled = true;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        if (!settled && !c.integer_b && c.truncated)
            throw convergence_error("order_stat_pdf_expansion: table ended before the "
                                    "stopping rule was met", sum, row.size());
    }
    return sum;
}

} // namespace bf
