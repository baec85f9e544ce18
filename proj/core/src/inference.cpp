#include "betafrechet/inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "betafrechet/quadrature.hpp"
#include "betafrechet/rng.hpp"
#include "betafrechet/specfun.hpp"

namespace bf {

std::string model_name(Model m) {
    switch (m) {
        case Model::BF: return "bf";
        case Model::EF: return "ef";
        case Model::Frechet: return "frechet";
    }
    return "?";
}

double t_integral(const TSpec& spec) {
    if (!(spec.a > 0.0) || !(spec.b > 0.0))
        throw domain_error("t_integral: requires a, b > 0");
    if (spec.i < 0 || spec.j < 0 || spec.k < 0 || spec.l < 0)
        throw domain_error("t_integral: indices must be nonnegative");
    if (!(spec.b > spec.j))
        throw divergence_error("t_integral: divergent for b <= j");
    const double lnB = specfun::ln_beta(spec.a, spec.b);
    const double ai = spec.a + spec.i;
    const double bj = spec.b - 1.0 - spec.j;
    auto f = [&](double u) {
        // v = e^{-u}; integrand v^{a+i} (1-v)^{b-1-j} u^k (log u)^l / B(a,b)
        double ln_val = -ai * u + bj * std::log(-std::expm1(-u)) - lnB;
        if (spec.k > 0) ln_val += spec.k * std::log(u);
        double val = std::exp(ln_val);
        if (spec.l > 0) {
            const double lu = std::log(u);
            for (int q = 0; q < spec.l; ++q) val *= lu;
        }
        return val;
    };
    const auto head = quadrature::integrate(f, 0.0, 1.0, 1e-12, 1e-12, 40000);
    const auto tail = quadrature::integrate_to_inf(f, 1.0, 1e-12, 1e-12, 40000);
    if (!head.converged || !tail.converged)
        throw convergence_error("t_integral: quadrature failed",
                                head.value + tail.value, 0);
    return head.value + tail.value;
}

namespace {

void check_data(std::span<const double> data, const char* who) {
    if (data.empty())
        throw data_error(std::string(who) + ": empty data");
    for (double y : data)
        if (!(y > 0.0) || !std::isfinite(y))
            throw data_error(std::string(who) + ": observations must be positive");
}

} // namespace

double loglik(const BFParams& th, std::span<const double> data) {
    check_data(data, "loglik");
    const double lnB = specfun::ln_beta(th.a, th.b);
    const double log_lambda = std::log(th.lambda);
    double acc = 0.0;
    for (double y : data) {
        const double t = std::pow(th.sigma / y, th.lambda);
        double v = log_lambda + th.lambda * std::log(th.sigma / y) - std::log(y) - th.a * t;
        if (th.b != 1.0)
            v += (th.b - 1.0) * std::log(-std::expm1(-t));
        acc += v;
    }
    return acc - data.size() * lnB;
}

std::array<double, 4> score(const BFParams& th, std::span<const double> data) {
    check_data(data, "score");
    const double psi_a = specfun::digamma(th.a);
    const double psi_b = specfun::digamma(th.b);
    const double psi_ab = specfun::digamma(th.a + th.b);
    double da = 0.0, db = 0.0, ds = 0.0, dl = 0.0;
    for (double y : data) {
        const double t = std::pow(th.sigma / y, th.lambda);
        const double em1 = std::expm1(t); // overflow to inf gives 1/em1 = 0
        const double bracket = th.a - (th.b - 1.0) / em1;
        const double log_sy = std::log(th.sigma / y);
        da += -t;
        db += std::log(-std::expm1(-t));
        ds += th.lambda / th.sigma * (1.0 - t * bracket);
        dl += 1.0 / th.lambda + log_sy * (1.0 - t * bracket);
    }
    const double n = static_cast<double>(data.size());
    da += n * (psi_ab - psi_a);
    db += n * (psi_ab - psi_b);
    return {da, db, ds, dl};
}

InfoMatrix info_matrix_analytic(const BFParams& th) {
    const double a = th.a, b = th.b, s = th.sigma, l = th.lambda;
    auto need = [&](int j, const char* element) {
        if (!(b > j))
            throw divergence_error(std::string("info_matrix_analytic: ") + element +
                                   " needs b > " + std::to_string(j));
    };
    need(1, "kappa_{b,sigma}/kappa_{b,lambda}/kappa_{sigma,sigma}/kappa_{lambda,lambda}");
    need(2, "kappa_{lambda,lambda}/kappa_{sigma,lambda}");

    const double dpsi = specfun::digamma(a + b) - specfun::digamma(a);
    const double T0011 = t_integral({0, 0, 1, 1, a, b});
    const double T1110 = t_integral({1, 1, 1, 0, a, b});
    const double T1111 = t_integral({1, 1, 1, 1, a, b});
    const double T1120 = t_integral({1, 1, 2, 0, a, b});
    const double T0012 = t_integral({0, 0, 1, 2, a, b});
    const double T1222 = t_integral({1, 2, 2, 2, a, b});
    const double T1112 = t_integral({1, 1, 1, 2, a, b});
    const double T1220 = t_integral({1, 2, 2, 0, a, b});

    InfoMatrix K;
    K.source = InfoSource::analytic;
    K(0, 0) = specfun::trigamma(a) - specfun::trigamma(a + b);
    K(1, 1) = specfun::trigamma(b) - specfun::trigamma(a + b);
    K(0, 1) = -specfun::trigamma(a + b);
    K(0, 2) = l / s * dpsi;
    K(0, 3) = T0011 / l;
    K(1, 2) = -l / s * T1110;
    K(1, 3) = -T1111 / l;
    K(2, 2) = l / (s * s) * (1.0 + a * (l - 1.0) * dpsi + (b - 1.0) * (l * T1120 - T1110));
    K(3, 3) = (1.0 + a * T0012 + (b - 1.0) * (T1222 - T1112)) / (l * l);
    K(2, 3) = -(1.0 - a * (dpsi + T0011) + (b - 1.0) * (T1110 + T1111 - l * T1220)) / s;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j)
            K(i, j) = K(j, i);
    return K;
}

namespace {

// expectation of f(u) against the weight e^{-au}(1-e^{-u})^{b-1}/B(a,b),
// u = -log V; split guided by beta quantiles so concentrated weights
// (very large b) are not missed by the first quadrature pass
double expect_beta(const std::function<double(double)>& f, double a, double b) {
    const double lnB = specfun::ln_beta(a, b);
    auto g = [&](double u) {
        const double ln_w = -a * u + (b - 1.0) * std::log(-std::expm1(-u)) - lnB;
        return f(u) * std::exp(ln_w);
    };
    const double u_lo = -std::log(specfun::inv_reg_inc_beta(0.99995, a, b));
    const double u_hi = -std::log(specfun::inv_reg_inc_beta(5e-5, a, b));
    double total = 0.0;
    bool ok = true;
    const auto piece1 = quadrature::integrate(g, 0.0, u_lo, 1e-11, 1e-10, 8000);
    const auto piece2 = quadrature::integrate(g, u_lo, u_hi, 1e-11, 1e-10, 8000);
    const auto piece3 = quadrature::integrate_to_inf(g, u_hi, 1e-11, 1e-10, 8000);
    total = piece1.value + piece2.value + piece3.value;
    ok = piece1.converged && piece2.converged && piece3.converged;
    if (!ok)
        throw convergence_error("info_matrix_numeric: expectation quadrature failed",
                                total, 0);
    return total;
}

} // namespace

InfoMatrix info_matrix_numeric(const BFParams& th) {
    const double base[4] = {th.a, th.b, th.sigma, th.lambda};
    double h[4];
    for (int m = 0; m < 4; ++m)
        h[m] = 1e-5 * std::fmax(1.0, std::fabs(base[m]));

    auto score1 = [&](const double* p, double y, int comp) {
        const BFParams t2(p[0], p[1], p[2], p[3]);
        const double one[1] = {y};
        return score(t2, std::span<const double>(one, 1))[static_cast<std::size_t>(comp)];
    };

    InfoMatrix K;
    K.source = InfoSource::numeric;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            auto d2 = [&](double u) {
                const double y = th.sigma * std::pow(u, -1.0 / th.lambda);
                double p[4] = {base[0], base[1], base[2], base[3]};
                p[j] = base[j] + h[j];
                const double up = score1(p, y, i);
                p[j] = base[j] - h[j];
                const double dn = score1(p, y, i);
                p[j] = base[j];
                double d_ij = (up - dn) / (2.0 * h[j]);
                p[i] = base[i] + h[i];
                const double up2 = score1(p, y, j);
                p[i] = base[i] - h[i];
                const double dn2 = score1(p, y, j);
                const double d_ji = (up2 - dn2) / (2.0 * h[i]);
                return 0.5 * (d_ij + d_ji);
            };
            K(i, j) = -expect_beta(d2, th.a, th.b);
            K(j, i) = K(i, j);
        }
    }
    return K;
}

InfoMatrix observed_info_matrix(const BFParams& th, std::span<const double> data) {
    check_data(data, "observed_info_matrix");
    const double base[4] = {th.a, th.b, th.sigma, th.lambda};
    double h[4];
    for (int m = 0; m < 4; ++m)
        h[m] = 1e-5 * std::fmax(1.0, std::fabs(base[m]));
    InfoMatrix K;
    K.source = InfoSource::numeric;
    const double n = static_cast<double>(data.size());
    for (int j = 0; j < 4; ++j) {
        double p[4] = {base[0], base[1], base[2], base[3]};
        p[j] = base[j] + h[j];
        const auto up = score(BFParams(p[0], p[1], p[2], p[3]), data);
        p[j] = base[j] - h[j];
        const auto dn = score(BFParams(p[0], p[1], p[2], p[3]), data);
        for (int i = 0; i < 4; ++i)
            K(i, j) = -(up[static_cast<std::size_t>(i)] - dn[static_cast<std::size_t>(i)]) /
                      (2.0 * h[j] * n);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double avg = 0.5 * (K(i, j) + K(j, i));
            K(i, j) = avg;
            K(j, i) = avg;
        }
    return K;
}

// ---------------------------------------------------------------------------
// fitting

namespace {

struct ParamMap {
    std::vector<int> free; // indices into (a,b,sigma,lambda)

    static ParamMap for_model(Model m) {
        switch (m) {
            case Model::BF: return {{0, 1, 2, 3}};
            case Model::EF: return {{1, 2, 3}};
            case Model::Frechet: return {{2, 3}};
        }
        return {{}};
    }

    BFParams unpack(const std::vector<double>& z) const {
        double th[4] = {1.0, 1.0, 1.0, 1.0};
        for (std::size_t m = 0; m < free.size(); ++m)
            th[static_cast<std::size_t>(free[m])] = std::exp(z[m]);
        return {th[0], th[1], th[2], th[3]};
    }

    std::vector<double> pack(const BFParams& th) const {
        const double v[4] = {th.a, th.b, th.sigma, th.lambda};
        std::vector<double> z(free.size());
        for (std::size_t m = 0; m < free.size(); ++m)
            z[m] = std::log(v[static_cast<std::size_t>(free[m])]);
        return z;
    }
};

constexpr double kBigObjective = 1e300;

double neg_loglik(const ParamMap& pm, const std::vector<double>& z,
                  std::span<const double> data) {
    for (double v : z)
        if (!std::isfinite(v) || std::fabs(v) > 50.0)
            return kBigObjective;
    const double ll = loglik(pm.unpack(z), data);
    return std::isfinite(ll) ? -ll : kBigObjective;
}

std::vector<double> neg_grad(const ParamMap& pm, const std::vector<double>& z,
                             std::span<const double> data) {
    const BFParams th = pm.unpack(z);
    const auto sc = score(th, data);
    const double v[4] = {th.a, th.b, th.sigma, th.lambda};
    std::vector<double> g(pm.free.size());
    for (std::size_t m = 0; m < pm.free.size(); ++m) {
        const int idx = pm.free[m];
        g[m] = -sc[static_cast<std::size_t>(idx)] * v[static_cast<std::size_t>(idx)];
    }
    return g;
}

double sup_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::fmax(s, std::fabs(x));
    return s;
}

// classic Nelder-Mead on the log-parameter objective
int nelder_mead(const ParamMap& pm, std::span<const double> data,
                std::vector<double>& z, int max_iter) {
    const std::size_t n = z.size();
    std::vector<std::vector<double>> pts(n + 1, z);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 1; i <= n; ++i)
        pts[i][i - 1] += 0.25;
    for (std::size_t i = 0; i <= n; ++i)
        fv[i] = neg_loglik(pm, pts[i], data);

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        // order
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a2, auto b2) { return fv[a2] < fv[b2]; });
        const std::size_t lo = idx[0], hi = idx[n], nh = idx[n - 1];
        if (std::fabs(fv[hi] - fv[lo]) <= 1e-10 * (1.0 + std::fabs(fv[lo]))) {
            double diam = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t d = 0; d < n; ++d)
                    diam = std::fmax(diam, std::fabs(pts[i][d] - pts[lo][d]));
            if (diam <= 1e-9) break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == hi) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + t * (pts[hi][d] - centroid[d]);
            return p;
        };
        auto refl = blend(-1.0);
        const double f_refl = neg_loglik(pm, refl, data);
        if (f_refl < fv[lo]) {
            auto exp_p = blend(-2.0);
            const double f_exp = neg_loglik(pm, exp_p, data);
            if (f_exp < f_refl) { pts[hi] = exp_p; fv[hi] = f_exp; }
            else { pts[hi] = refl; fv[hi] = f_refl; }
        } else if (f_refl < fv[nh]) {
            pts[hi] = refl;
            fv[hi] = f_refl;
        } else {
            auto con = blend(f_refl < fv[hi] ? -0.5 : 0.5);
            const double f_con = neg_loglik(pm, con, data);
            if (f_con < std::fmin(f_refl, fv[hi])) {
                pts[hi] = con;
                fv[hi] = f_con;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        pts[i][d] = pts[lo][d] + 0.5 * (pts[i][d] - pts[lo][d]);
                    fv[i] = neg_loglik(pm, pts[i], data);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    z = pts[best];
    return iter;
}

// BFGS polish with Armijo backtracking, driven by the analytic score
int bfgs_polish(const ParamMap& pm, std::span<const double> data,
                std::vector<double>& z, double grad_tol, int max_iter) {
    const std::size_t n = z.size();
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) H[i][i] = 1.0;

    double f = neg_loglik(pm, z, data);
    if (f >= kBigObjective) return 0;
    std::vector<double> g = neg_grad(pm, z, data);
    int iter = 0;
    int stall = 0;
    for (; iter < max_iter; ++iter) {
        if (sup_norm(g) <= grad_tol) break;
        std::vector<double> dir(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dir[i] -= H[i][j] * g[j];
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) slope += dir[i] * g[i];
        if (slope >= 0.0) {
            // reset to steepest descent
            for (std::size_t i = 0; i < n; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
                dir[i] = -g[i];
            }
            slope = 0.0;
            for (std::size_t i = 0; i < n; ++i) slope += dir[i] * g[i];
        }
        // Armijo with a noise allowance: near the optimum the true decrease
        // sits below the floating-point resolution of the objective
        const double noise = 1e-13 * (1.0 + std::fabs(f));
        double step = 1.0;
        std::vector<double> z_new(n);
        double f_new = kBigObjective;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < n; ++i) z_new[i] = z[i] + step * dir[i];
            f_new = neg_loglik(pm, z_new, data);
            if (f_new <= f + 1e-4 * step * slope + noise) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        std::vector<double> g_new = neg_grad(pm, z_new, data);
        // BFGS update
        std::vector<double> s(n), yv(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = z_new[i] - z[i];
            yv[i] = g_new[i] - g[i];
        }
        double sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) sy += s[i] * yv[i];
        if (sy > 1e-12) {
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    Hy[i] += H[i][j] * yv[j];
            double yHy = 0.0;
            for (std::size_t i = 0; i < n; ++i) yHy += yv[i] * Hy[i];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i][j] += (sy + yHy) * s[i] * s[j] / (sy * sy)
                               - (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
        }
        const double gain = f - f_new;
        const bool grad_progress = sup_norm(g_new) < 0.9 * sup_norm(g);
        z = z_new;
        f = f_new;
        g = std::move(g_new);
        if (gain < 1e-13 * (1.0 + std::fabs(f)) && !grad_progress) {
            if (++stall >= 3) { ++iter; break; }
        } else {
            stall = 0;
        }
    }
    return iter;
}

BFParams frechet_moment_start(std::span<const double> data) {
    double m = 0.0;
    for (double y : data) m += y;
    m /= static_cast<double>(data.size());
    double s2 = 0.0;
    for (double y : data) s2 += (y - m) * (y - m);
    s2 /= std::fmax(1.0, static_cast<double>(data.size()) - 1.0);
    const double cv2 = s2 / (m * m);
    auto phi = [](double l) {
        return std::exp(specfun::ln_gamma(1.0 - 2.0 / l)
                        - 2.0 * specfun::ln_gamma(1.0 - 1.0 / l)) - 1.0;
    };
    double lo = 2.05, hi = 500.0;
    double lambda0;
    if (cv2 >= phi(lo)) lambda0 = lo;
    else if (cv2 <= phi(hi)) lambda0 = hi;
    else {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (phi(mid) > cv2 ? lo : hi) = mid;
        }
        lambda0 = 0.5 * (lo + hi);
    }
    const double sigma0 = m / std::exp(specfun::ln_gamma(1.0 - 1.0 / lambda0));
    return {1.0, 1.0, sigma0, lambda0};
}

std::array<double, 4> solve_block(const InfoMatrix& K, const std::vector<int>& free,
                                  double n_obs) {
    // invert the free-parameter block of n*K; returns sqrt of the diagonal
    const std::size_t k = free.size();
    std::vector<std::vector<double>> A(k, std::vector<double>(2 * k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            A[i][j] = n_obs * K(free[i], free[j]);
        A[i][k + i] = 1.0;
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r2 = col + 1; r2 < k; ++r2)
            if (std::fabs(A[r2][col]) > std::fabs(A[piv][col])) piv = r2;
        if (std::fabs(A[piv][col]) < 1e-300)
            throw singular_error("information matrix is numerically singular");
        std::swap(A[piv], A[col]);
        const double d = A[col][col];
        for (auto& v : A[col]) v /= d;
        for (std::size_t r2 = 0; r2 < k; ++r2) {
            if (r2 == col) continue;
            const double f = A[r2][col];
            if (f == 0.0) continue;
            for (std::size_t c2 = 0; c2 < 2 * k; ++c2)
                A[r2][c2] -= f * A[col][c2];
        }
    }
    std::array<double, 4> se{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < k; ++i) {
        const double var = A[i][k + i];
        se[static_cast<std::size_t>(free[i])] = var > 0.0 ? std::sqrt(var) : 0.0;
    }
    return se;
}

} // namespace

FitResult fit(std::span<const double> data, Model model,
              std::optional<BFParams> init, const FitOptions& opts) {
    check_data(data, "fit");
    if (data.size() < 5)
        throw data_error("fit: requires at least 5 observations");

    const ParamMap pm = ParamMap::for_model(model);
    // An explicit init requests a local fit: quasi-Newton ascent from that
    // point only, which tracks the consistent root of the score equations
    // instead of wandering onto the boundary ridges of this family.
    const bool local_only = init.has_value();
    const BFParams base = init ? *init : frechet_moment_start(data);
    std::vector<std::vector<double>> starts;
    starts.push_back(pm.pack(base));
    if (!local_only) {
        Xoshiro256pp jitter_rng(opts.seed);
        for (int r = 0; r < opts.restarts; ++r) {
            auto z = starts[0];
            for (auto& v : z)
                v += (jitter_rng.next_open01() - 0.5);
            starts.push_back(std::move(z));
        }
    }

    std::vector<double> best_z;
    double best_f = kBigObjective;
    int total_iter = 0;
    for (auto& z0 : starts) {
        std::vector<double> z = z0;
        if (!local_only)
            total_iter += nelder_mead(pm, data, z, opts.max_iterations);
        total_iter += bfgs_polish(pm, data, z, opts.grad_tol, opts.max_iterations);
        const double f = neg_loglik(pm, z, data);
        if (f < best_f) {
            best_f = f;
            best_z = z;
        }
    }
    if (best_f >= kBigObjective)
        throw data_error("fit: no admissible parameter point found");

    const BFParams theta = pm.unpack(best_z);
    const bool converged = sup_norm(neg_grad(pm, best_z, data)) <= opts.grad_tol;

    FitResult out{theta, -best_f, InfoMatrix{}, {0, 0, 0, 0},
                  converged, total_iter, model, data.size()};
    try {
        out.info = info_matrix_numeric(theta);
        out.std_errors = solve_block(out.info, pm.free, static_cast<double>(data.size()));
    } catch (const std::exception&) {
        out.std_errors = {std::nan(""), std::nan(""), std::nan(""), std::nan("")};
    }
    return out;
}

NestedFits fit_nested(std::span<const double> data, const FitOptions& opts) {
    NestedFits out{
        fit(data, Model::Frechet, std::nullopt, opts),
        fit(data, Model::EF, std::nullopt, opts),
        fit(data, Model::BF, std::nullopt, opts),
    };
    // reseed each larger model from the smaller one's optimum; the nested
    // start guarantees loglik_BF >= loglik_EF >= loglik_Frechet
    const auto& fr = out.frechet.theta;
    FitResult ef2 = fit(data, Model::EF, BFParams(1.0, 1.0, fr.sigma, fr.lambda), opts);
    if (ef2.loglik > out.ef.loglik) out.ef = ef2;
    const auto& ef = out.ef.theta;
    FitResult bf2 = fit(data, Model::BF, BFParams(1.0, ef.b, ef.sigma, ef.lambda), opts);
    if (bf2.loglik > out.bf.loglik) out.bf = bf2;
    return out;
}

std::array<Interval, 4> confidence_intervals(const FitResult& fit_res, double gamma) {
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw domain_error("confidence_intervals: requires 0 < gamma <= 1");
    if (!fit_res.converged)
        throw domain_error("confidence_intervals: fit did not converge");
    const ParamMap pm = ParamMap::for_model(fit_res.model);
    const auto se = solve_block(fit_res.info, pm.free,
                                static_cast<double>(fit_res.n_obs));
    const double z = specfun::std_normal_quantile(1.0 - gamma / 2.0);
    const double v[4] = {fit_res.theta.a, fit_res.theta.b,
                         fit_res.theta.sigma, fit_res.theta.lambda};
    std::array<Interval, 4> out;
    for (int i = 0; i < 4; ++i)
        out[static_cast<std::size_t>(i)] =
            {v[i] - z * se[static_cast<std::size_t>(i)],
             v[i] + z * se[static_cast<std::size_t>(i)]};
    return out;
}

LRTest lr_test_from_fits(const FitResult& alt, const FitResult& null_fit) {
    if (alt.model != Model::BF)
        throw domain_error("lr_test: alternative must be the BF model");
    const int df = null_fit.model == Model::Frechet ? 2 : 1;
    double w = 2.0 * (alt.loglik - null_fit.loglik);
    if (w < -1e-8)
        throw data_error("lr_test: alternative fit is worse than the null fit");
    w = std::fmax(w, 0.0);
    return {w, df, specfun::chi2_sf(w, df), null_fit.model,
            alt.loglik, null_fit.loglik, alt.converged, null_fit.converged};
}

LRTest lr_test(std::span<const double> data, Model null_model, const FitOptions& opts) {
    if (null_model == Model::BF)
        throw domain_error("lr_test: null must be EF or Frechet");
    const NestedFits fits = fit_nested(data, opts);
    return lr_test_from_fits(fits.bf, null_model == Model::EF ? fits.ef : fits.frechet);
}

} // namespace bf
