#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "betafrechet/series.hpp"
#include "betafrechet/specfun.hpp"
#include "support/oracle.hpp"

using namespace bf;
using bf_test::rel_err;
using bf_test::tanh_sinh;

TEST_CASE("cdf_series: submodel forms and agreement with the incomplete beta") {
    // b=1: single term e^{-a t}
    const BFParams b1(2.2, 1.0, 1.0, 1.5);
    for (double x : {0.4, 1.0, 2.9}) {
        const auto sv = cdf_series(b1, x);
        CHECK(sv.terms == 1);
        CHECK(rel_err(sv.value, std::exp(-2.2 * std::pow(1.0 / x, 1.5))) < 1e-14);
    }
    // integer b terminates and matches bf_cdf tightly
    const BFParams ib(2.0, 3.0, 1.0, 2.0);
    for (double x : {0.6, 1.3, 2.0, 4.4})
        CHECK(std::fabs(cdf_series(ib, x).value - bf_cdf(ib, x)) < 1e-12);
    // non-integer b
    const BFParams nb(1.5, 2.5, 1.0, 5.0);
    for (double q = 0.05; q < 1.0; q += 0.08) {
        const double x = bf_quantile(nb, q);
        CHECK(std::fabs(cdf_series(nb, x).value - bf_cdf(nb, x)) < 1e-9);
    }
    // starved term budget reports the partial sum
    SeriesOptions starved;
    starved.max_terms = 4;
    CHECK_THROWS_AS(cdf_series(BFParams(0.5, 0.5, 1, 1), 3.0, starved), convergence_error);
}

TEST_CASE("cdf_series across the parameter grid") {
    // thinned version of the full acceptance grid; the b<1 corners need a
    // large term budget because the ratio e^{-(sigma/x)^lambda} approaches 1
    SeriesOptions opts;
    opts.max_terms = 4000000;
    for (double a : {0.5, 1.5, 5.0})
        for (double b : {0.5, 2.5, 5.0})
            for (double sigma : {0.5, 2.0})
                for (double lambda : {1.0, 5.0}) {
                    const BFParams th(a, b, sigma, lambda);
                    for (double q = 0.01; q < 1.0; q += 0.14) {
                        const double x = bf_quantile(th, q);
                        CHECK(std::fabs(cdf_series(th, x, opts).value - bf_cdf(th, x)) < 1e-8);
                    }
                }
}

TEST_CASE("closed integer-parameter cdf forms") {
    const BFParams th(2.0, 3.0, 1.0, 2.0);
    for (double x : {0.5, 1.1, 2.3, 5.0}) {
        const double f1 = cdf_closed_integer_b(th, x);
        const double f2 = cdf_closed_integer_a(th, x);
        const double f = bf_cdf(th, x);
        CHECK(std::fabs(f1 - f) < 1e-12);
        CHECK(std::fabs(f2 - f) < 1e-12);
        CHECK(std::fabs(f1 - f2) < 1e-12);
    }
    // b=1 in the integer-b form: single j=0 term
    const BFParams b1(1.7, 1.0, 2.0, 1.0);
    for (double x : {1.0, 4.0})
        CHECK(rel_err(cdf_closed_integer_b(b1, x), std::exp(-1.7 * 2.0 / x)) < 1e-14);
    // a=1 in the integer-a form reduces to the EF cdf
    const BFParams a1(1.0, 2.5, 1.0, 1.5);
    for (double x : {0.7, 1.6}) {
        const double t = std::pow(1.0 / x, 1.5);
        CHECK(rel_err(cdf_closed_integer_a(a1, x),
                      -std::expm1(2.5 * std::log(-std::expm1(-t)))) < 1e-12);
    }
    CHECK_THROWS_AS(cdf_closed_integer_b(BFParams(1, 2.5, 1, 1), 1.0), domain_error);
    CHECK_THROWS_AS(cdf_closed_integer_a(BFParams(1.5, 2, 1, 1), 1.0), domain_error);
}

TEST_CASE("mixture weights") {
    // degenerate b=1
    const auto w1 = mixture_weights(BFParams(1.3, 1.0, 1.0, 2.0));
    CHECK(w1.weights.size() == 1);
    CHECK(w1.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(w1.truncated);

    // b=2: weights are (a+1, -a)
    for (double a : {0.4, 1.0, 3.7}) {
        const auto w2 = mixture_weights(BFParams(a, 2.0, 1.0, 2.0));
        REQUIRE(w2.weights.size() == 2);
        CHECK(w2.weights[0] == doctest::Approx(a + 1.0).epsilon(1e-13));
        CHECK(w2.weights[1] == doctest::Approx(-a).epsilon(1e-13));
        CHECK(w2.weight_sum == doctest::Approx(1.0).epsilon(1e-13));
    }

    // non-integer b: partial sums approach 1 under the default budget
    const BFParams nb(1.5, 2.5, 1.0, 5.0);
    const auto w = mixture_weights(nb);
    CHECK(std::fabs(1.0 - w.weight_sum) < 1e-8);

    // scales strictly increasing, sign matches the gamma-reciprocal structure
    for (std::size_t k = 1; k < w.scales.size(); ++k)
        CHECK(w.scales[k] > w.scales[k - 1]);
    for (std::size_t k = 0; k < std::min<std::size_t>(w.weights.size(), 40); ++k) {
        const auto rg = specfun::recip_gamma_signed(2.5 - static_cast<double>(k));
        const int expect = (k % 2 == 0 ? 1 : -1) * rg.sign;
        if (w.weights[k] != 0.0)
            CHECK((w.weights[k] > 0.0 ? 1 : -1) == expect);
    }
}

TEST_CASE("mixture pdf equals the density") {
    // integer b: finite mixture, essentially exact
    const BFParams ib(2.0, 4.0, 1.0, 2.0);
    for (double q = 0.05; q < 1.0; q += 0.09) {
        const double x = bf_quantile(ib, q);
        CHECK(std::fabs(mixture_pdf(ib, x) - bf_pdf(ib, x)) <=
              1e-12 * std::fmax(1.0, bf_pdf(ib, x)));
    }
    // non-integer b across a thinned grid
    SeriesOptions opts;
    opts.max_terms = 4000000;
    for (double a : {0.5, 1.5, 5.0})
        for (double b : {0.5, 2.5})
            for (double lambda : {1.0, 5.0}) {
                const BFParams th(a, b, 1.0, lambda);
                for (double q = 0.03; q < 1.0; q += 0.12) {
                    const double x = bf_quantile(th, q);
                    CHECK(std::fabs(mixture_pdf(th, x, opts) - bf_pdf(th, x)) < 1e-8);
                }
            }
}

TEST_CASE("power series coefficients") {
    // n=1: identity
    const std::vector<double> a{2.0, -1.0, 0.5, 0.25};
    const auto c1 = power_series_coeffs(a, 1, 3);
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(c1[k] == doctest::Approx(a[k]).epsilon(1e-15));
    // (1+x)^2 = 1 + 2x + x^2
    const std::vector<double> one_plus_x{1.0, 1.0};
    const auto sq = power_series_coeffs(one_plus_x, 2, 5);
    const double want[6] = {1, 2, 1, 0, 0, 0};
    for (int k = 0; k <= 5; ++k)
        CHECK(sq[static_cast<std::size_t>(k)] == doctest::Approx(want[k]).epsilon(1e-14));
    // cube vs direct polynomial multiplication
    const std::vector<double> p{1.0, 0.5, 0.25};
    std::vector<double> direct{1.0};
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> next(direct.size() + p.size() - 1, 0.0);
        for (std::size_t i = 0; i < direct.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                next[i + j] += direct[i] * p[j];
        direct = next;
    }
    const auto cube = power_series_coeffs(p, 3, 4);
    for (int k = 0; k <= 4; ++k)
        CHECK(cube[static_cast<std::size_t>(k)] ==
              doctest::Approx(direct[static_cast<std::size_t>(k)]).epsilon(1e-13));
    CHECK_THROWS_AS(power_series_coeffs(std::vector<double>{0.0, 1.0}, 2, 3), domain_error);
}

TEST_CASE("exact order statistics") {
    const BFParams th(1.5, 2.5, 1.0, 5.0);
    // n=1 reduces to the base density / cdf
    for (double x : {0.7, 1.0, 1.5}) {
        CHECK(rel_err(order_stat_pdf_exact(th, 1, 1, x), bf_pdf(th, x)) < 1e-13);
        CHECK(rel_err(order_stat_cdf_exact(th, 1, 1, x), bf_cdf(th, x)) < 1e-12);
    }
    // maximum: f_{n:n} = n f F^{n-1}
    for (double x : {0.8, 1.2}) {
        const double want = 4.0 * bf_pdf(th, x) * std::pow(bf_cdf(th, x), 3);
        CHECK(rel_err(order_stat_pdf_exact(th, 4, 4, x), want) < 1e-12);
    }
    // f_{2:3} integrates to one
    const double total = tanh_sinh(
        [&](double s, double, double) {
            const double x = s * 1.2;
            return order_stat_pdf_exact(th, 2, 3, x) * 1.2;
        }, 0.0, 1.0) +
        tanh_sinh([&](double t, double, double dhi) {
            const double x = 1.2 + t / dhi;
            const double p = order_stat_pdf_exact(th, 2, 3, x);
            return p == 0.0 ? 0.0 : p / dhi / dhi;
        }, 0.0, 1.0);
    CHECK(rel_err(total, 1.0) < 1e-9);
    // cdf consistency: numeric derivative of F_{2:3} is f_{2:3}
    for (double x : {0.8, 1.1}) {
        const double h = 1e-6;
        const double num = (order_stat_cdf_exact(th, 2, 3, x + h) -
                            order_stat_cdf_exact(th, 2, 3, x - h)) / (2 * h);
        CHECK(rel_err(num, order_stat_pdf_exact(th, 2, 3, x)) < 1e-6);
    }
    CHECK_THROWS_AS(order_stat_pdf_exact(th, 0, 3, 1.0), domain_error);
    CHECK_THROWS_AS(order_stat_pdf_exact(th, 4, 3, 1.0), domain_error);
}

TEST_CASE("order-statistic coefficient expansion") {
    // i=n=1 collapses to a unit coefficient on the base density
    const auto c11 = order_stat_coeffs(BFParams(1.5, 2.5, 1, 5), 1, 1);
    REQUIRE(c11.table.size() == 1);
    REQUIRE(c11.table[0].size() == 1);
    CHECK(c11.table[0][0] == doctest::Approx(1.0).epsilon(1e-12));

    // integer b: expansion vs exact density
    const BFParams ib(1.0, 2.0, 1.0, 2.0);
    const auto cib = order_stat_coeffs(ib, 1, 2);
    CHECK(cib.integer_b);
    for (double q = 0.05; q < 1.0; q += 0.07) {
        const double x = bf_quantile(ib, q);
        CHECK(std::fabs(order_stat_pdf_expansion(cib, ib, x) -
                        order_stat_pdf_exact(ib, 1, 2, x)) < 1e-10);
    }

    // non-integer b
    const BFParams nb(1.5, 2.5, 1.0, 5.0);
    const auto cnb = order_stat_coeffs(nb, 2, 3);
    for (double q = 0.05; q < 0.96; q += 0.1) {
        const double x = bf_quantile(nb, q);
        CHECK(std::fabs(order_stat_pdf_expansion(cnb, nb, x) -
                        order_stat_pdf_exact(nb, 2, 3, x)) < 1e-6);
    }
}

TEST_CASE("expansion handles integer b beyond the first power") {
    // i+k-1 >= 2 needs the j range (i+k-1)(b-1), not b-1
    const BFParams th(0.7, 3.0, 1.0, 2.0);
    const auto c = order_stat_coeffs(th, 3, 4);
    bool saw_long_row = false;
    for (const auto& row : c.table)
        if (row.size() > 3) saw_long_row = true;
    CHECK(saw_long_row);
    for (double q = 0.08; q < 0.95; q += 0.12) {
        const double x = bf_quantile(th, q);
        CHECK(std::fabs(order_stat_pdf_expansion(c, th, x) -
                        order_stat_pdf_exact(th, 3, 4, x)) < 1e-10);
    }
}
