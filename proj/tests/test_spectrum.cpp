#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "renyi/errors.hpp"
#include "renyi/measures.hpp"
#include "renyi/pmf.hpp"
#include "renyi/spectrum.hpp"
#include "renyi/util.hpp"

using namespace renyi;

namespace {

pmf random_pmf(std::mt19937_64& rng, int size) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> w(size);
    for (double& v : w) v = unif(rng);
    pmf p(w);
    return p.uniform_on_support() ? pmf({0.7, 0.3}) : p;
}

} // namespace

TEST_CASE("lower exponent frozen values") {
    pmf b = bernoulli(0.1);
    double h = shannon_entropy(b);
    double hinf = renyi_entropy(b, order::pos_inf());

    CHECK(exponent_lower(b, h) == 0.0);
    CHECK(exponent_lower(b, h + 0.1) == 0.0);

    // Left endpoint equals the divergence of the point mass on the heaviest
    // symbol, here -ln 0.9.
    CHECK(exponent_lower(b, hinf) == doctest::Approx(hinf).epsilon(1e-9));
    CHECK(exponent_lower(b, hinf) == doctest::Approx(0.105361).epsilon(1e-4));

    CHECK(exponent_lower(b, hinf - 0.01) == inf);

    // Interior point: sup over a dense explicit t-grid agrees within 1e-6.
    double j = 0.2;
    double best = 0.0;
    for (int i = 0; i <= 2000000; ++i) {
        double t = i * 0.005;
        if (t > 1e4) break;
        double v = -log_sum_exp({(1.0 + t) * std::log(0.9), (1.0 + t) * std::log(0.1)}) - t * j;
        best = std::max(best, v);
    }
    CHECK(exponent_lower(b, j) == doctest::Approx(best).epsilon(1e-6));
    CHECK(exponent_lower(b, j) >= best - 1e-9); // refinement only improves
}

TEST_CASE("upper exponent frozen values") {
    pmf b = bernoulli(0.1);
    double h = shannon_entropy(b);
    double hu = mode_entropy(b);
    double hmin = renyi_entropy(b, order::neg_inf());

    CHECK(exponent_upper(b, h) == 0.0);
    CHECK(exponent_upper(b, h - 0.05) == 0.0);

    CHECK(exponent_upper(b, hu) ==
          doctest::Approx(kl_divergence(uniform_pmf(2), b)).epsilon(1e-8));
    CHECK(exponent_upper(b, hu) == doctest::Approx(0.510826).epsilon(1e-4));

    CHECK(exponent_upper(b, hmin) == doctest::Approx(hmin).epsilon(1e-9));
    CHECK(exponent_upper(b, hmin) == doctest::Approx(2.302585).epsilon(1e-4));
    CHECK(exponent_upper(b, hmin + 0.01) == inf);
}

TEST_CASE("uniform base gives the degenerate spectrum") {
    pmf u = uniform_pmf(3);
    double h = std::log(3.0);
    CHECK(exponent_lower(u, h) == 0.0);
    CHECK(exponent_lower(u, h - 0.2) == inf);
    CHECK(exponent_lower(u, h + 0.2) == inf);
    CHECK(exponent_upper(u, h) == 0.0);
    CHECK(exponent_upper(u, h + 0.2) == inf);
}

TEST_CASE("endpoint ties push the endpoint exponent below the diagonal") {
    pmf p({0.4, 0.4, 0.2});
    double hinf = renyi_entropy(p, order::pos_inf());
    CHECK(exponent_lower(p, hinf) == doctest::Approx(hinf - std::log(2.0)).epsilon(1e-9));
    pmf q({0.5, 0.25, 0.25});
    double hmin = renyi_entropy(q, order::neg_inf());
    CHECK(exponent_upper(q, hmin) == doctest::Approx(hmin - std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("inverse exponents and round trips") {
    pmf b = bernoulli(0.1);
    CHECK(exponent_inverse_lower(b, 0.0) == doctest::Approx(shannon_entropy(b)).epsilon(1e-9));
    CHECK(exponent_inverse_upper(b, 0.0) == doctest::Approx(shannon_entropy(b)).epsilon(1e-9));

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        pmf p = random_pmf(rng, 2 + static_cast<int>(rng() % 3));
        double lo_cap = exponent_lower(p, renyi_entropy(p, order::pos_inf()));
        double up_cap = exponent_upper(p, renyi_entropy(p, order::neg_inf()));
        for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            double w1 = f * lo_cap;
            double j1 = exponent_inverse_lower(p, w1);
            CHECK(exponent_lower(p, j1) == doctest::Approx(w1).epsilon(1e-5));
            double w2 = f * up_cap;
            double j2 = exponent_inverse_upper(p, w2);
            CHECK(exponent_upper(p, j2) == doctest::Approx(w2).epsilon(1e-5));
        }
    }
}

TEST_CASE("constrained simplex oracle matches the transform forms") {
    // Binary case: sweep the full simplex directly.
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 6; ++trial) {
        pmf p = random_pmf(rng, 2);
        double h = shannon_entropy(p);
        double hinf = renyi_entropy(p, order::pos_inf());
        double hmin = renyi_entropy(p, order::neg_inf());

        auto scan = [&](double j, bool lower) {
            double best = inf;
            for (int i = 0; i <= 200000; ++i) {
                double a = static_cast<double>(i) / 200000.0;
                pmf t = (a == 0.0) ? pmf({1.0, 0.0}) : (a == 1.0 ? pmf({0.0, 1.0}) : pmf({1.0 - a, a}));
                double cross = 0.0;
                bool ok = true;
                for (std::size_t x : t.support()) {
                    if (p.prob(x) == 0.0) { ok = false; break; }
                    cross -= t.prob(x) * p.log_prob(x);
                }
                if (!ok) continue;
                if (lower ? cross <= j : cross >= j) best = std::min(best, kl_divergence(t, p));
            }
            return best;
        };

        double j1 = hinf + 0.35 * (h - hinf);
        CHECK(exponent_lower(p, j1) == doctest::Approx(scan(j1, true)).epsilon(2e-3));
        double j2 = h + 0.4 * (hmin - h);
        CHECK(exponent_upper(p, j2) == doctest::Approx(scan(j2, false)).epsilon(2e-3));
    }
}

TEST_CASE("parametric spectrum traces both tails") {
    pmf b = bernoulli(0.1);
    std::vector<order> grid{order::neg_inf(), order(-2.0), order(0.0), order(0.5),
                            order(1.0),       order(2.0),  order(5.0), order::pos_inf()};
    auto pts = parametric_spectrum(b, grid);
    REQUIRE(pts.size() == grid.size());

    for (std::size_t i = 0; i < pts.size(); ++i) {
        double combined = std::max(exponent_lower(b, pts[i].j), exponent_upper(b, pts[i].j));
        CHECK(pts[i].exponent == doctest::Approx(combined).epsilon(1e-6));
    }

    // alpha = 1 lands at (H, 0); alpha = 0 at (mode entropy, D(Unif||p)).
    CHECK(pts[4].j == doctest::Approx(shannon_entropy(b)).epsilon(1e-12));
    CHECK(pts[4].exponent == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pts[2].j == doctest::Approx(mode_entropy(b)).epsilon(1e-12));
    CHECK(pts[2].exponent == doctest::Approx(kl_divergence(uniform_pmf(2), b)).epsilon(1e-12));

    double expected_j = tilted_cross_entropy(b, 2.0);
    CHECK(pts[5].j == doctest::Approx(expected_j).epsilon(1e-12));
    CHECK(pts[5].j == doctest::Approx(0.132159).epsilon(1e-4));

    CHECK_THROWS_AS(parametric_spectrum(uniform_pmf(2), grid), input_error);
}

TEST_CASE("interval exponent case split") {
    pmf b = bernoulli(0.1);
    double h = shannon_entropy(b);
    CHECK(interval_exponent(b, h - 0.05, h + 0.05) == 0.0);
    CHECK(interval_exponent(b, 0.11, 0.2) == doctest::Approx(exponent_lower(b, 0.2)).epsilon(1e-12));
    CHECK(interval_exponent(b, 1.0, 1.5) == doctest::Approx(exponent_upper(b, 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(interval_exponent(b, 0.5, 0.5), input_error);
    CHECK_THROWS_AS(interval_exponent(b, 0.7, 0.2), input_error);
}

TEST_CASE("grid evaluators match the scalar functions") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        pmf p = random_pmf(rng, 2 + static_cast<int>(rng() % 4));
        double hinf = renyi_entropy(p, order::pos_inf());
        double hmin = renyi_entropy(p, order::neg_inf());
        std::vector<double> js;
        for (int i = 0; i <= 150; ++i)
            js.push_back(hinf + (hmin - hinf) * i / 150.0);
        auto lows = exponent_lower_grid(p, js);
        auto ups = exponent_upper_grid(p, js);
        for (std::size_t i = 0; i < js.size(); ++i) {
            double sl = exponent_lower(p, js[i]);
            double su = exponent_upper(p, js[i]);
            if (sl == inf) CHECK(lows[i] == inf);
            else CHECK(lows[i] == doctest::Approx(sl).epsilon(1e-7));
            if (su == inf) CHECK(ups[i] == inf);
            else CHECK(ups[i] == doctest::Approx(su).epsilon(1e-7));
        }
    }
}

TEST_CASE("log-mgf convexity witness") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        pmf p = random_pmf(rng, 2 + static_cast<int>(rng() % 4));
        auto f = [&](double t) { // t H_{1-t}(p) = log sum p^{1-t}
            log_sum_exp_acc acc;
            for (std::size_t i : p.support()) acc.add((1.0 - t) * p.log_prob(i));
            return acc.value();
        };
        for (double t = -4.0; t <= 4.0; t += 0.25) {
            double mid = f(t + 0.125);
            CHECK(mid <= 0.5 * (f(t) + f(t + 0.25)) + 1e-10);
        }
    }
}

TEST_CASE("compare_exponents on identical distributions") {
    pmf p = bernoulli(0.3);
    auto rep = compare_exponents(p, p, 1.0);
    for (double thr : rep.thresholds) CHECK(thr == doctest::Approx(1.0).epsilon(1e-7));
    for (bool d : rep.dominates) CHECK_FALSE(d);
    CHECK_FALSE(rep.lower_endpoint_tied);
    CHECK_FALSE(rep.upper_endpoint_tied);
    CHECK_THROWS_AS(compare_exponents(uniform_pmf(2), p, 1.0), input_error);
    CHECK_THROWS_AS(compare_exponents(p, p, 0.0), input_error);
}

TEST_CASE("compare_exponents thresholds against a coarse t-grid") {
    pmf p = bernoulli(0.3);
    pmf q = bernoulli(0.1);
    auto rep = compare_exponents(p, q, 1.0);

    auto ratio = [&](double t) { return renyi_entropy(p, t) / renyi_entropy(q, t); };
    double m1 = inf;
    for (double t = 1.0; t <= 100.0 + 1e-9; t += 0.1) m1 = std::min(m1, ratio(t));
    m1 = std::min(m1, renyi_entropy(p, order::pos_inf()) / renyi_entropy(q, order::pos_inf()));
    CHECK(rep.thresholds[0] <= m1 + 1e-6);
    CHECK(rep.thresholds[0] >= m1 - 0.01); // coarse grid overshoots slightly

    double m3 = inf;
    for (double t = 0.0; t <= 1.0 + 1e-9; t += 0.01) m3 = std::min(m3, ratio(t));
    CHECK(rep.thresholds[2] <= m3 + 1e-6);
    CHECK(rep.thresholds[2] >= m3 - 0.01);
}

TEST_CASE("dominance booleans flip with the rate") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 4; ++trial) {
        pmf p = random_pmf(rng, 3);
        pmf q = random_pmf(rng, 3);
        auto base = compare_exponents(p, q, 1.0);
        for (int k = 0; k < 4; ++k) {
            double thr = base.thresholds[k];
            auto below = compare_exponents(p, q, 0.8 * thr);
            auto above = compare_exponents(p, q, 1.25 * thr);
            CHECK(below.dominates[k]);
            CHECK_FALSE(above.dominates[k]);
        }
    }
}
