#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "renyi/errors.hpp"
#include "renyi/measures.hpp"
#include "renyi/pmf.hpp"
#include "renyi/util.hpp"

using namespace renyi;

namespace {

std::vector<order> entropy_order_grid() {
    std::vector<order> grid;
    grid.push_back(order::neg_inf());
    for (double a = -5.0; a <= 5.0 + 1e-12; a += 0.25) grid.push_back(order(a));
    grid.push_back(order::pos_inf());
    return grid;
}

pmf random_pmf(std::mt19937_64& rng, int size, bool full_support = true) {
    std::uniform_real_distribution<double> unif(full_support ? 0.05 : 0.0, 1.0);
    std::vector<double> w(size);
    double total = 0.0;
    for (double& v : w) total += (v = unif(rng));
    if (total == 0.0) w[0] = 1.0;
    return pmf(w);
}

} // namespace

TEST_CASE("order tags map limit values exactly") {
    CHECK(order(0.0).tag() == order::kind::zero);
    CHECK(order(1.0).tag() == order::kind::one);
    CHECK(order(2.0).tag() == order::kind::finite);
    CHECK(order::pos_inf().tag() == order::kind::pos_inf);
    CHECK(order::neg_inf().tag() == order::kind::neg_inf);
    CHECK(parse_order("inf").tag() == order::kind::pos_inf);
    CHECK(parse_order("-inf").tag() == order::kind::neg_inf);
    CHECK(parse_order("0").tag() == order::kind::zero);
    CHECK(parse_order("1").tag() == order::kind::one);
    CHECK(parse_order("0.5").real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(parse_order("abc"), input_error);
    CHECK_THROWS_AS(parse_order("1.5x"), input_error);
}

TEST_CASE("renyi_entropy special orders") {
    pmf u = uniform_pmf(6);
    for (order a : entropy_order_grid())
        CHECK(renyi_entropy(u, a) == doctest::Approx(std::log(6.0)).epsilon(1e-10));

    pmf b = bernoulli(0.1);
    CHECK(renyi_entropy(b, order::pos_inf()) == doctest::Approx(0.105361).epsilon(1e-4));
    CHECK(renyi_entropy(b, order::pos_inf()) == doctest::Approx(-std::log(0.9)).epsilon(1e-12));
    CHECK(renyi_entropy(b, 2.0) == doctest::Approx(-std::log(0.82)).epsilon(1e-12));
    CHECK(renyi_entropy(b, 2.0) == doctest::Approx(0.198451).epsilon(1e-4));
    CHECK(renyi_entropy(b, order::neg_inf()) == doctest::Approx(-std::log(0.1)).epsilon(1e-12));
    CHECK(renyi_entropy(b, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(renyi_entropy(b, 1.0) ==
          doctest::Approx(-0.9 * std::log(0.9) - 0.1 * std::log(0.1)).epsilon(1e-12));

    // Zero atoms stay outside the support sums.
    pmf z({0.9, 0.1, 0.0});
    CHECK(renyi_entropy(z, 0.0) == doctest::Approx(std::log(2.0)));
    CHECK(renyi_entropy(z, 2.0) == doctest::Approx(renyi_entropy(b, 2.0)));
}

TEST_CASE("mode_entropy frozen values") {
    CHECK(mode_entropy(uniform_pmf(4)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(mode_entropy(bernoulli(0.1)) ==
          doctest::Approx(0.5 * (-std::log(0.1) - std::log(0.9))).epsilon(1e-12));
    CHECK(mode_entropy(bernoulli(0.1)) == doctest::Approx(1.203973).epsilon(1e-4));
    CHECK(mode_entropy(pmf({1.0})) == 0.0);
    pmf u({0.25, 0.25, 0.25, 0.25, 0.0});
    CHECK(mode_entropy(u) == doctest::Approx(shannon_entropy(u)).epsilon(1e-12));
}

TEST_CASE("tilted distributions") {
    pmf b = bernoulli(0.1);
    pmf t1 = tilted(b, 1.0);
    CHECK(t1.prob(0) == doctest::Approx(0.9).epsilon(1e-12));
    pmf t0 = tilted(b, 0.0);
    CHECK(t0.prob(0) == doctest::Approx(0.5).epsilon(1e-12));
    pmf t2 = tilted(b, 2.0);
    CHECK(t2.prob(0) == doctest::Approx(0.81 / 0.82).epsilon(1e-12));
    CHECK(t2.prob(1) == doctest::Approx(0.01 / 0.82).epsilon(1e-12));

    pmf p({0.5, 0.3, 0.2, 0.0});
    pmf tp = tilted(p, order::pos_inf());
    CHECK(tp.prob(0) == doctest::Approx(1.0));
    CHECK(tp.prob(3) == 0.0);
    pmf tm = tilted(p, order::neg_inf());
    CHECK(tm.prob(2) == doctest::Approx(1.0));

    pmf ties({0.4, 0.4, 0.2});
    CHECK(tilted(ties, order::pos_inf()).prob(0) == doctest::Approx(0.5));
    CHECK(tilted(ties, order::neg_inf()).prob(2) == doctest::Approx(1.0));

    // Large finite tilts converge to the infinite-order limits.
    CHECK(tilted(p, 1e6).prob(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tilted(p, -1e6).prob(2) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tilted_cross_entropy identities and frozen value") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        pmf p = random_pmf(rng, 2 + static_cast<int>(rng() % 5));
        CHECK(tilted_cross_entropy(p, 0.0) == doctest::Approx(mode_entropy(p)).epsilon(1e-10));
        CHECK(tilted_cross_entropy(p, 1.0) ==
              doctest::Approx(renyi_entropy(p, 1.0)).epsilon(1e-10));
        CHECK(tilted_cross_entropy(p, order::pos_inf()) ==
              doctest::Approx(renyi_entropy(p, order::pos_inf())).epsilon(1e-10));
        CHECK(tilted_cross_entropy(p, order::neg_inf()) ==
              doctest::Approx(renyi_entropy(p, order::neg_inf())).epsilon(1e-10));
    }
    double expected = -(0.81 / 0.82) * std::log(0.9) - (0.01 / 0.82) * std::log(0.1);
    CHECK(tilted_cross_entropy(bernoulli(0.1), 2.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(tilted_cross_entropy(bernoulli(0.1), 2.0) == doctest::Approx(0.132159).epsilon(1e-4));
}

TEST_CASE("entropy ordering chain") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        pmf p = random_pmf(rng, 2 + static_cast<int>(rng() % 6));
        double h = shannon_entropy(p);
        double h0 = renyi_entropy(p, 0.0);
        double hu = mode_entropy(p);
        double hm = renyi_entropy(p, order::neg_inf());
        CHECK(h <= h0 + 1e-10);
        CHECK(h0 <= hu + 1e-10);
        CHECK(hu <= hm + 1e-10);
    }
}

TEST_CASE("renyi_divergence special orders and frozen values") {
    pmf p = bernoulli(0.3);
    for (double a : {0.0, 0.5, 1.0, 2.0})
        CHECK(renyi_divergence(p, p, a) == 0.0);
    CHECK(renyi_divergence(p, p, order::pos_inf()) == 0.0);

    CHECK(renyi_divergence(bernoulli(0.5), bernoulli(0.1), order::pos_inf()) ==
          doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(renyi_divergence(bernoulli(0.5), pmf({1.0, 0.0}), 0.0) == doctest::Approx(0.0));

    // Support mismatch: +inf at orders >= 1, finite below 1.
    pmf full = bernoulli(0.4);
    pmf point({1.0, 0.0});
    CHECK(renyi_divergence(full, point, 1.0) == inf);
    CHECK(renyi_divergence(full, point, 2.0) == inf);
    CHECK(renyi_divergence(full, point, order::pos_inf()) == inf);
    double d_half = renyi_divergence(full, point, 0.5);
    CHECK(std::isfinite(d_half));
    CHECK(d_half == doctest::Approx(-2.0 * std::log(std::sqrt(0.6))).epsilon(1e-12));

    // Disjoint supports diverge at every positive order.
    pmf left({1.0, 0.0});
    pmf right({0.0, 1.0});
    CHECK(renyi_divergence(left, right, 0.5) == inf);
    CHECK(renyi_divergence(left, right, 1.0) == inf);
    CHECK(renyi_divergence(left, right, 0.0) == inf);

    CHECK_THROWS_AS(renyi_divergence(p, bernoulli(0.2), -0.5), input_error);
    CHECK_THROWS_AS(renyi_divergence(p, uniform_pmf(3), 1.0), input_error);
}

TEST_CASE("max and sum divergences") {
    pmf p = bernoulli(0.6);
    pmf q = bernoulli(0.5);
    CHECK(max_renyi(p, p, 2.0) == 0.0);
    CHECK(sum_renyi(p, p, 2.0) == 0.0);
    CHECK(max_renyi(p, q, order::pos_inf()) == doctest::Approx(std::log(1.25)).epsilon(1e-12));
    CHECK(max_renyi(p, q, order::pos_inf()) == doctest::Approx(0.22314).epsilon(1e-4));

    double mx = max_renyi(bernoulli(0.3), bernoulli(0.1), 2.0);
    double sm = sum_renyi(bernoulli(0.3), bernoulli(0.1), 2.0);
    CHECK(sm >= mx - 1e-12);
    CHECK(sm <= 2.0 * mx + 1e-12);

    // At infinite order the max form is the largest absolute log-ratio.
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        pmf a = random_pmf(rng, 4);
        pmf b = random_pmf(rng, 4);
        double direct = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            direct = std::max(direct, std::abs(a.log_prob(i) - b.log_prob(i)));
        CHECK(max_renyi(a, b, order::pos_inf()) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("entropy monotone nonincreasing in the order") {
    std::mt19937_64 rng(13);
    auto grid = entropy_order_grid();
    for (int trial = 0; trial < 25; ++trial) {
        pmf p = random_pmf(rng, 2 + static_cast<int>(rng() % 6));
        double prev = renyi_entropy(p, grid[0]);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            double cur = renyi_entropy(p, grid[i]);
            CHECK(prev >= cur - 1e-10);
            prev = cur;
        }
    }
}

TEST_CASE("scaled entropy nondecreasing on each half line") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        pmf p = random_pmf(rng, 2 + static_cast<int>(rng() % 6));

        std::vector<double> pos;
        for (double a = 0.25; a <= 5.0 + 1e-12; a += 0.25) pos.push_back(a);
        double prev = -inf;
        for (double a : pos) {
            double v = ((a - 1.0) / a) * renyi_entropy(p, a);
            CHECK(v >= prev - 1e-10);
            prev = v;
        }
        CHECK(renyi_entropy(p, order::pos_inf()) >= prev - 1e-10);

        prev = -inf;
        for (double a = -5.0; a <= -0.25 + 1e-12; a += 0.25) {
            double v = ((a - 1.0) / a) * renyi_entropy(p, a);
            CHECK(v >= prev - 1e-10);
            prev = v;
        }
        double scaled_neg_inf = renyi_entropy(p, order::neg_inf());
        CHECK(prev >= scaled_neg_inf - 1e-10); // -inf end sits below the grid
    }
}

TEST_CASE("divergence monotone nondecreasing in the order") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 2 + static_cast<int>(rng() % 5);
        pmf p = random_pmf(rng, m);
        pmf q = random_pmf(rng, m);
        std::vector<order> grid;
        for (double a = 0.0; a <= 5.0 + 1e-12; a += 0.25) grid.push_back(order(a));
        grid.push_back(order::pos_inf());
        double prev = renyi_divergence(p, q, grid[0]);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            double cur = renyi_divergence(p, q, grid[i]);
            CHECK(cur >= prev - 1e-10);
            prev = cur;
        }
    }
}

TEST_CASE("skew symmetry on (0,1)") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 2 + static_cast<int>(rng() % 5);
        pmf p = random_pmf(rng, m);
        pmf q = random_pmf(rng, m);
        for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            double lhs = renyi_divergence(p, q, a);
            double rhs = (a / (1.0 - a)) * renyi_divergence(q, p, 1.0 - a);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("finite orders near the sentinels agree with them") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 2 + static_cast<int>(rng() % 5);
        pmf p = random_pmf(rng, m);
        pmf q = random_pmf(rng, m);

        CHECK(renyi_entropy(p, 1.0 + 1e-6) ==
              doctest::Approx(renyi_entropy(p, 1.0)).epsilon(1e-4));
        CHECK(renyi_entropy(p, 1.0 - 1e-6) ==
              doctest::Approx(renyi_entropy(p, 1.0)).epsilon(1e-4));
        CHECK(std::abs(renyi_entropy(p, 1e-6) - renyi_entropy(p, 0.0)) <= 1e-4);
        CHECK(std::abs(renyi_entropy(p, -1e-6) - renyi_entropy(p, 0.0)) <= 1e-4);
        CHECK(std::abs(renyi_entropy(p, 1e6) - renyi_entropy(p, order::pos_inf())) <= 1e-4);
        CHECK(std::abs(renyi_entropy(p, -1e6) - renyi_entropy(p, order::neg_inf())) <= 1e-4);

        CHECK(std::abs(renyi_divergence(p, q, 1.0 + 1e-6) - kl_divergence(p, q)) <= 1e-4);
        CHECK(std::abs(renyi_divergence(p, q, 1.0 - 1e-6) - kl_divergence(p, q)) <= 1e-4);
        CHECK(std::abs(renyi_divergence(p, q, 1e-6) - renyi_divergence(p, q, 0.0)) <= 1e-4);
        CHECK(std::abs(renyi_divergence(p, q, 1e6) -
                       renyi_divergence(p, q, order::pos_inf())) <= 1e-4);
    }
}

TEST_CASE("max-ratio divergence properties") {
    std::mt19937_64 rng(31);
    order oo = order::pos_inf();

    for (int trial = 0; trial < 30; ++trial) {
        int m = 2 + static_cast<int>(rng() % 5);
        pmf p = random_pmf(rng, m);
        pmf q = random_pmf(rng, m);
        pmf r = random_pmf(rng, m);

        // Triangle inequality.
        CHECK(max_renyi(p, r, oo) <= max_renyi(p, q, oo) + max_renyi(q, r, oo) + 1e-10);

        // Pointwise ratio bounds at eps = the divergence itself.
        double eps = max_renyi(p, q, oo);
        for (std::size_t i = 0; i < p.size(); ++i) {
            double ratio = p.prob(i) / q.prob(i);
            CHECK(ratio >= std::exp(-eps) - 1e-10);
            CHECK(ratio <= std::exp(eps) + 1e-10);
        }

        // Expectation ratio of a nonnegative function obeys the same bounds.
        std::uniform_real_distribution<double> unif(0.0, 3.0);
        double ep = 0.0, eq = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            double fv = unif(rng);
            ep += p.prob(i) * fv;
            eq += q.prob(i) * fv;
        }
        if (eq > 0.0) {
            CHECK(ep / eq >= std::exp(-eps) - 1e-9);
            CHECK(ep / eq <= std::exp(eps) + 1e-9);
        }

        // A shared channel leaves the joint max-ratio divergence unchanged.
        int ny = 2 + static_cast<int>(rng() % 3);
        std::vector<double> jp, jq;
        for (std::size_t i = 0; i < p.size(); ++i) {
            pmf row = random_pmf(rng, ny);
            for (int y = 0; y < ny; ++y) {
                jp.push_back(p.prob(i) * row.prob(y));
                jq.push_back(q.prob(i) * row.prob(y));
            }
        }
        CHECK(max_renyi(pmf(jp), pmf(jq), oo) == doctest::Approx(eps).epsilon(1e-10));
    }
}
