#include "renyi/guessing.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/errors.hpp"
#include "renyi/measures.hpp"
#include "renyi/optimize.hpp"
#include "renyi/util.hpp"

namespace renyi {

namespace {

void check_query(double rho, double rate) {
    if (!(std::isfinite(rho) && rho > 0.0))
        throw input_error("guessing: moment order must be finite and positive");
    if (!(std::isfinite(rate) && rate >= 0.0))
        throw input_error("guessing: key rate must be finite and nonnegative");
}

// sup over t >= 0 of t * (rate - H_{1/(1+t)}(key)): the cost exponent of
// simulating a uniform key of the given rate from i.i.d. draws of `key`.
// The objective rises toward an affine tail with slope rate - H_0(key) and
// intercept H^u(key) - H_0(key); a positive tail slope means the supremum is
// infinite, an exactly zero slope is closed by the intercept.
double key_simulation_exponent(const pmf& key, double rate) {
    double h0 = renyi_entropy(key, order(0.0));
    double slope = rate - h0;
    if (slope > 0.0) return inf;
    double best = 0.0;
    if (slope == 0.0) best = std::max(best, mode_entropy(key) - h0);
    auto g = [&](double s) {
        double t = s / (1.0 - s);
        return t * (rate - renyi_entropy(key, order(1.0 / (1.0 + t))));
    };
    return std::max(best, maximize_on_interval(g, 1e-9, 1.0 - 1e-6).value);
}

} // namespace

double guessing_exponent(const pmf& p, double rho, double rate) {
    check_query(rho, rate);
    double h1 = shannon_entropy(p);
    if (rate <= h1) return rho * rate;

    // Above H(p) the optimizer is a tilt of p. The unconstrained branch caps
    // the tilt at order 1/(1+rho); past its entropy the exponent is flat.
    order cap_order(1.0 / (1.0 + rho));
    double h_cap = shannon_entropy(tilted(p, cap_order));
    if (rate >= h_cap) return rho * renyi_entropy(p, cap_order);

    // Entropy of tilted(p, b) decreases in b, so bisect for H = rate on
    // (1/(1+rho), 1); the exponent there is rho * rate - D(tilt || p).
    double lo = cap_order.real();
    double hi = 1.0;
    while (hi - lo > 1e-15) {
        double mid = 0.5 * (lo + hi);
        (shannon_entropy(tilted(p, order(mid))) > rate ? lo : hi) = mid;
    }
    return rho * rate - kl_divergence(tilted(p, order(0.5 * (lo + hi))), p);
}

std::pair<double, double> guessing_bounds(const guess_query& query) {
    check_query(query.rho, query.rate);
    double h0_key = renyi_entropy(query.p_key, order(0.0));
    double upper = guessing_exponent(query.p_source, query.rho, h0_key);
    // Beyond H_0(p_key) the key-simulation cost is infinite, so the outer
    // supremum lives on [0, H_0(p_key)].
    auto gain = [&](double r) {
        return guessing_exponent(query.p_source, query.rho, r) -
               key_simulation_exponent(query.p_key, r);
    };
    double lower = maximize_on_interval(gain, 0.0, h0_key, 4096).value;
    return {std::min(lower, upper), upper};
}

} // namespace renyi
