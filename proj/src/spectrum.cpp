#include "renyi/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/errors.hpp"
#include "renyi/optimize.hpp"

namespace renyi {

namespace {

constexpr double clamp_at = 1e6;     // sups above this report +inf
constexpr double u_top = 1.0 - 1e-9; // compactified stand-in for t = inf
constexpr double j_tol = 1e-12;

double to_t(double u) { return u / (1.0 - u); }

// t*H_{1+t}(p) - t*j, written as -log sum p^{1+t} - t*j so the order-1 pole
// never appears.
double lower_objective(const pmf& p, double t, double j) {
    log_sum_exp_acc acc;
    for (std::size_t i : p.support()) acc.add((1.0 + t) * p.log_prob(i));
    return -acc.value() - t * j;
}

// -t*H_{1-t}(p) + t*j = -log sum p^{1-t} + t*j.
double upper_objective(const pmf& p, double t, double j) {
    log_sum_exp_acc acc;
    for (std::size_t i : p.support()) acc.add((1.0 - t) * p.log_prob(i));
    return -acc.value() + t * j;
}

struct tail_setup {
    bool resolved = false; // true when `value` already answers the query
    double value = 0.0;
};

tail_setup lower_setup(const pmf& p, double j) {
    tail_setup s;
    if (p.uniform_on_support()) {
        s.resolved = true;
        s.value = std::abs(j - shannon_entropy(p)) <= 1e-9 ? 0.0 : inf;
        return s;
    }
    if (j >= shannon_entropy(p)) {
        s.resolved = true; // slope at t=0 is H(p)-j <= 0, optimum at t=0
        return s;
    }
    double hinf = renyi_entropy(p, order::pos_inf());
    if (j < hinf - j_tol) {
        s.resolved = true;
        s.value = inf;
        return s;
    }
    if (j <= hinf + j_tol) {
        // The objective climbs monotonically to its t = inf limit here; the
        // limit is exact while the scan near the boundary only adds noise.
        s.resolved = true;
        s.value = hinf - std::log(static_cast<double>(p.max_ties()));
    }
    return s;
}

tail_setup upper_setup(const pmf& p, double j) {
    tail_setup s;
    if (p.uniform_on_support()) {
        s.resolved = true;
        s.value = std::abs(j - shannon_entropy(p)) <= 1e-9 ? 0.0 : inf;
        return s;
    }
    if (j <= shannon_entropy(p)) {
        s.resolved = true;
        return s;
    }
    double hmin = renyi_entropy(p, order::neg_inf());
    if (j > hmin + j_tol) {
        s.resolved = true;
        s.value = inf;
        return s;
    }
    if (j >= hmin - j_tol) {
        s.resolved = true;
        s.value = hmin - std::log(static_cast<double>(p.min_ties()));
    }
    return s;
}

double finish(double sup) { return sup > clamp_at ? inf : positive_part(sup); }

double tail_eval(const pmf& p, double j, bool lower) {
    tail_setup s = lower ? lower_setup(p, j) : upper_setup(p, j);
    if (s.resolved) return s.value;
    auto f = [&](double u) {
        double t = to_t(u);
        return lower ? lower_objective(p, t, j) : upper_objective(p, t, j);
    };
    opt_result r = maximize_on_interval(f, 0.0, u_top);
    return finish(r.value);
}

// Warm-started grid sweep. The objectives have increasing differences in
// (t, ±j), so the maximizing u moves one way along an ascending grid; a
// bracketed rescan around the previous maximizer is exhaustive.
std::vector<double> tail_eval_grid(const pmf& p, const std::vector<double>& js, bool lower) {
    std::vector<double> out(js.size());
    bool have_prev = false;
    double u_prev = lower ? u_top : 0.0;
    for (std::size_t k = 0; k < js.size(); ++k) {
        double j = js[k];
        if (k > 0 && js[k] < js[k - 1])
            throw input_error("spectrum grid: j values must be ascending");
        tail_setup s = lower ? lower_setup(p, j) : upper_setup(p, j);
        if (s.resolved) {
            out[k] = s.value;
            continue;
        }
        auto f = [&](double u) {
            double t = to_t(u);
            return lower ? lower_objective(p, t, j) : upper_objective(p, t, j);
        };
        double lo = 0.0, hi = u_top;
        if (have_prev) {
            // lower tail: u* nonincreasing in j; upper tail: nondecreasing.
            if (lower) hi = std::min(u_top, u_prev + 0.05);
            else lo = std::max(0.0, u_prev - 0.05);
        }
        opt_result r = maximize_on_interval(f, lo, hi, 96);
        u_prev = r.arg;
        have_prev = true;
        out[k] = finish(r.value);
    }
    return out;
}

} // namespace

double exponent_lower(const pmf& p, double j) { return tail_eval(p, j, true); }
double exponent_upper(const pmf& p, double j) { return tail_eval(p, j, false); }

std::vector<double> exponent_lower_grid(const pmf& p, const std::vector<double>& js) {
    return tail_eval_grid(p, js, true);
}

std::vector<double> exponent_upper_grid(const pmf& p, const std::vector<double>& js) {
    return tail_eval_grid(p, js, false);
}

double exponent_inverse_lower(const pmf& p, double omega) {
    double hinf = renyi_entropy(p, order::pos_inf());
    double w = std::clamp(omega, 0.0, hinf);
    auto f = [&](double u) {
        double t = to_t(u);
        if (t == 0.0) return w == 0.0 ? shannon_entropy(p) : -inf;
        return renyi_entropy(p, order(1.0 + t)) - w / t;
    };
    opt_result r = maximize_on_interval(f, 0.0, u_top);
    return std::max(r.value, hinf); // t = inf endpoint
}

double exponent_inverse_upper(const pmf& p, double omega) {
    double hmin = renyi_entropy(p, order::neg_inf());
    double w = std::clamp(omega, 0.0, hmin);
    auto f = [&](double u) {
        double t = to_t(u);
        if (t == 0.0) return w == 0.0 ? -shannon_entropy(p) : -inf;
        return -(renyi_entropy(p, order(1.0 - t)) + w / t);
    };
    opt_result r = maximize_on_interval(f, 0.0, u_top);
    return std::min(-r.value, hmin); // t = inf endpoint
}

std::vector<spectrum_point> parametric_spectrum(const pmf& p, const std::vector<order>& alphas) {
    if (p.uniform_on_support())
        throw input_error("parametric_spectrum: p must not be uniform");
    std::vector<spectrum_point> out;
    out.reserve(alphas.size());
    for (order a : alphas) {
        spectrum_point pt;
        pt.j = tilted_cross_entropy(p, a);
        pt.exponent = kl_divergence(tilted(p, a), p);
        out.push_back(pt);
    }
    return out;
}

double interval_exponent(const pmf& p, double j1, double j2) {
    if (!(j1 < j2)) throw input_error("interval_exponent: j1 must be below j2");
    double h = shannon_entropy(p);
    if (j2 <= h) return exponent_lower(p, j2);
    if (j1 >= h) return exponent_upper(p, j1);
    return 0.0;
}

namespace {

// min of H_t(p)/H_t(q) over a t-range, via the compactifications
// t = map(v) with v in [0,1); sentinel covers the infinite end.
double ratio_min(const pmf& p, const pmf& q, const std::function<double(double)>& map_t,
                 double sentinel_t_ratio) {
    auto f = [&](double v) {
        double t = map_t(v);
        return -(renyi_entropy(p, order(t)) / renyi_entropy(q, order(t)));
    };
    opt_result r = maximize_on_interval(f, 0.0, u_top);
    return std::min(-r.value, sentinel_t_ratio);
}

// Strict dominance of lhs over rhs on a grid. Near-ties (both exponents can
// legitimately vanish at a range endpoint) are neutral, but at least one
// strictly separated point is required: identical curves do not dominate.
bool dominates_on_grid(const std::vector<double>& lhs, const std::vector<double>& rhs,
                       bool lhs_above) {
    bool any_strict = false;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        double a = lhs[i], b = rhs[i];
        if (a == inf && b == inf) continue;
        if (a == inf || b == inf) {
            if ((a == inf) == lhs_above) any_strict = true;
            else return false;
            continue;
        }
        if (std::abs(a - b) <= 1e-6) continue;
        if (lhs_above ? a < b : a > b) return false;
        any_strict = true;
    }
    return any_strict;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
    return xs;
}

} // namespace

dominance_report compare_exponents(const pmf& p, const pmf& q, double R) {
    if (p.uniform_on_support() || q.uniform_on_support())
        throw input_error("compare_exponents: distributions must not be uniform");
    if (!(R > 0.0)) throw input_error("compare_exponents: rate must be positive");

    dominance_report rep;
    rep.lower_endpoint_tied = p.max_ties() > 1;
    rep.upper_endpoint_tied = p.min_ties() > 1;

    rep.thresholds[0] = ratio_min(
        p, q, [](double v) { return 1.0 + to_t(v); },
        renyi_entropy(p, order::pos_inf()) / renyi_entropy(q, order::pos_inf()));
    rep.thresholds[1] = ratio_min(
        p, q, [](double v) { return 1.0 - to_t(v); },
        renyi_entropy(p, order::neg_inf()) / renyi_entropy(q, order::neg_inf()));
    {
        auto f = [&](double t) {
            return -(renyi_entropy(p, order(t)) / renyi_entropy(q, order(t)));
        };
        opt_result r = maximize_on_interval(f, 0.0, 1.0);
        rep.thresholds[2] = -r.value;
    }
    rep.thresholds[3] = ratio_min(
        p, q, [](double v) { return -to_t(v); },
        renyi_entropy(p, order::neg_inf()) / renyi_entropy(q, order::neg_inf()));

    constexpr int grid_n = 2000;
    double h = shannon_entropy(p);
    double hinf = renyi_entropy(p, order::pos_inf());
    double hmin = renyi_entropy(p, order::neg_inf());
    double hu = mode_entropy(p);
    double h0_ratio = renyi_entropy(p, order(0.0)) / renyi_entropy(q, order(0.0));

    auto scaled = [&](const std::vector<double>& inner) {
        // inner grid lives in Rj-space; lhs compares (1/R)E_p(inner).
        std::vector<double> js(inner.size());
        for (std::size_t i = 0; i < inner.size(); ++i) js[i] = inner[i] / R;
        return js;
    };

    {
        std::vector<double> rj = linspace(hinf, h, grid_n);
        std::vector<double> lhs = exponent_lower_grid(p, rj);
        for (double& v : lhs) v = v == inf ? inf : v / R;
        std::vector<double> rhs = exponent_lower_grid(q, scaled(rj));
        rep.dominates[0] = dominates_on_grid(lhs, rhs, true);
    }
    auto upper_range_dominates = [&](double a, double b) {
        std::vector<double> rj = linspace(a, b, grid_n);
        std::vector<double> lhs = exponent_upper_grid(p, rj);
        for (double& v : lhs) v = v == inf ? inf : v / R;
        std::vector<double> rhs = exponent_upper_grid(q, scaled(rj));
        return dominates_on_grid(lhs, rhs, false);
    };
    rep.dominates[1] = upper_range_dominates(h, hmin);
    rep.dominates[2] = upper_range_dominates(h, hu) && R < h0_ratio;
    rep.dominates[3] = upper_range_dominates(hu, hmin) && R < h0_ratio;
    return rep;
}

} // namespace renyi
