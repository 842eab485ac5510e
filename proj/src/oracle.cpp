#include "renyi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "renyi/errors.hpp"
#include "renyi/util.hpp"

namespace renyi {

namespace {

// Atom-level alpha-divergence between two mass vectors on a shared alphabet.
// Mirrors the divergence conventions of the measures module but works on raw
// vectors, so the map search does not build pmf objects per candidate.
double vector_divergence(const std::vector<double>& a, const std::vector<double>& b,
                         order alpha) {
    switch (alpha.tag()) {
    case order::kind::neg_inf:
        throw input_error("orders below 0 are not defined for divergences");
    case order::kind::zero: {
        long double mass = 0.0L;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > 0.0)
                mass += (long double)b[i];
        return mass > 0.0L ? (double)-logl(mass) : inf;
    }
    case order::kind::one: {
        long double acc = 0.0L;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] <= 0.0)
                continue;
            if (b[i] <= 0.0)
                return inf;
            acc += (long double)a[i] * (logl((long double)a[i]) - logl((long double)b[i]));
        }
        return (double)acc;
    }
    case order::kind::pos_inf: {
        long double best = 0.0L;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] <= 0.0)
                continue;
            if (b[i] <= 0.0)
                return inf;
            best = std::max(best, (long double)a[i] / (long double)b[i]);
        }
        return (double)logl(best);
    }
    default:
        break;
    }
    double al = alpha.real();
    if (al < 0.0)
        throw input_error("orders below 0 are not defined for divergences");
    if (std::fabs(al - 1.0) <= 1e-6)
        return vector_divergence(a, b, order(1.0));
    long double sum = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= 0.0)
            continue;
        if (b[i] <= 0.0) {
            if (al > 1.0)
                return inf;
            continue;
        }
        sum += powl((long double)a[i], (long double)al) *
               powl((long double)b[i], (long double)(1.0 - al));
    }
    if (sum <= 0.0L)
        return inf;
    return (double)(logl(sum) / (long double)(al - 1.0));
}

double directed_divergence(const std::vector<double>& induced,
                           const std::vector<double>& target, order alpha,
                           direction dir) {
    switch (dir) {
    case direction::pq:
        return vector_divergence(induced, target, alpha);
    case direction::qp:
        return vector_divergence(target, induced, alpha);
    case direction::max_dir:
        return std::max(vector_divergence(induced, target, alpha),
                        vector_divergence(target, induced, alpha));
    }
    throw input_error("unknown direction");
}

} // namespace

std::string oracle_report::to_json_text() const {
    nlohmann::json j;
    j["quantity"] = quantity;
    j["oracle_value"] = oracle_value;
    j["library_value"] = library_value;
    j["gap"] = gap;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    return j.dump();
}

oracle_report make_report(const std::string& quantity, double oracle_value,
                          double library_value, double tolerance) {
    oracle_report r;
    r.quantity = quantity;
    r.oracle_value = oracle_value;
    r.library_value = library_value;
    bool both_inf = std::isinf(oracle_value) && std::isinf(library_value) &&
                    (oracle_value > 0) == (library_value > 0);
    r.gap = both_inf ? 0.0 : std::fabs(oracle_value - library_value);
    r.tolerance = tolerance;
    r.pass = r.gap <= tolerance;
    return r;
}

brute_force_result brute_force_optimal_map(const pmf& p, const pmf& q, order alpha,
                                           direction dir) {
    const std::vector<std::size_t>& sp = p.support();
    const std::vector<std::size_t>& sq = q.support();
    if (sp.empty() || sq.empty())
        throw input_error("empty support");

    double log_maps = (double)sp.size() * std::log((double)sq.size());
    if (log_maps > std::log((double)guard_limit()) + 1e-9)
        throw guard_error("map search space exceeds the guard");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < sp.size(); ++i)
        total *= sq.size();

    std::vector<std::size_t> digits(sp.size(), 0);
    std::vector<double> induced(q.size(), 0.0);
    std::vector<double> target(q.probs());

    brute_force_result best;
    best.value = inf;
    bool have = false;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::fill(induced.begin(), induced.end(), 0.0);
        for (std::size_t i = 0; i < sp.size(); ++i)
            induced[sq[digits[i]]] += p.prob(sp[i]);
        double v = directed_divergence(induced, target, alpha, dir);
        if (!have || v < best.value) {
            have = true;
            best.value = v;
            best.map = digits;
        }
        // lexicographic successor: the last digit moves fastest
        for (std::size_t i = sp.size(); i-- > 0;) {
            if (++digits[i] < sq.size())
                break;
            digits[i] = 0;
        }
    }
    return best;
}

double simplex_grid_opt(grid_objective objective, const pmf& p,
                        const grid_constraint& constraint, int resolution,
                        const grid_coeffs& coeffs) {
    const std::vector<std::size_t>& sp = p.support();
    if (sp.size() > 4)
        throw guard_error("grid scan supports at most 4 atoms");
    if (resolution < 1 || resolution > 2000)
        throw guard_error("grid resolution must lie in [1, 2000]");

    bool maximize = objective == grid_objective::max_cross_entropy ||
                    objective == grid_objective::linear_entropy_max ||
                    objective == grid_objective::guessing_tradeoff;
    double best = maximize ? -inf : inf;

    std::vector<seq_type> grid = enumerate_types((int)sp.size(), resolution);
    for (const seq_type& t : grid) {
        double h = 0.0, cross = 0.0, div = 0.0;
        for (std::size_t i = 0; i < sp.size(); ++i) {
            if (t.counts[i] == 0)
                continue;
            double r = (double)t.counts[i] / (double)resolution;
            h -= r * std::log(r);
            cross -= r * p.log_prob(sp[i]);
            div += r * (std::log(r) - p.log_prob(sp[i]));
        }
        bool ok = true;
        switch (constraint.which) {
        case grid_constraint::kind::none:
            break;
        case grid_constraint::kind::cross_entropy_at_most:
            ok = cross <= constraint.bound + 1e-12;
            break;
        case grid_constraint::kind::cross_entropy_at_least:
            ok = cross >= constraint.bound - 1e-12;
            break;
        case grid_constraint::kind::divergence_at_most:
            ok = div <= constraint.bound + 1e-12;
            break;
        case grid_constraint::kind::entropy_at_most:
            ok = h <= constraint.bound + 1e-12;
            break;
        case grid_constraint::kind::entropy_at_least:
            ok = h >= constraint.bound - 1e-12;
            break;
        }
        if (!ok)
            continue;
        double v = 0.0;
        switch (objective) {
        case grid_objective::min_divergence:
            v = div;
            break;
        case grid_objective::min_cross_entropy:
        case grid_objective::max_cross_entropy:
            v = cross;
            break;
        case grid_objective::linear_entropy_max:
        case grid_objective::linear_entropy_min:
            v = coeffs.a * h + coeffs.b * (-cross);
            break;
        case grid_objective::guessing_tradeoff:
            v = coeffs.rho * std::min(coeffs.rate, h) - div;
            break;
        }
        best = maximize ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

spectrum_estimate empirical_spectrum(const pmf& p, int n, double j) {
    if (n < 1)
        throw input_error("block length must be at least 1");
    std::vector<seq_type> types = enumerate_types((int)p.size(), n);
    product_view view{p, n};
    long double f = 0.0L;
    for (const seq_type& t : types) {
        double la = view.log_type_mass(t);
        if (la == -inf)
            continue;
        // per-symbol surprisal strictly below the level
        if (-la < (double)n * j)
            f += expl((long double)t.log_class_size() + (long double)la);
    }
    spectrum_estimate est;
    est.f = (double)f;
    est.exponent = f > 0.0L ? (double)(-logl(f) / (long double)n) : inf;
    return est;
}

} // namespace renyi
