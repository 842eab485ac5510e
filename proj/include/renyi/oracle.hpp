#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "renyi/asymptotics.hpp"
#include "renyi/measures.hpp"
#include "renyi/pmf.hpp"

namespace renyi {

// One reference-vs-library comparison, serializable as a JSON line.
struct oracle_report {
    std::string quantity;
    double oracle_value = 0.0;
    double library_value = 0.0;
    double gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string to_json_text() const;
};

oracle_report make_report(const std::string& quantity, double oracle_value,
                          double library_value, double tolerance);

// Exhaustive minimum of the alpha-divergence over all deterministic maps from
// supp(p) to supp(q). map[i] is the image, as an index into q.support(), of
// the i-th atom of p.support(). Guarded at 1e7 candidate maps; ties broken by
// the lexicographically first map encoding.
struct brute_force_result {
    std::vector<std::size_t> map;
    double value = 0.0;
};

brute_force_result brute_force_optimal_map(const pmf& p, const pmf& q, order alpha,
                                           direction dir);

// Exhaustive scan of the probability simplex over supp(p) at grid denominator
// `resolution`. Supports up to 4 atoms; the composition count is guarded.
enum class grid_objective {
    min_divergence,     // min D(r || p)
    min_cross_entropy,  // min sum r (-log p)
    max_cross_entropy,  // max sum r (-log p)
    linear_entropy_max, // sup a H(r) + b sum r log p
    linear_entropy_min, // inf a H(r) + b sum r log p
    guessing_tradeoff,  // max rho min(rate, H(r)) - D(r || p)
};

struct grid_constraint {
    enum class kind {
        none,
        cross_entropy_at_most,  // sum r (-log p) <= bound
        cross_entropy_at_least, // sum r (-log p) >= bound
        divergence_at_most,     // D(r || p) <= bound
        entropy_at_most,        // H(r) <= bound
        entropy_at_least,       // H(r) >= bound
    };
    kind which = kind::none;
    double bound = 0.0;
};

struct grid_coeffs {
    double a = 0.0;
    double b = 0.0;
    double rho = 0.0;
    double rate = 0.0;
};

double simplex_grid_opt(grid_objective objective, const pmf& p,
                        const grid_constraint& constraint, int resolution,
                        const grid_coeffs& coeffs = {});

// Exact lower spectrum mass of the product of p at level j: the probability
// that the per-symbol surprisal falls strictly below j, summed over type
// classes, with the exponent estimate -(1/n) log of it.
struct spectrum_estimate {
    double f = 0.0;
    double exponent = 0.0;
};

spectrum_estimate empirical_spectrum(const pmf& p, int n, double j);

} // namespace renyi
