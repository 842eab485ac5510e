#pragma once

#include <array>
#include <vector>

#include "renyi/measures.hpp"
#include "renyi/pmf.hpp"

namespace renyi {

// Exponents of the two tails of the per-symbol self-information under an
// iid product of p. Lower tail: mass of sequences more likely than e^{-nj};
// upper tail: the complement. Values in nats; +inf marks infeasible j.
// A uniform p gives +inf everywhere except 0 at j = H(p).
double exponent_lower(const pmf& p, double j);
double exponent_upper(const pmf& p, double j);

// Inverses: largest / smallest achievable mean self-information among
// distributions within relative-entropy budget omega of p. Arguments are
// clamped to the valid budget range; the boundary value is returned outside.
double exponent_inverse_lower(const pmf& p, double omega);
double exponent_inverse_upper(const pmf& p, double omega);

// Grid evaluators: same values as the scalar functions (the per-point
// maximizer moves monotonically along an ascending j-grid, so a warm-started
// bracket search reproduces the full scan), at grid-sweep cost.
std::vector<double> exponent_lower_grid(const pmf& p, const std::vector<double>& js);
std::vector<double> exponent_upper_grid(const pmf& p, const std::vector<double>& js);

struct spectrum_point {
    double j = 0.0;
    double exponent = 0.0;
};

// Tilted-family parametrization of the combined exponent: one point per
// order, j = tilted cross entropy, exponent = divergence of the tilt from p.
std::vector<spectrum_point> parametric_spectrum(const pmf& p, const std::vector<order>& alphas);

// Exponent of the event that the per-symbol self-information lands in
// [j1, j2): the binding tail once the interval sits on one side of H(p).
double interval_exponent(const pmf& p, double j1, double j2);

// Dominance of the rate-scaled spectrum exponents of p over those of q on
// the four j-ranges, with the matching min-entropy-ratio thresholds over
// t in [1,inf], [-inf,1], [0,1], [-inf,0]. Each boolean holds iff
// R < threshold, up to grid resolution. The endpoint-tie flags mark that an
// extreme probability value of p is attained more than once, in which case
// the exponent at the corresponding endpoint sits strictly below the
// diagonal and endpoint comparisons there are not asserted.
struct dominance_report {
    std::array<bool, 4> dominates{};
    std::array<double, 4> thresholds{};
    bool lower_endpoint_tied = false;
    bool upper_endpoint_tied = false;
};

dominance_report compare_exponents(const pmf& p, const pmf& q, double R);

} // namespace renyi
