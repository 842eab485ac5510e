#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "renyi/asymptotics.hpp"
#include "renyi/measures.hpp"
#include "renyi/pmf.hpp"

namespace renyi {

// A bag of target atoms that share one target mass and one induced mass.
// log_target is -inf only for transient bookkeeping; published codes carry
// positive-target groups plus, at most, uncovered positive targets with
// log_induced = -inf.
struct induced_group {
    double log_target = 0.0;
    double log_induced = 0.0;
    std::uint64_t count = 0;
};

// Output distribution of a deterministic map, at block granularity. Groups
// are ordered by descending target mass, so expanding them atom-by-atom
// reproduces the sorted-target frame the mappings are defined in.
struct induced_pmf {
    std::vector<induced_group> groups;
    std::string granularity = "per-rank-block";
    double total_induced() const;
    double total_target() const;
};

enum class code_kind {
    inverse_transform,
    greedy,
    type_spreading,
    partition,
    m_type_quantizer,
    number_greedy,
    three_region,
};

std::string to_string(code_kind kind);

// A constructed simulation map plus its exact induced distribution.
// k is the source block length and n the target block length; either is 0
// when the corresponding side is an abstract uniform alphabet of size m.
struct sim_code {
    code_kind kind = code_kind::inverse_transform;
    induced_pmf induced;
    int k = 0;
    int n = 0;
    std::uint64_t m = 0;
    double delta = 0.0;
    std::string note;
    bool warning_infeasible_delta = false;
    std::string to_json_text() const;
};

// Cumulative-inversion map: walking targets in descending order, target atom
// j receives the source atoms whose cumulative mass lands in (G(j-1), G(j)];
// the last positive target absorbs any remainder. Inputs must be sorted
// descending and normalized; zero-mass blocks are ignored on the source side
// and receive nothing on the target side.
induced_pmf mapping1(const std::vector<mass_block>& p_blocks,
                     const std::vector<mass_block>& q_blocks);

// Greedy covering map: each positive target atom consumes source atoms until
// their mass reaches its own; the last positive target absorbs any
// remainder, and targets after source exhaustion receive nothing.
induced_pmf mapping2(const std::vector<mass_block>& p_blocks,
                     const std::vector<mass_block>& q_blocks);

// Type-to-type map: each source type class is spread as uniformly as
// possible over the target type class minimizing
// D(T_Y || q) + max{H(T_Y) - (k/n) H(T_X), 0}; the source-only term of the
// selection objective is constant within the argmin, so the choice does not
// depend on alpha, which is recorded for reporting only.
sim_code type_spreading_code(const pmf& p, const pmf& q, int k, int n, order alpha);

// Partition map: each source type class splits into one subset per target
// type with k H(T_X) >= n H(T_Y) + n delta, each subset spread uniformly
// over its class. Classes with no admissible target map to the largest-mass
// target class and set the infeasibility warning.
sim_code partition_code(const pmf& p, const pmf& q, int k, int n, double delta);

// Cumulative inversion between the product views. delta > 0 first truncates
// the target to atoms of probability at least e^{-n(H(q)+delta)} and maps
// onto the renormalized restriction; delta = 0 keeps the full product.
sim_code inverse_transform_code(const pmf& p, const pmf& q, int k, int n, double delta);

// Cumulative inversion between raw block views.
sim_code greedy_code(const pmf& p, const pmf& q, int k, int n);

// Three-region map: sources split at mass thresholds e^{-k(H(p)-delta)},
// e^{-k(Hu(p)-delta)}, e^{-k Hu(p)}; targets split at e^{-n E*} where E* is
// the upper-tail exponent level of q matching (k/n) of the source exponent
// at Hu(p). The middle source band maps onto the upper target region by
// cumulative inversion, the band below it covers the lower region greedily,
// and the two extreme bands land on the largest-mass target block.
sim_code three_region_code(const pmf& p, const pmf& q, int k, int n, double delta);

// M-type quantization of the product of q. pq: uniform atoms spread over the
// truncation set {Q^n >= e^{-n(H+delta)}} by cumulative inversion. qp: every
// atom below the threshold is first covered with ceil(M Q^n) atoms, the
// remainder spread over the truncation set. max_dir: same with threshold
// e^{-n(Rt-delta)}, Rt = log(M)/n. An M too small to cover the tail spends
// the whole budget on the largest tail atoms and sets the warning flag.
sim_code resolvability_quantizer(const pmf& q, int n, std::uint64_t m, double delta,
                                 direction variant);

// Number generation from the product of p onto [1:M]. pq: greedy covering
// of M equal buckets. qp/max_dir: greedy buckets of mass 1/M while their
// closing atom weighs at least e^{-n delta}/M, then cumulative inversion of
// the remaining mass over the remaining buckets.
sim_code intrinsic_code(const pmf& p, int n, std::uint64_t m, double delta,
                        direction variant);

// Exact divergence of the induced distribution against its target: pq is
// D_alpha(induced || target), qp the reverse, max_dir the larger of the two.
double evaluate_induced(const induced_pmf& induced, order alpha, direction dir);
double evaluate_code(const sim_code& code, order alpha, direction dir);

} // namespace renyi
