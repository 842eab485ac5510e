#pragma once

#include <string>
#include <utility>

#include "renyi/measures.hpp"
#include "renyi/pmf.hpp"

namespace renyi {

// Which divergence is minimized over codes: simulated-vs-target (pq),
// target-vs-simulated (qp), or the maximum of the two (max_dir).
enum class direction { pq, qp, max_dir };

// Tokens accepted: pq, qp, max.
direction parse_direction(const std::string& token);

// A block-simulation instance: k source symbols from p are mapped to
// n = ceil(kR) output symbols approximating the product of q.
struct rate_query {
    pmf p;
    pmf q;
    double rate = 1.0; // n/k, > 0
    order alpha = order(1.0); // >= 0
};

// Limit of the normalized divergence between the induced output block
// distribution and the target product, minimized over codes. +inf in the
// super-critical qp/max regimes (alpha >= 1 and rate above the ratio of
// support-size entropies). The boundary rate itself is rejected because the
// limit there depends on how n/k approaches the rate.
double asymptotic_divergence(const rate_query& query, direction dir);

// Largest rate at which the normalized divergence still vanishes.
double conversion_rate(const pmf& p, const pmf& q, order alpha, direction dir);

// Lower bound on the largest rate with vanishing unnormalized divergence in
// the pq sense, for finite orders above 1 (where the exact value is open).
double conversion_rate_unnormalized_lb(const pmf& p, const pmf& q, order alpha);

// Uniform-input specializations: rate_tilde is the coin rate (nats of
// uniform randomness per output symbol).
double resolvability(const pmf& q, order alpha, direction dir);
double resolvability_asymptotics(const pmf& q, double rate_tilde, order alpha, direction dir);

// Uniform-target specializations: rate_hat is the extracted rate (nats of
// near-uniform output per source symbol). Asymptotics are normalized by the
// source block length.
double intrinsic_randomness(const pmf& p, order alpha, direction dir);
double intrinsic_asymptotics(const pmf& p, double rate_hat, order alpha, direction dir);

// Exponents of the largest probability mass a set of e^{n rate_tilde} atoms
// can capture under the product of q: (decay of the captured mass itself,
// decay of the missed mass). Exactly one component is 0 except at
// rate_tilde = H(q), where both vanish.
std::pair<double, double> best_set_mass_exponents(const pmf& q, double rate_tilde);

} // namespace renyi
