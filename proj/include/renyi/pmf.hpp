#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "renyi/util.hpp"

namespace renyi {

// Finite discrete distribution over a labeled alphabet. Probabilities are
// normalized at construction; zero entries stay in the alphabet but are
// excluded from the support. All derived quantities are in nats.
class pmf {
public:
    explicit pmf(std::vector<double> probs, std::vector<std::string> labels = {});

    std::size_t size() const { return probs_.size(); }
    double prob(std::size_t i) const { return probs_[i]; }
    double log_prob(std::size_t i) const { return log_probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<double>& log_probs() const { return log_probs_; }
    const std::vector<std::string>& labels() const { return labels_; }

    const std::vector<std::size_t>& support() const { return support_; }
    std::size_t support_size() const { return support_.size(); }

    double max_prob() const { return max_prob_; }
    double min_support_prob() const { return min_prob_; }
    // Multiplicity of the maximal / minimal support probability, ties taken
    // within 1e-12 in log domain.
    std::size_t max_ties() const { return max_ties_; }
    std::size_t min_ties() const { return min_ties_; }
    bool uniform_on_support() const { return uniform_; }

    static pmf from_json_text(const std::string& text);
    static pmf load(const std::string& path);
    std::string to_json_text() const;

private:
    std::vector<double> probs_;
    std::vector<double> log_probs_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> support_;
    double max_prob_ = 0.0;
    double min_prob_ = 0.0;
    std::size_t max_ties_ = 0;
    std::size_t min_ties_ = 0;
    bool uniform_ = false;
};

pmf bernoulli(double theta);    // (1-theta, theta)
pmf uniform_pmf(std::size_t m);

// Composition of n over an alphabet: counts per symbol summing to n.
struct seq_type {
    int n = 0;
    std::vector<int> counts;

    double log_class_size() const; // log multinomial coefficient
};

// Atom guard: default 1e7, overridable through RENYI_GUARD_ATOMS.
std::uint64_t guard_limit();

// All compositions of n into alphabet_size nonnegative parts, lexicographic
// in the counts vector. Guarded by guard_limit() on the composition count.
std::vector<seq_type> enumerate_types(int alphabet_size, int n);

// n-fold iid power of a base pmf, kept symbolic (never materialized).
struct product_view {
    pmf base;
    int n = 1;

    double log_type_mass(const seq_type& t) const;
};

// Atoms of equal mass grouped together: per-atom log-mass plus multiplicity.
// count is the exact multiplicity when exact is set; log_count always holds.
struct mass_block {
    double log_mass = -inf;
    double log_count = 0.0;
    std::uint64_t count = 1;
    bool exact = true;
};

// Blocks sorted by strictly descending mass; masses equal within 1e-12 in log
// domain are merged. Zero-probability atoms, if any, form a trailing block
// with log_mass = -inf so multiplicities account for the full alphabet power.
std::vector<mass_block> sorted_mass_blocks(const pmf& p);
std::vector<mass_block> sorted_mass_blocks(const product_view& view);

// Exact multinomial coefficient when it fits below 2^62; returns false on
// overflow (callers then fall back to log_count).
bool multinomial_u64(int n, const std::vector<int>& counts, std::uint64_t& out);

} // namespace renyi
