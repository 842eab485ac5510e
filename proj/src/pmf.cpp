#include "renyi/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "renyi/errors.hpp"

namespace renyi {

namespace {

constexpr double log_merge_tol = 1e-12;

} // namespace

pmf::pmf(std::vector<double> probs, std::vector<std::string> labels) {
    if (probs.empty()) throw input_error("pmf: empty probability vector");
    double total = 0.0;
    for (double v : probs) {
        if (!std::isfinite(v)) throw input_error("pmf: probabilities must be finite");
        if (v < 0.0) throw input_error("pmf: probabilities must be nonnegative");
        total += v;
    }
    if (total <= 0.0) throw input_error("pmf: probabilities must not all be zero");

    if (labels.empty()) {
        labels.reserve(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) labels.push_back("x" + std::to_string(i));
    }
    if (labels.size() != probs.size())
        throw input_error("pmf: labels and probs must have equal length");
    {
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw input_error("pmf: labels must be unique");
    }

    probs_ = std::move(probs);
    labels_ = std::move(labels);
    for (double& v : probs_) v /= total;

    log_probs_.resize(probs_.size());
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (probs_[i] > 0.0) {
            support_.push_back(i);
            log_probs_[i] = std::log(probs_[i]);
        } else {
            log_probs_[i] = -inf;
        }
    }

    double log_max = -inf, log_min = inf;
    for (std::size_t i : support_) {
        log_max = std::max(log_max, log_probs_[i]);
        log_min = std::min(log_min, log_probs_[i]);
    }
    max_ties_ = min_ties_ = 0;
    for (std::size_t i : support_) {
        if (log_probs_[i] >= log_max - log_merge_tol) ++max_ties_;
        if (log_probs_[i] <= log_min + log_merge_tol) ++min_ties_;
    }
    max_prob_ = std::exp(log_max);
    min_prob_ = std::exp(log_min);
    uniform_ = (log_max - log_min) <= log_merge_tol;
}

pmf pmf::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("pmf: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("probs"))
        throw input_error("pmf: expected an object with a \"probs\" array");
    if (!j["probs"].is_array()) throw input_error("pmf: \"probs\" must be an array");
    std::vector<double> probs;
    for (const auto& v : j["probs"]) {
        if (!v.is_number()) throw input_error("pmf: \"probs\" entries must be numbers");
        probs.push_back(v.get<double>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw input_error("pmf: \"labels\" must be an array");
        for (const auto& v : j["labels"]) {
            if (!v.is_string()) throw input_error("pmf: \"labels\" entries must be strings");
            labels.push_back(v.get<std::string>());
        }
    }
    return pmf(std::move(probs), std::move(labels));
}

pmf pmf::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("pmf: cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string pmf::to_json_text() const {
    nlohmann::json j;
    j["labels"] = labels_;
    j["probs"] = probs_;
    return j.dump();
}

pmf bernoulli(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw input_error("bernoulli: parameter must be in [0,1]");
    return pmf({1.0 - theta, theta});
}

pmf uniform_pmf(std::size_t m) {
    if (m == 0) throw input_error("uniform: alphabet must be nonempty");
    return pmf(std::vector<double>(m, 1.0));
}

double seq_type::log_class_size() const {
    double v = std::lgamma(static_cast<double>(n) + 1.0);
    for (int c : counts) v -= std::lgamma(static_cast<double>(c) + 1.0);
    return v;
}

std::uint64_t guard_limit() {
    static const std::uint64_t cached = [] {
        if (const char* env = std::getenv("RENYI_GUARD_ATOMS")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return static_cast<std::uint64_t>(10'000'000);
    }();
    return cached;
}

namespace {

// C(n+a-1, a-1) with saturation, to guard enumeration up front.
std::uint64_t composition_count(int a, int n) {
    __uint128_t num = 1;
    for (int i = 1; i <= a - 1; ++i) {
        num = num * static_cast<unsigned>(n + i) / static_cast<unsigned>(i);
        if (num > static_cast<__uint128_t>(1) << 62) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(num);
}

} // namespace

std::vector<seq_type> enumerate_types(int alphabet_size, int n) {
    if (alphabet_size < 1 || n < 1) throw input_error("enumerate_types: arguments must be positive");
    std::uint64_t total = composition_count(alphabet_size, n);
    if (total > guard_limit())
        throw guard_error("enumerate_types: composition count exceeds the type guard");

    std::vector<seq_type> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<int> counts(alphabet_size, 0);
    // Lexicographic generation: recurse on the first coordinate ascending.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == alphabet_size - 1) {
            counts[pos] = remaining;
            out.push_back(seq_type{n, counts});
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            self(self, pos + 1, remaining - c);
        }
    };
    rec(rec, 0, n);
    return out;
}

double product_view::log_type_mass(const seq_type& t) const {
    double v = 0.0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        if (t.counts[i] == 0) continue;
        v += t.counts[i] * base.log_prob(i);
    }
    return v;
}

bool multinomial_u64(int n, const std::vector<int>& counts, std::uint64_t& out) {
    constexpr std::uint64_t cap = static_cast<std::uint64_t>(1) << 62;
    __uint128_t acc = 1;
    int used = 0;
    for (int c : counts) {
        for (int i = 1; i <= c; ++i) {
            ++used;
            acc = acc * static_cast<unsigned>(used) / static_cast<unsigned>(i);
            if (acc > cap) return false;
        }
    }
    (void)n;
    out = static_cast<std::uint64_t>(acc);
    return true;
}

namespace {

std::vector<mass_block> merge_sorted(std::vector<mass_block> blocks) {
    std::sort(blocks.begin(), blocks.end(),
              [](const mass_block& a, const mass_block& b) { return a.log_mass > b.log_mass; });
    std::vector<mass_block> merged;
    for (const mass_block& b : blocks) {
        if (!merged.empty() && merged.back().log_mass - b.log_mass <= 1e-12) {
            mass_block& m = merged.back();
            double lc = log_sum_exp({m.log_count, b.log_count});
            bool exact = m.exact && b.exact && m.count <= UINT64_MAX - b.count;
            m.count = exact ? m.count + b.count : 0;
            m.exact = exact;
            m.log_count = lc;
        } else {
            merged.push_back(b);
        }
    }
    return merged;
}

} // namespace

std::vector<mass_block> sorted_mass_blocks(const pmf& p) {
    std::vector<mass_block> blocks;
    for (std::size_t i : p.support())
        blocks.push_back(mass_block{p.log_prob(i), 0.0, 1, true});
    std::vector<mass_block> merged = merge_sorted(std::move(blocks));
    std::size_t zeros = p.size() - p.support_size();
    if (zeros > 0)
        merged.push_back(mass_block{-inf, std::log(static_cast<double>(zeros)), zeros, true});
    return merged;
}

std::vector<mass_block> sorted_mass_blocks(const product_view& view) {
    const pmf& base = view.base;
    int n = view.n;
    if (n < 1) throw input_error("sorted_mass_blocks: power must be positive");

    // Enumerate types over the support only; zero symbols contribute one
    // trailing zero-mass block covering the remaining alphabet power.
    std::vector<double> supp_log;
    for (std::size_t i : base.support()) supp_log.push_back(base.log_prob(i));
    int a = static_cast<int>(supp_log.size());

    std::vector<seq_type> types = enumerate_types(a, n);
    std::vector<mass_block> blocks;
    blocks.reserve(types.size());
    for (const seq_type& t : types) {
        double lm = 0.0;
        for (int i = 0; i < a; ++i)
            if (t.counts[i] > 0) lm += t.counts[i] * supp_log[i];
        std::uint64_t cnt = 0;
        bool exact = multinomial_u64(n, t.counts, cnt);
        blocks.push_back(mass_block{lm, t.log_class_size(), exact ? cnt : 0, exact});
    }
    std::vector<mass_block> merged = merge_sorted(std::move(blocks));

    if (base.support_size() < base.size()) {
        // |alphabet|^n - |supp|^n zero-mass sequences, exact only when the
        // full power fits in 64 bits.
        auto ipow = [](std::uint64_t b, int e, std::uint64_t& out) {
            __uint128_t acc = 1;
            for (int i = 0; i < e; ++i) {
                acc *= b;
                if (acc > (static_cast<__uint128_t>(1) << 62)) return false;
            }
            out = static_cast<std::uint64_t>(acc);
            return true;
        };
        mass_block zb;
        zb.log_mass = -inf;
        std::uint64_t full = 0, pos = 0;
        if (ipow(base.size(), n, full) && ipow(base.support_size(), n, pos)) {
            zb.count = full - pos;
            zb.exact = true;
            zb.log_count = std::log(static_cast<double>(zb.count));
        } else {
            double lf = n * std::log(static_cast<double>(base.size()));
            double lp = n * std::log(static_cast<double>(base.support_size()));
            zb.count = 0;
            zb.exact = false;
            // log(e^lf - e^lp) = lf + log1p(-e^(lp-lf))
            zb.log_count = lf + std::log1p(-std::exp(lp - lf));
        }
        merged.push_back(zb);
    }
    return merged;
}

} // namespace renyi
