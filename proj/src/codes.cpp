#include "renyi/codes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "renyi/errors.hpp"
#include "renyi/spectrum.hpp"

namespace renyi {

namespace {

// Relative tie slack in the cumulative walks. The naive per-atom replays in
// the test suite use the same constant and the same arithmetic order, so
// block and atom iterations take identical branches.
constexpr long double walk_slop = 1e-9L;
constexpr double merge_tol = 1e-12;

// Stand-in multiplicity for blocks whose exact count overflowed; such blocks
// are only ever carried (never walked), and their counts never weight a
// nonzero term in evaluation.
constexpr std::uint64_t count_cap = std::uint64_t(1) << 62;

struct walk_source {
    double log_mass = -inf;
    std::uint64_t count = 0;
};

struct walk_target {
    double log_bound = -inf; // per-atom mass driving the walk, before scaling
    double log_eval = -inf;  // per-atom mass recorded as the group target
    std::uint64_t count = 0;
};

std::uint64_t block_count(const mass_block& b) {
    return b.exact ? b.count : count_cap;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a >= count_cap || b >= count_cap || a + b >= count_cap) ? count_cap : a + b;
}

void guard_atoms(std::uint64_t atoms, const std::string& what) {
    if (atoms > guard_limit())
        throw guard_error(what + " would walk " + std::to_string(atoms) +
                          " atoms, above the atom guard");
}

// Merges consecutive emissions that share the target mass exactly and the
// induced mass within merge_tol.
struct group_builder {
    std::vector<induced_group> groups;

    void add(double log_target, double log_induced, std::uint64_t count) {
        if (count == 0)
            return;
        if (!groups.empty()) {
            induced_group& g = groups.back();
            bool same_induced = (g.log_induced == -inf && log_induced == -inf) ||
                                (g.log_induced > -inf && log_induced > -inf &&
                                 std::fabs(g.log_induced - log_induced) <= merge_tol);
            if (g.log_target == log_target && same_induced) {
                g.count = sat_add(g.count, count);
                return;
            }
        }
        groups.push_back({log_target, log_induced, count});
    }
};

long double source_total(const std::vector<walk_source>& src) {
    long double t = 0.0L;
    for (const walk_source& b : src)
        if (b.log_mass > -inf)
            t += (long double)b.count * expl((long double)b.log_mass);
    return t;
}

long double target_total(const std::vector<walk_target>& tgt) {
    long double t = 0.0L;
    for (const walk_target& b : tgt)
        if (b.log_bound > -inf)
            t += (long double)b.count * expl((long double)b.log_bound);
    return t;
}

// Cumulative-inversion walk. Target atoms, in descending order, each own the
// source atoms whose running total first reaches the atom's running bound;
// the last positive target absorbs the remainder. Bounds are the per-atom
// log_bound masses scaled by bound_scale. With count_induced set the source
// is a single uniform block and induced masses are recorded from the exact
// consumed counts.
void run_mapping1(const std::vector<walk_source>& src,
                  const std::vector<walk_target>& tgt, long double bound_scale,
                  bool count_induced, group_builder& out) {
    std::size_t last_pos = tgt.size();
    for (std::size_t i = tgt.size(); i-- > 0;)
        if (tgt[i].count > 0 && tgt[i].log_eval > -inf) {
            last_pos = i;
            break;
        }

    std::size_t sb = 0;
    std::uint64_t s_left = src.empty() ? 0 : src[0].count;
    long double sp = 0.0L;
    auto settle = [&] {
        while (sb < src.size() && (s_left == 0 || src[sb].log_mass == -inf)) {
            ++sb;
            s_left = sb < src.size() ? src[sb].count : 0;
        }
        if (sb < src.size())
            sp = expl((long double)src[sb].log_mass);
    };
    settle();

    double src_log_atom = src.empty() ? -inf : src[0].log_mass;
    long double sx = 0.0L; // consumed source mass
    long double bb = 0.0L; // scaled target bound

    for (std::size_t tb = 0; tb < tgt.size(); ++tb) {
        const walk_target& t = tgt[tb];
        if (t.count == 0 || t.log_eval == -inf)
            continue;
        if (tb > last_pos || t.log_bound == -inf) {
            out.add(t.log_eval, -inf, t.count);
            continue;
        }
        long double q = expl((long double)t.log_bound) * bound_scale;
        for (std::uint64_t a = 0; a < t.count; ++a) {
            bool last_atom = tb == last_pos && a + 1 == t.count;
            bb += q;
            long double acc = 0.0L;
            std::uint64_t consumed = 0;
            while (sb < src.size() &&
                   (last_atom || sx + sp <= bb + walk_slop * sp)) {
                acc += sp;
                sx += sp;
                ++consumed;
                --s_left;
                settle();
            }
            double li = -inf;
            if (consumed > 0)
                li = count_induced
                         ? (double)(logl((long double)consumed) + (long double)src_log_atom)
                         : (double)logl(acc);
            out.add(t.log_eval, li, 1);
        }
    }
}

// Greedy covering walk. Target atoms, in descending order, each consume
// source atoms until the consumed mass reaches the atom's own bound; the
// last positive target absorbs the remainder, and targets reached after the
// source is exhausted receive nothing.
void run_mapping2(const std::vector<walk_source>& src,
                  const std::vector<walk_target>& tgt, group_builder& out) {
    std::size_t last_pos = tgt.size();
    for (std::size_t i = tgt.size(); i-- > 0;)
        if (tgt[i].count > 0 && tgt[i].log_eval > -inf) {
            last_pos = i;
            break;
        }

    std::size_t sb = 0;
    std::uint64_t s_left = src.empty() ? 0 : src[0].count;
    long double sp = 0.0L;
    auto settle = [&] {
        while (sb < src.size() && (s_left == 0 || src[sb].log_mass == -inf)) {
            ++sb;
            s_left = sb < src.size() ? src[sb].count : 0;
        }
        if (sb < src.size())
            sp = expl((long double)src[sb].log_mass);
    };
    settle();

    for (std::size_t tb = 0; tb < tgt.size(); ++tb) {
        const walk_target& t = tgt[tb];
        if (t.count == 0 || t.log_eval == -inf)
            continue;
        if (tb > last_pos || t.log_bound == -inf) {
            out.add(t.log_eval, -inf, t.count);
            continue;
        }
        long double q = expl((long double)t.log_bound);
        for (std::uint64_t a = 0; a < t.count; ++a) {
            bool last_atom = tb == last_pos && a + 1 == t.count;
            long double acc = 0.0L;
            while (sb < src.size() &&
                   (last_atom || acc < q - walk_slop * q)) {
                acc += sp;
                --s_left;
                settle();
            }
            out.add(t.log_eval, acc > 0.0L ? (double)logl(acc) : -inf, 1);
        }
    }
}

void check_mapping_frame(const std::vector<mass_block>& blocks, const std::string& side) {
    double prev = inf;
    long double total = 0.0L;
    std::uint64_t atoms = 0;
    bool seen_zero = false;
    for (const mass_block& b : blocks) {
        if (b.log_mass == -inf) {
            seen_zero = true;
            continue;
        }
        if (seen_zero)
            throw input_error(side + " blocks are not sorted by descending mass");
        if (b.log_mass > prev)
            throw input_error(side + " blocks are not sorted by descending mass");
        prev = b.log_mass;
        if (!b.exact || b.count == 0)
            throw input_error(side + " blocks need exact positive counts");
        total += (long double)b.count * expl((long double)b.log_mass);
        atoms = sat_add(atoms, b.count);
    }
    if (fabsl(total - 1.0L) > 1e-6L)
        throw input_error(side + " blocks are not normalized");
    guard_atoms(atoms, "mapping over the " + side + " blocks");
}

std::vector<walk_source> to_source_frame(const std::vector<mass_block>& blocks) {
    std::vector<walk_source> src;
    src.reserve(blocks.size());
    for (const mass_block& b : blocks)
        if (b.log_mass > -inf && b.count > 0)
            src.push_back({b.log_mass, b.count});
    return src;
}

std::vector<walk_target> to_target_frame(const std::vector<mass_block>& blocks) {
    std::vector<walk_target> tgt;
    tgt.reserve(blocks.size());
    for (const mass_block& b : blocks)
        if (b.log_mass > -inf && b.count > 0)
            tgt.push_back({b.log_mass, b.log_mass, b.count});
    return tgt;
}

// Type-class data shared by the type-indexed constructions.
struct class_info {
    seq_type type;
    double log_atom = -inf;  // per-atom mass under the product
    std::uint64_t size = 0;  // exact class size
    double entropy = 0.0;    // per-symbol entropy of the empirical pmf
    double div = inf;        // per-symbol divergence of the empirical pmf from the base
};

std::vector<class_info> build_classes(const pmf& base, int len, const std::string& what) {
    std::vector<seq_type> types = enumerate_types((int)base.size(), len);
    std::vector<class_info> out;
    out.reserve(types.size());
    for (seq_type& t : types) {
        class_info ci;
        ci.log_atom = product_view{base, len}.log_type_mass(t);
        std::uint64_t sz = 0;
        if (!multinomial_u64(len, t.counts, sz))
            throw guard_error(what + " type-class sizes exceed the exact range");
        ci.size = sz;
        double h = 0.0, d = 0.0;
        bool singular = false;
        for (std::size_t s = 0; s < t.counts.size(); ++s) {
            if (t.counts[s] == 0)
                continue;
            double f = (double)t.counts[s] / (double)len;
            h -= f * std::log(f);
            if (base.prob(s) <= 0.0)
                singular = true;
            else
                d += f * (std::log(f) - base.log_prob(s));
        }
        ci.entropy = h;
        ci.div = singular ? inf : d;
        ci.type = std::move(t);
        out.push_back(std::move(ci));
    }
    return out;
}

// Image classes sorted for emission: descending per-atom mass, enumeration
// index breaking ties.
std::vector<std::size_t> emission_order(const std::vector<class_info>& cls) {
    std::vector<std::size_t> idx(cls.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return cls[a].log_atom > cls[b].log_atom;
    });
    return idx;
}

// Contributions are dealt around the class atoms like cards: each contributor
// places floor(N/C) or ceil(N/C) source atoms on each of the C class atoms,
// the extra unit covering a cyclic window that starts where the previous
// contributor stopped. Consecutive windows tile the class, so the class is
// fully covered whenever the total number of contributed atoms reaches the
// class size.
void spread_class(double log_target_atom, std::uint64_t class_size,
                  const std::vector<std::pair<std::uint64_t, double>>& contribs,
                  group_builder& out) {
    long double base = 0.0L;
    // difference events over atom indices: mass turning on/off at a position
    struct event {
        std::uint64_t pos;
        long double mass; // signed
    };
    std::vector<event> events;
    std::uint64_t offset = 0;
    for (const auto& [n_atoms, log_mass] : contribs) {
        long double p = expl((long double)log_mass);
        base += (long double)(n_atoms / class_size) * p;
        std::uint64_t r = n_atoms % class_size;
        if (r > 0) {
            std::uint64_t end = offset + r;
            if (end <= class_size) {
                events.push_back({offset, p});
                if (end < class_size)
                    events.push_back({end, -p});
            } else {
                events.push_back({offset, p});
                events.push_back({0, p});
                events.push_back({end - class_size, -p});
            }
            offset = end < class_size ? end : end - class_size;
        }
    }
    std::sort(events.begin(), events.end(),
              [](const event& a, const event& b) { return a.pos < b.pos; });

    long double extra = 0.0L;
    int active = 0;
    std::uint64_t prev = 0;
    std::size_t i = 0;
    while (prev < class_size) {
        while (i < events.size() && events[i].pos == prev) {
            extra += events[i].mass;
            active += events[i].mass > 0.0L ? 1 : -1;
            ++i;
        }
        if (active == 0)
            extra = 0.0L; // kill cancellation drift on empty segments
        std::uint64_t next = i < events.size() ? events[i].pos : class_size;
        long double mass = base + extra;
        out.add(log_target_atom, mass > 0.0L ? (double)logl(mass) : -inf,
                next - prev);
        prev = next;
    }
}

std::uint64_t positive_atoms(const std::vector<mass_block>& blocks) {
    std::uint64_t atoms = 0;
    for (const mass_block& b : blocks)
        if (b.log_mass > -inf)
            atoms = sat_add(atoms, block_count(b));
    return atoms;
}

void check_lengths(int k, int n) {
    if (k < 1 || n < 1)
        throw input_error("block lengths must be at least 1");
}

double eval_pq(const induced_pmf& induced, order alpha);

} // namespace

double induced_pmf::total_induced() const {
    long double t = 0.0L;
    for (const induced_group& g : groups)
        if (g.log_induced > -inf)
            t += (long double)g.count * expl((long double)g.log_induced);
    return (double)t;
}

double induced_pmf::total_target() const {
    long double t = 0.0L;
    for (const induced_group& g : groups)
        if (g.log_target > -inf)
            t += (long double)g.count * expl((long double)g.log_target);
    return (double)t;
}

std::string to_string(code_kind kind) {
    switch (kind) {
    case code_kind::inverse_transform: return "inverse_transform";
    case code_kind::greedy: return "greedy";
    case code_kind::type_spreading: return "type_spreading";
    case code_kind::partition: return "partition";
    case code_kind::m_type_quantizer: return "m_type_quantizer";
    case code_kind::number_greedy: return "number_greedy";
    case code_kind::three_region: return "three_region";
    }
    return "unknown";
}

std::string sim_code::to_json_text() const {
    nlohmann::json j;
    j["kind"] = renyi::to_string(kind);
    j["k"] = k;
    j["n"] = n;
    j["m"] = m;
    j["delta"] = delta;
    j["note"] = note;
    j["warning_infeasible_delta"] = warning_infeasible_delta;
    j["granularity"] = induced.granularity;
    nlohmann::json arr = nlohmann::json::array();
    for (const induced_group& g : induced.groups) {
        nlohmann::json e;
        e["log_target"] = g.log_target;
        if (g.log_induced > -inf)
            e["log_induced"] = g.log_induced;
        else
            e["log_induced"] = nullptr;
        e["count"] = g.count;
        arr.push_back(std::move(e));
    }
    j["groups"] = std::move(arr);
    return j.dump();
}

induced_pmf mapping1(const std::vector<mass_block>& p_blocks,
                     const std::vector<mass_block>& q_blocks) {
    check_mapping_frame(p_blocks, "source");
    check_mapping_frame(q_blocks, "target");
    std::vector<walk_source> src = to_source_frame(p_blocks);
    std::vector<walk_target> tgt = to_target_frame(q_blocks);
    group_builder out;
    run_mapping1(src, tgt, source_total(src) / target_total(tgt), false, out);
    induced_pmf res;
    res.groups = std::move(out.groups);
    return res;
}

induced_pmf mapping2(const std::vector<mass_block>& p_blocks,
                     const std::vector<mass_block>& q_blocks) {
    check_mapping_frame(p_blocks, "source");
    check_mapping_frame(q_blocks, "target");
    std::vector<walk_source> src = to_source_frame(p_blocks);
    std::vector<walk_target> tgt = to_target_frame(q_blocks);
    group_builder out;
    run_mapping2(src, tgt, out);
    induced_pmf res;
    res.groups = std::move(out.groups);
    return res;
}

sim_code type_spreading_code(const pmf& p, const pmf& q, int k, int n, order alpha) {
    check_lengths(k, n);
    if (alpha.tag() == order::kind::neg_inf ||
        (alpha.is_finite() && alpha.real() < 0.0))
        throw input_error("orders below 0 are not defined for divergences");
    std::vector<class_info> src = build_classes(p, k, "source");
    std::vector<class_info> tgt = build_classes(q, n, "target");

    // image choice: smallest total-nats objective among positive-mass target
    // classes; the source-only term of the objective is constant within the
    // argmin, so the choice is the same for every order.
    std::vector<std::vector<std::pair<std::uint64_t, double>>> contribs(tgt.size());
    for (const class_info& sc : src) {
        if (sc.log_atom == -inf)
            continue;
        double best = inf;
        std::size_t best_j = tgt.size();
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            if (tgt[j].log_atom == -inf || tgt[j].div == inf)
                continue;
            double obj = (double)n * tgt[j].div +
                         positive_part((double)n * tgt[j].entropy -
                                       (double)k * sc.entropy);
            if (obj < best - 1e-12) {
                best = obj;
                best_j = j;
            }
        }
        if (best_j == tgt.size())
            throw input_error("target has no positive-mass type class");
        contribs[best_j].push_back({sc.size, sc.log_atom});
    }

    group_builder out;
    for (std::size_t j : emission_order(tgt)) {
        if (tgt[j].log_atom == -inf)
            continue;
        if (contribs[j].empty())
            out.add(tgt[j].log_atom, -inf, tgt[j].size);
        else
            spread_class(tgt[j].log_atom, tgt[j].size, contribs[j], out);
    }

    sim_code code;
    code.kind = code_kind::type_spreading;
    code.induced.groups = std::move(out.groups);
    code.induced.granularity = "per-type-class";
    code.k = k;
    code.n = n;
    code.note = "image choice is order-free; requested order " +
                std::to_string(alpha.real());
    return code;
}

sim_code partition_code(const pmf& p, const pmf& q, int k, int n, double delta) {
    check_lengths(k, n);
    if (delta < 0.0)
        throw input_error("delta must be nonnegative");
    std::vector<class_info> src = build_classes(p, k, "source");
    std::vector<class_info> tgt = build_classes(q, n, "target");

    // fallback image: the positive target class of largest total mass,
    // lowest enumeration index on ties
    std::size_t fallback = tgt.size();
    long double fallback_mass = -1.0L;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
        if (tgt[j].log_atom == -inf)
            continue;
        long double total =
            (long double)tgt[j].size * expl((long double)tgt[j].log_atom);
        if (total > fallback_mass * (1.0L + 1e-12L)) {
            fallback_mass = total;
            fallback = j;
        }
    }
    if (fallback == tgt.size())
        throw input_error("target has no positive-mass type class");

    bool warned = false;
    std::vector<std::vector<std::pair<std::uint64_t, double>>> contribs(tgt.size());
    for (const class_info& sc : src) {
        if (sc.log_atom == -inf)
            continue;
        // admissible images: total source-class entropy covers the total
        // target-class entropy plus the margin
        std::vector<std::size_t> adm;
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            if (tgt[j].log_atom == -inf)
                continue;
            if ((double)k * sc.entropy >=
                (double)n * tgt[j].entropy + (double)n * delta - 1e-12)
                adm.push_back(j);
        }
        if (adm.empty()) {
            warned = true;
            contribs[fallback].push_back({sc.size, sc.log_atom});
            continue;
        }
        std::uint64_t a = adm.size();
        std::uint64_t lo = sc.size / a, rem = sc.size % a;
        for (std::uint64_t s = 0; s < a; ++s) {
            std::uint64_t part = lo + (s < rem ? 1 : 0);
            if (part > 0)
                contribs[adm[s]].push_back({part, sc.log_atom});
        }
    }

    group_builder out;
    for (std::size_t j : emission_order(tgt)) {
        if (tgt[j].log_atom == -inf)
            continue;
        if (contribs[j].empty())
            out.add(tgt[j].log_atom, -inf, tgt[j].size);
        else
            spread_class(tgt[j].log_atom, tgt[j].size, contribs[j], out);
    }

    sim_code code;
    code.kind = code_kind::partition;
    code.induced.groups = std::move(out.groups);
    code.induced.granularity = "per-type-class";
    code.k = k;
    code.n = n;
    code.delta = delta;
    code.warning_infeasible_delta = warned;
    if (warned)
        code.note = "some source classes admit no image within the margin and "
                    "map to the largest-mass target class";
    return code;
}

sim_code inverse_transform_code(const pmf& p, const pmf& q, int k, int n, double delta) {
    check_lengths(k, n);
    if (delta < 0.0)
        throw input_error("delta must be nonnegative");
    std::vector<mass_block> pb = sorted_mass_blocks(product_view{p, k});
    std::vector<mass_block> qb = sorted_mass_blocks(product_view{q, n});

    std::vector<walk_source> src = to_source_frame(pb);
    guard_atoms(positive_atoms(pb), "inverse-transform construction");

    double cut = -inf;
    if (delta > 0.0)
        cut = -(double)n * (shannon_entropy(q) + delta);

    std::vector<walk_target> tgt;
    std::vector<mass_block> carried;
    std::uint64_t walked = 0;
    for (const mass_block& b : qb) {
        if (b.log_mass == -inf)
            continue;
        if (b.log_mass >= cut - 1e-12) {
            tgt.push_back({b.log_mass, b.log_mass, block_count(b)});
            walked = sat_add(walked, block_count(b));
        } else {
            carried.push_back(b);
        }
    }
    guard_atoms(walked, "inverse-transform construction");

    group_builder out;
    run_mapping1(src, tgt, source_total(src) / target_total(tgt), false, out);
    for (const mass_block& b : carried)
        out.add(b.log_mass, -inf, block_count(b));

    sim_code code;
    code.kind = code_kind::inverse_transform;
    code.induced.groups = std::move(out.groups);
    code.k = k;
    code.n = n;
    code.delta = delta;
    code.note = delta > 0.0 ? "target truncated at the entropy-plus-delta mass level"
                            : "full product frames";
    return code;
}

sim_code greedy_code(const pmf& p, const pmf& q, int k, int n) {
    check_lengths(k, n);
    std::vector<mass_block> pb = sorted_mass_blocks(product_view{p, k});
    std::vector<mass_block> qb = sorted_mass_blocks(product_view{q, n});
    guard_atoms(positive_atoms(pb), "greedy construction");
    guard_atoms(positive_atoms(qb), "greedy construction");

    group_builder out;
    run_mapping2(to_source_frame(pb), to_target_frame(qb), out);

    sim_code code;
    code.kind = code_kind::greedy;
    code.induced.groups = std::move(out.groups);
    code.k = k;
    code.n = n;
    return code;
}

sim_code three_region_code(const pmf& p, const pmf& q, int k, int n, double delta) {
    check_lengths(k, n);
    if (delta <= 0.0)
        throw input_error("delta must be positive");
    std::vector<mass_block> pb = sorted_mass_blocks(product_view{p, k});
    std::vector<mass_block> qb = sorted_mass_blocks(product_view{q, n});
    guard_atoms(positive_atoms(pb), "three-region construction");
    guard_atoms(positive_atoms(qb), "three-region construction");

    double h = shannon_entropy(p);
    double hu = mode_entropy(p);
    double t1 = (double)k * (h - delta);
    double t2 = (double)k * (hu - delta);
    double t3 = (double)k * hu;

    // source bands by per-atom surprisal
    std::vector<walk_source> mid, low; // mid feeds the dense target region
    long double edge_mass = 0.0L;      // both extreme bands
    for (const mass_block& b : pb) {
        if (b.log_mass == -inf)
            continue;
        double ell = -b.log_mass;
        if (ell < t1 - 1e-9 || ell > t3 + 1e-9)
            edge_mass += (long double)b.count * expl((long double)b.log_mass);
        else if (ell < t2 - 1e-9)
            mid.push_back({b.log_mass, b.count});
        else
            low.push_back({b.log_mass, b.count});
    }

    // target split level: the upper-tail exponent of q at 1/R times the
    // upper-tail exponent of p at its own mode entropy, R = n/k
    double rate = (double)n / (double)k;
    double estar = exponent_inverse_upper(q, exponent_upper(p, hu) / rate);

    std::vector<walk_target> dense, thin;
    for (const mass_block& b : qb) {
        if (b.log_mass == -inf)
            continue;
        if (b.log_mass >= -(double)n * estar - 1e-9)
            dense.push_back({b.log_mass, b.log_mass, block_count(b)});
        else
            thin.push_back({b.log_mass, b.log_mass, block_count(b)});
    }
    if (dense.empty() && !thin.empty()) {
        dense.push_back(thin.front());
        thin.erase(thin.begin());
    }
    if (dense.empty())
        throw input_error("target has no positive-mass atoms");
    if (thin.empty()) {
        // the whole thin band is absorbed by the dense assignment
        for (const walk_source& b : low)
            edge_mass += (long double)b.count * expl((long double)b.log_mass);
        low.clear();
    }

    group_builder mapped;
    run_mapping1(mid, dense, source_total(mid) / target_total(dense), false, mapped);

    // extreme bands land on the largest-mass dense block, spread evenly
    group_builder out;
    if (edge_mass > 0.0L) {
        long double per_atom = edge_mass / (long double)dense.front().count;
        std::uint64_t left = dense.front().count;
        for (const induced_group& g : mapped.groups) {
            std::uint64_t bump = std::min(left, g.count);
            if (bump > 0) {
                long double mass =
                    (g.log_induced > -inf ? expl((long double)g.log_induced) : 0.0L) +
                    per_atom;
                out.add(g.log_target, (double)logl(mass), bump);
                left -= bump;
            }
            if (bump < g.count)
                out.add(g.log_target, g.log_induced, g.count - bump);
        }
    } else {
        for (const induced_group& g : mapped.groups)
            out.add(g.log_target, g.log_induced, g.count);
    }

    if (!thin.empty())
        run_mapping2(low, thin, out);

    sim_code code;
    code.kind = code_kind::three_region;
    code.induced.groups = std::move(out.groups);
    code.k = k;
    code.n = n;
    code.delta = delta;
    code.note = "target split level " + std::to_string(estar) + " nats per symbol";
    return code;
}

sim_code resolvability_quantizer(const pmf& q, int n, std::uint64_t m, double delta,
                                 direction variant) {
    if (n < 1)
        throw input_error("block length must be at least 1");
    if (m < 1)
        throw input_error("the uniform seed needs at least one atom");
    if (delta < 0.0)
        throw input_error("delta must be nonnegative");
    guard_atoms(m, "quantizer construction");
    std::vector<mass_block> qb = sorted_mass_blocks(product_view{q, n});

    double rt = std::log((double)m) / (double)n;
    double cut = variant == direction::max_dir
                     ? -(double)n * (rt - delta)
                     : -(double)n * (shannon_entropy(q) + delta);

    std::vector<walk_target> inset;
    std::vector<mass_block> tail;
    std::uint64_t walked = 0;
    for (const mass_block& b : qb) {
        if (b.log_mass == -inf)
            continue;
        if (b.log_mass >= cut - 1e-12) {
            inset.push_back({b.log_mass, b.log_mass, block_count(b)});
            walked = sat_add(walked, block_count(b));
        } else {
            tail.push_back(b);
        }
    }
    guard_atoms(walked, "quantizer construction");

    double log_m = std::log((double)m);
    sim_code code;
    code.kind = code_kind::m_type_quantizer;
    code.n = n;
    code.m = m;
    code.delta = delta;

    group_builder out;
    std::uint64_t budget = m;
    bool clamped = false;

    if (variant == direction::pq) {
        code.note = "variant pq";
    } else {
        code.note = variant == direction::qp ? "variant qp" : "variant max";
        // every atom below the mass level first receives ceil(m q) seed atoms
        for (const mass_block& b : tail) {
            long double w =
                ceill((long double)m * expl((long double)b.log_mass) - 1e-15L);
            std::uint64_t want = w < 1.0L ? 1 : (std::uint64_t)w;
            std::uint64_t cnt = block_count(b);
            std::uint64_t full = std::min(cnt, budget / want);
            if (full > 0)
                out.add(b.log_mass, (double)(logl((long double)want) - (long double)log_m),
                        full);
            budget -= full * want;
            std::uint64_t rest = cnt - full;
            if (rest > 0) {
                clamped = true;
                if (budget > 0) {
                    out.add(b.log_mass,
                            (double)(logl((long double)budget) - (long double)log_m), 1);
                    budget = 0;
                    --rest;
                }
                if (rest > 0)
                    out.add(b.log_mass, -inf, rest);
            }
        }
    }

    // remaining seed atoms spread over the in-set atoms by cumulative inversion
    std::vector<walk_source> seed;
    if (budget > 0)
        seed.push_back({-log_m, budget});
    if (!inset.empty()) {
        group_builder head;
        run_mapping1(seed, inset, source_total(seed) / target_total(inset), true, head);
        // in-set groups precede the tail in target order
        group_builder merged;
        for (const induced_group& g : head.groups)
            merged.add(g.log_target, g.log_induced, g.count);
        for (const induced_group& g : out.groups)
            merged.add(g.log_target, g.log_induced, g.count);
        out = std::move(merged);
    } else if (budget > 0) {
        throw input_error("no atom clears the mass level; lower delta");
    }

    if (variant == direction::pq) {
        for (const mass_block& b : tail)
            out.add(b.log_mass, -inf, block_count(b));
    }

    code.warning_infeasible_delta = clamped;
    if (clamped)
        code.note += "; seed too small for the tail covering, assignment clamped";
    code.induced.groups = std::move(out.groups);
    return code;
}

sim_code intrinsic_code(const pmf& p, int n, std::uint64_t m, double delta,
                        direction variant) {
    if (n < 1)
        throw input_error("block length must be at least 1");
    if (m < 1)
        throw input_error("the extracted alphabet needs at least one atom");
    if (delta < 0.0)
        throw input_error("delta must be nonnegative");
    guard_atoms(m, "number construction");
    std::vector<mass_block> pb = sorted_mass_blocks(product_view{p, n});
    guard_atoms(positive_atoms(pb), "number construction");
    std::vector<walk_source> src = to_source_frame(pb);

    double log_m = std::log((double)m);
    double rhat = log_m / (double)n;

    sim_code code;
    code.kind = code_kind::number_greedy;
    code.k = n;
    code.m = m;
    code.delta = delta;

    if (variant == direction::pq) {
        code.note = "variant pq";
        std::vector<walk_target> buckets{{-log_m, -log_m, m}};
        group_builder out;
        run_mapping2(src, buckets, out);
        code.induced.groups = std::move(out.groups);
        return code;
    }

    code.note = variant == direction::qp ? "variant qp" : "variant max";
    long double supp_atoms = (long double)n * logl((long double)p.support_size());
    if (logl((long double)m) > supp_atoms + 1e-12L)
        throw input_error("more extracted atoms than source atoms");
    if (rhat + delta >= shannon_entropy(p))
        throw input_error("rate plus delta reaches the source entropy; "
                          "no extraction margin");

    double log_tau = -(double)n * delta - log_m;
    long double bucket = expl((long double)-log_m);

    std::size_t sb = 0;
    std::uint64_t s_left = src.empty() ? 0 : src[0].count;
    long double sp = 0.0L;
    auto settle = [&] {
        while (sb < src.size() && s_left == 0) {
            ++sb;
            s_left = sb < src.size() ? src[sb].count : 0;
        }
        if (sb < src.size())
            sp = expl((long double)src[sb].log_mass);
    };
    settle();

    group_builder out;
    long double committed = 0.0L;
    std::uint64_t filled = 0;
    long double last_acc = 0.0L;
    while (filled < m && sb < src.size()) {
        std::size_t mark_sb = sb;
        std::uint64_t mark_left = s_left;
        long double acc = 0.0L;
        double closing = -inf;
        while (sb < src.size() && acc < bucket - walk_slop * bucket) {
            acc += sp;
            closing = src[sb].log_mass;
            --s_left;
            settle();
        }
        bool full = acc >= bucket - walk_slop * bucket;
        if (!full || closing < log_tau - 1e-12) {
            sb = mark_sb;
            s_left = mark_left;
            break;
        }
        out.add(-log_m, (double)logl(acc), 1);
        committed += acc;
        last_acc = acc;
        ++filled;
    }

    long double p0 = 1.0L - committed;
    std::uint64_t m0 = m - filled;
    if (m0 == 0) {
        if (p0 > 0.0L && !out.groups.empty()) {
            // remainder joins the last filled bucket
            induced_group tailg = out.groups.back();
            if (tailg.count > 1) {
                out.groups.back().count -= 1;
            } else {
                out.groups.pop_back();
            }
            group_builder fixed;
            for (const induced_group& g : out.groups)
                fixed.add(g.log_target, g.log_induced, g.count);
            fixed.add(-log_m, (double)logl(last_acc + p0), 1);
            out = std::move(fixed);
        }
    } else {
        std::vector<walk_source> rest(src.begin() + (long)sb, src.end());
        if (!rest.empty())
            rest[0].count = s_left;
        std::vector<walk_target> buckets{{0.0, -log_m, m0}};
        run_mapping1(rest, buckets, p0 / (long double)m0, false, out);
    }

    code.induced.groups = std::move(out.groups);
    return code;
}

namespace {

double eval_pq(const induced_pmf& induced, order alpha) {
    switch (alpha.tag()) {
    case order::kind::neg_inf:
        throw input_error("orders below 0 are not defined for divergences");
    case order::kind::zero: {
        // -log target mass of the induced support
        long double acc = -inf;
        bool any = false;
        for (const induced_group& g : induced.groups) {
            if (g.log_induced == -inf)
                continue;
            any = true;
            long double t = logl((long double)g.count) + (long double)g.log_target;
            acc = acc > -inf ? (t > acc ? t + log1pl(expl(acc - t))
                                        : acc + log1pl(expl(t - acc)))
                             : t;
        }
        return any && acc > -inf ? (double)-acc : inf;
    }
    case order::kind::pos_inf: {
        double best = -inf;
        for (const induced_group& g : induced.groups) {
            if (g.log_induced == -inf)
                continue;
            if (g.log_target == -inf)
                return inf;
            best = std::max(best, g.log_induced - g.log_target);
        }
        return best == -inf ? 0.0 : best;
    }
    default:
        break;
    }

    double a = alpha.real();
    if (a < 0.0)
        throw input_error("orders below 0 are not defined for divergences");

    if (alpha.tag() == order::kind::one || std::fabs(a - 1.0) <= 1e-6) {
        long double acc = 0.0L;
        for (const induced_group& g : induced.groups) {
            if (g.log_induced == -inf)
                continue;
            if (g.log_target == -inf)
                return inf;
            acc += (long double)g.count * expl((long double)g.log_induced) *
                   ((long double)g.log_induced - (long double)g.log_target);
        }
        return (double)acc;
    }

    // shifted log-sum over count * induced^a * target^(1-a)
    std::vector<long double> terms;
    terms.reserve(induced.groups.size());
    for (const induced_group& g : induced.groups) {
        if (g.log_induced == -inf)
            continue; // zero induced mass contributes nothing for a > 0
        if (g.log_target == -inf) {
            if (a > 1.0)
                return inf;
            continue; // zero target mass contributes nothing for a < 1
        }
        terms.push_back(logl((long double)g.count) +
                        (long double)a * (long double)g.log_induced +
                        (long double)(1.0 - a) * (long double)g.log_target);
    }
    if (terms.empty())
        return inf; // disjoint supports
    long double top = terms[0];
    for (long double t : terms)
        top = std::max(top, t);
    long double sum = 0.0L;
    for (long double t : terms)
        sum += expl(t - top);
    return (double)((top + logl(sum)) / (long double)(a - 1.0));
}

induced_pmf swapped(const induced_pmf& induced) {
    induced_pmf rev;
    rev.granularity = induced.granularity;
    rev.groups.reserve(induced.groups.size());
    for (const induced_group& g : induced.groups)
        rev.groups.push_back({g.log_induced, g.log_target, g.count});
    return rev;
}

} // namespace

double evaluate_induced(const induced_pmf& induced, order alpha, direction dir) {
    switch (dir) {
    case direction::pq:
        return eval_pq(induced, alpha);
    case direction::qp:
        return eval_pq(swapped(induced), alpha);
    case direction::max_dir:
        return std::max(eval_pq(induced, alpha), eval_pq(swapped(induced), alpha));
    }
    throw input_error("unknown direction");
}

double evaluate_code(const sim_code& code, order alpha, direction dir) {
    return evaluate_induced(code.induced, alpha, dir);
}

} // namespace renyi
