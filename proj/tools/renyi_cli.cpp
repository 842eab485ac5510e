// Command-line front end: single-query numeric output on stdout, CSV or JSON
// sweeps for the plotting workflows. Exit codes: 0 success, 2 input error,
// 3 guard exceeded.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "renyi/asymptotics.hpp"
#include "renyi/codes.hpp"
#include "renyi/errors.hpp"
#include "renyi/guessing.hpp"
#include "renyi/measures.hpp"
#include "renyi/oracle.hpp"
#include "renyi/pmf.hpp"
#include "renyi/spectrum.hpp"

using namespace renyi;

namespace {

pmf load_pmf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read pmf file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return pmf::from_json_text(buf.str());
}

double ln2() { return std::log(2.0); }

// All printed nat quantities pass through here; unit conversion happens only
// at this boundary.
std::string format_value(double v, bool bits) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (bits) v /= ln2();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_value(double v, bool bits) {
    std::printf("%s\n", format_value(v, bits).c_str());
}

// Sweep token: comma-separated segments, each "start:step:stop" or a single
// order token (decimal, or the exact sentinels 0, 1, inf, -inf).
std::vector<order> parse_order_range(const std::string& token) {
    std::vector<order> grid;
    std::stringstream ss(token);
    std::string seg;
    while (std::getline(ss, seg, ',')) {
        if (seg.empty()) throw input_error("empty segment in range: " + token);
        std::size_t c1 = seg.find(':');
        if (c1 == std::string::npos) {
            grid.push_back(parse_order(seg));
            continue;
        }
        std::size_t c2 = seg.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw input_error("range segments need start:step:stop: " + seg);
        double start = 0.0, step = 0.0, stop = 0.0;
        try {
            start = std::stod(seg.substr(0, c1));
            step = std::stod(seg.substr(c1 + 1, c2 - c1 - 1));
            stop = std::stod(seg.substr(c2 + 1));
        } catch (const std::exception&) {
            throw input_error("malformed range segment: " + seg);
        }
        if (step <= 0.0) throw input_error("range step must be positive");
        if (stop < start) throw input_error("range is empty: " + seg);
        for (int i = 0;; ++i) {
            double v = start + step * i;
            if (v > stop + 1e-12) break;
            grid.push_back(order(v));
        }
    }
    if (grid.empty()) throw input_error("range is empty: " + token);
    return grid;
}

std::vector<double> parse_real_range(const std::string& token) {
    std::vector<double> grid;
    for (const order& a : parse_order_range(token)) {
        if (a.tag() == order::kind::pos_inf)
            grid.push_back(inf);
        else if (a.tag() == order::kind::neg_inf)
            grid.push_back(-inf);
        else
            grid.push_back(a.real());
    }
    return grid;
}

// Points are evaluated in parallel but emitted in grid order, so output is
// independent of the thread count.
std::vector<double> map_parallel(const std::vector<double>& xs,
                                 const std::function<double(double)>& fn) {
    std::vector<double> out(xs.size());
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (xs.size() < 2 * workers) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fn(xs[i]);
        return out;
    }
    std::vector<std::future<void>> jobs;
    std::size_t chunk = (xs.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(xs.size(), lo + chunk);
        if (lo >= hi) break;
        jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(xs[i]);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

void emit_sweep(const std::string& var_name, const std::string& out_name,
                const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& out_path, const std::string& format, bool bits) {
    std::ostringstream text;
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            nlohmann::json row;
            if (std::isinf(xs[i]))
                row[var_name] = xs[i] > 0 ? "inf" : "-inf";
            else
                row[var_name] = xs[i];
            double v = ys[i];
            if (std::isinf(v))
                row[out_name] = v > 0 ? "inf" : "-inf";
            else
                row[out_name] = bits ? v / ln2() : v;
            arr.push_back(std::move(row));
        }
        text << arr.dump() << "\n";
    } else if (format == "csv") {
        text << var_name << "," << out_name << "\n";
        for (std::size_t i = 0; i < xs.size(); ++i)
            text << format_value(xs[i], false) << "," << format_value(ys[i], bits) << "\n";
    } else {
        throw input_error("unknown format: " + format);
    }
    if (out_path.empty()) {
        std::fputs(text.str().c_str(), stdout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw input_error("cannot write output file: " + out_path);
        out << text.str();
    }
}

induced_pmf induced_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read code file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw input_error(std::string("malformed code file: ") + e.what());
    }
    if (!j.contains("groups") || !j["groups"].is_array())
        throw input_error("code file has no groups array");
    induced_pmf ip;
    for (const auto& e : j["groups"]) {
        induced_group g;
        g.log_target = e.at("log_target").get<double>();
        g.log_induced = e.at("log_induced").is_null() ? -inf
                                                      : e.at("log_induced").get<double>();
        g.count = e.at("count").get<std::uint64_t>();
        ip.groups.push_back(g);
    }
    return ip;
}

struct cli_options {
    std::string p_path, q_path, key_path;
    std::string alpha = "1";
    std::string dir = "pq";
    std::string units = "nats";
    std::string kind, code_path, out_path, quantity, range;
    std::string format = "csv";
    std::string side = "lower";
    double rate = -1.0, rate_tilde = -1.0, rate_hat = -1.0;
    double delta = 0.0, j_level = 0.0, j2_level = -1.0;
    double rho = 1.0, tolerance = 2e-3;
    int k = 1, n = 1, blocks = -1;
    std::uint64_t m = 1;
    bool bits() const { return units == "bits"; }
};

sim_code build_code(const cli_options& opt) {
    if (opt.kind == "inverse_transform")
        return inverse_transform_code(load_pmf(opt.p_path), load_pmf(opt.q_path), opt.k,
                                      opt.n, opt.delta);
    if (opt.kind == "greedy")
        return greedy_code(load_pmf(opt.p_path), load_pmf(opt.q_path), opt.k, opt.n);
    if (opt.kind == "type_spreading")
        return type_spreading_code(load_pmf(opt.p_path), load_pmf(opt.q_path), opt.k, opt.n,
                                   parse_order(opt.alpha));
    if (opt.kind == "partition")
        return partition_code(load_pmf(opt.p_path), load_pmf(opt.q_path), opt.k, opt.n,
                              opt.delta);
    if (opt.kind == "three_region")
        return three_region_code(load_pmf(opt.p_path), load_pmf(opt.q_path), opt.k, opt.n,
                                 opt.delta);
    if (opt.kind == "m_type_quantizer")
        return resolvability_quantizer(load_pmf(opt.q_path), opt.n, opt.m, opt.delta,
                                       parse_direction(opt.dir));
    if (opt.kind == "number_greedy")
        return intrinsic_code(load_pmf(opt.p_path), opt.n, opt.m, opt.delta,
                              parse_direction(opt.dir));
    throw input_error("unknown construction kind: " + opt.kind);
}

void run_oracle(const cli_options& opt) {
    oracle_report rep;
    if (opt.quantity == "grid-exponent-lower" || opt.quantity == "grid-exponent-upper") {
        pmf p = load_pmf(opt.p_path);
        bool upper = opt.quantity == "grid-exponent-upper";
        grid_constraint c{upper ? grid_constraint::kind::cross_entropy_at_least
                                : grid_constraint::kind::cross_entropy_at_most,
                          opt.j_level};
        double grid = simplex_grid_opt(grid_objective::min_divergence, p, c, 2000);
        double lib = upper ? exponent_upper(p, opt.j_level) : exponent_lower(p, opt.j_level);
        rep = make_report(opt.quantity, grid, lib, opt.tolerance);
    } else if (opt.quantity == "grid-guessing") {
        pmf p = load_pmf(opt.p_path);
        grid_coeffs gc{0.0, 0.0, opt.rho, opt.rate};
        double grid = simplex_grid_opt(grid_objective::guessing_tradeoff, p, {}, 2000, gc);
        rep = make_report(opt.quantity, grid, guessing_exponent(p, opt.rho, opt.rate),
                          opt.tolerance);
    } else if (opt.quantity == "spectrum-estimate") {
        pmf p = load_pmf(opt.p_path);
        if (opt.blocks < 1) throw input_error("spectrum-estimate needs --n at least 1");
        spectrum_estimate s = empirical_spectrum(p, opt.blocks, opt.j_level);
        rep = make_report(opt.quantity, s.exponent, exponent_lower(p, opt.j_level),
                          opt.tolerance);
    } else if (opt.quantity == "brute-map") {
        pmf p = load_pmf(opt.p_path);
        pmf q = load_pmf(opt.q_path);
        brute_force_result r =
            brute_force_optimal_map(p, q, parse_order(opt.alpha), parse_direction(opt.dir));
        // The exhaustive optimum lower bounds the cheapest construction at
        // matching sizes; report the greedy construction against it.
        sim_code g = greedy_code(p, q, 1, 1);
        double lib = evaluate_code(g, parse_order(opt.alpha), parse_direction(opt.dir));
        oracle_report o;
        o.quantity = opt.quantity;
        o.oracle_value = r.value;
        o.library_value = lib;
        o.gap = lib - r.value;
        o.tolerance = opt.tolerance;
        o.pass = lib >= r.value - 1e-12;
        rep = o;
    } else {
        throw input_error("unknown oracle quantity: " + opt.quantity);
    }
    std::printf("%s\n", rep.to_json_text().c_str());
}

void run_sweep(const std::string& target, const cli_options& opt) {
    bool bits = opt.bits();
    if (target == "rate") {
        pmf p = load_pmf(opt.p_path), q = load_pmf(opt.q_path);
        direction d = parse_direction(opt.dir);
        std::vector<order> grid = parse_order_range(opt.alpha);
        std::vector<double> xs;
        for (const order& a : grid)
            xs.push_back(a.tag() == order::kind::pos_inf ? inf : a.real());
        std::vector<double> ys(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            ys[i] = conversion_rate(p, q, grid[i], d);
        emit_sweep("alpha", "rate", xs, ys, opt.out_path, opt.format, false);
        return;
    }
    if (target == "resolvability") {
        pmf q = load_pmf(opt.q_path);
        direction d = parse_direction(opt.dir);
        if (!opt.range.empty()) {
            order a = parse_order(opt.alpha);
            std::vector<double> xs = parse_real_range(opt.range);
            std::vector<double> ys = map_parallel(
                xs, [&](double r) { return resolvability_asymptotics(q, r, a, d); });
            emit_sweep("rate_tilde", "divergence", xs, ys, opt.out_path, opt.format, bits);
            return;
        }
        std::vector<order> grid = parse_order_range(opt.alpha);
        std::vector<double> xs, ys;
        for (const order& a : grid) {
            xs.push_back(a.tag() == order::kind::pos_inf ? inf : a.real());
            ys.push_back(resolvability(q, a, d));
        }
        emit_sweep("alpha", "resolvability", xs, ys, opt.out_path, opt.format, bits);
        return;
    }
    if (target == "intrinsic") {
        pmf p = load_pmf(opt.p_path);
        direction d = parse_direction(opt.dir);
        std::vector<order> grid = parse_order_range(opt.alpha);
        std::vector<double> xs, ys;
        for (const order& a : grid) {
            xs.push_back(a.tag() == order::kind::pos_inf ? inf : a.real());
            ys.push_back(intrinsic_randomness(p, a, d));
        }
        emit_sweep("alpha", "intrinsic", xs, ys, opt.out_path, opt.format, bits);
        return;
    }
    if (target == "guessing") {
        pmf p = load_pmf(opt.p_path);
        if (opt.range.empty()) throw input_error("guessing sweep needs --range");
        std::vector<double> xs = parse_real_range(opt.range);
        std::vector<double> ys =
            map_parallel(xs, [&](double r) { return guessing_exponent(p, opt.rho, r); });
        emit_sweep("rate", "exponent", xs, ys, opt.out_path, opt.format, bits);
        return;
    }
    if (target == "spectrum") {
        pmf p = load_pmf(opt.p_path);
        if (opt.range.empty()) throw input_error("spectrum sweep needs --range");
        std::vector<double> xs = parse_real_range(opt.range);
        bool upper = opt.side == "upper";
        std::vector<double> ys = map_parallel(xs, [&](double j) {
            return upper ? exponent_upper(p, j) : exponent_lower(p, j);
        });
        emit_sweep("j", "exponent", xs, ys, opt.out_path, opt.format, bits);
        return;
    }
    throw input_error("unknown sweep target: " + target);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Renyi conversion, resolvability, and intrinsic randomness toolkit"};
    app.require_subcommand(1);
    cli_options opt;
    std::string sweep_target;

    auto add_common = [&](CLI::App* sub, bool needs_p, bool needs_q) {
        if (needs_p) sub->add_option("--p", opt.p_path, "source pmf JSON file");
        if (needs_q) sub->add_option("--q", opt.q_path, "target pmf JSON file");
        sub->add_option("--alpha", opt.alpha, "order token: decimal, 0, 1, inf, -inf");
        sub->add_option("--dir", opt.dir, "direction: pq, qp, max");
        sub->add_option("--units", opt.units, "nats (default) or bits");
    };

    CLI::App* c_entropy = app.add_subcommand("entropy", "Renyi entropy of a pmf");
    add_common(c_entropy, true, false);

    CLI::App* c_div = app.add_subcommand("divergence", "Renyi divergence between pmfs");
    add_common(c_div, true, true);

    CLI::App* c_asym = app.add_subcommand("asym", "asymptotic normalized divergence at a rate");
    add_common(c_asym, true, true);
    c_asym->add_option("--rate", opt.rate, "output-per-source symbol ratio n/k");

    CLI::App* c_rate = app.add_subcommand("rate", "largest rate with vanishing divergence");
    add_common(c_rate, true, true);

    CLI::App* c_res = app.add_subcommand("resolvability", "uniform-seed simulation rate");
    add_common(c_res, false, true);
    c_res->add_option("--rate-tilde", opt.rate_tilde, "seed rate for the divergence exponent");

    CLI::App* c_intr = app.add_subcommand("intrinsic", "extractable near-uniform rate");
    add_common(c_intr, true, false);
    c_intr->add_option("--rate-hat", opt.rate_hat, "extraction rate for the divergence exponent");

    CLI::App* c_spec = app.add_subcommand("spectrum", "information spectrum exponents");
    add_common(c_spec, true, false);
    c_spec->add_option("--j", opt.j_level, "per-symbol self-information level (nats)");
    c_spec->add_option("--j2", opt.j2_level, "upper level for an interval exponent");
    c_spec->add_option("--side", opt.side, "lower (default) or upper tail");
    c_spec->add_option("--n", opt.blocks, "block length for the exact finite-n estimate");

    CLI::App* c_cmp = app.add_subcommand("compare-exponents",
                                         "rate-scaled spectrum dominance report");
    add_common(c_cmp, true, true);
    c_cmp->add_option("--rate", opt.rate, "scaling rate R");

    CLI::App* c_con = app.add_subcommand("construct", "build a code and emit its JSON");
    add_common(c_con, true, true);
    c_con->add_option("--kind", opt.kind,
                      "inverse_transform, greedy, type_spreading, partition, three_region, "
                      "m_type_quantizer, number_greedy");
    c_con->add_option("--k", opt.k, "source block length");
    c_con->add_option("--n", opt.n, "target block length");
    c_con->add_option("--m", opt.m, "atom count for quantizer or extraction");
    c_con->add_option("--delta", opt.delta, "entropy margin (nats)");
    c_con->add_option("--out", opt.out_path, "write JSON here instead of stdout");

    CLI::App* c_eval = app.add_subcommand("evaluate", "divergence of a constructed code");
    add_common(c_eval, false, false);
    c_eval->add_option("--code", opt.code_path, "code JSON produced by construct");

    CLI::App* c_guess = app.add_subcommand("guessing", "cipher guessing exponent");
    add_common(c_guess, true, false);
    c_guess->add_option("--rho", opt.rho, "moment order");
    c_guess->add_option("--rate", opt.rate, "key rate (nats)");
    c_guess->add_option("--key", opt.key_path, "key pmf JSON for the two-sided bounds");

    CLI::App* c_oracle = app.add_subcommand("oracle", "reference-vs-library comparison report");
    add_common(c_oracle, true, true);
    c_oracle->add_option("--quantity", opt.quantity,
                         "grid-exponent-lower, grid-exponent-upper, grid-guessing, "
                         "spectrum-estimate, brute-map");
    c_oracle->add_option("--j", opt.j_level, "level for the exponent quantities");
    c_oracle->add_option("--n", opt.blocks, "block length for spectrum-estimate");
    c_oracle->add_option("--rho", opt.rho, "moment order for grid-guessing");
    c_oracle->add_option("--rate", opt.rate, "rate for grid-guessing");
    c_oracle->add_option("--tolerance", opt.tolerance, "pass threshold on the gap");

    CLI::App* c_sweep = app.add_subcommand("sweep", "grid sweep emitting CSV or JSON");
    c_sweep->add_option("target", sweep_target,
                        "rate, resolvability, intrinsic, guessing, spectrum");
    add_common(c_sweep, true, true);
    c_sweep->add_option("--range", opt.range,
                        "swept grid, comma-separated start:step:stop segments or tokens");
    c_sweep->add_option("--rho", opt.rho, "moment order for guessing sweeps");
    c_sweep->add_option("--side", opt.side, "tail for spectrum sweeps");
    c_sweep->add_option("--rate-tilde", opt.rate_tilde, "fixed seed rate");
    c_sweep->add_option("--out", opt.out_path, "output file (default stdout)");
    c_sweep->add_option("--format", opt.format, "csv (default) or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        bool bits = opt.bits();
        if (c_entropy->parsed()) {
            print_value(renyi_entropy(load_pmf(opt.p_path), parse_order(opt.alpha)), bits);
        } else if (c_div->parsed()) {
            print_value(renyi_divergence(load_pmf(opt.p_path), load_pmf(opt.q_path),
                                         parse_order(opt.alpha)),
                        bits);
        } else if (c_asym->parsed()) {
            if (opt.rate <= 0.0) throw input_error("asym needs --rate > 0");
            rate_query q{load_pmf(opt.p_path), load_pmf(opt.q_path), opt.rate,
                         parse_order(opt.alpha)};
            print_value(asymptotic_divergence(q, parse_direction(opt.dir)), bits);
        } else if (c_rate->parsed()) {
            // A rate is a symbol ratio, not a nat quantity; units do not apply.
            print_value(conversion_rate(load_pmf(opt.p_path), load_pmf(opt.q_path),
                                        parse_order(opt.alpha), parse_direction(opt.dir)),
                        false);
        } else if (c_res->parsed()) {
            pmf q = load_pmf(opt.q_path);
            order a = parse_order(opt.alpha);
            direction d = parse_direction(opt.dir);
            print_value(opt.rate_tilde >= 0.0
                            ? resolvability_asymptotics(q, opt.rate_tilde, a, d)
                            : resolvability(q, a, d),
                        bits);
        } else if (c_intr->parsed()) {
            pmf p = load_pmf(opt.p_path);
            order a = parse_order(opt.alpha);
            direction d = parse_direction(opt.dir);
            print_value(opt.rate_hat >= 0.0 ? intrinsic_asymptotics(p, opt.rate_hat, a, d)
                                            : intrinsic_randomness(p, a, d),
                        bits);
        } else if (c_spec->parsed()) {
            pmf p = load_pmf(opt.p_path);
            if (opt.blocks >= 1) {
                spectrum_estimate s = empirical_spectrum(p, opt.blocks, opt.j_level);
                print_value(s.exponent, bits);
            } else if (opt.j2_level >= 0.0) {
                print_value(interval_exponent(p, opt.j_level, opt.j2_level), bits);
            } else if (opt.side == "upper") {
                print_value(exponent_upper(p, opt.j_level), bits);
            } else {
                print_value(exponent_lower(p, opt.j_level), bits);
            }
        } else if (c_cmp->parsed()) {
            if (opt.rate <= 0.0) throw input_error("compare-exponents needs --rate > 0");
            dominance_report r =
                compare_exponents(load_pmf(opt.p_path), load_pmf(opt.q_path), opt.rate);
            nlohmann::json j;
            j["dominates"] = r.dominates;
            j["thresholds"] = r.thresholds;
            j["lower_endpoint_tied"] = r.lower_endpoint_tied;
            j["upper_endpoint_tied"] = r.upper_endpoint_tied;
            std::printf("%s\n", j.dump().c_str());
        } else if (c_con->parsed()) {
            sim_code code = build_code(opt);
            std::string text = code.to_json_text();
            if (opt.out_path.empty()) {
                std::printf("%s\n", text.c_str());
            } else {
                std::ofstream out(opt.out_path);
                if (!out) throw input_error("cannot write output file: " + opt.out_path);
                out << text << "\n";
            }
        } else if (c_eval->parsed()) {
            if (opt.code_path.empty()) throw input_error("evaluate needs --code");
            induced_pmf ip = induced_from_json(opt.code_path);
            print_value(evaluate_induced(ip, parse_order(opt.alpha), parse_direction(opt.dir)),
                        bits);
        } else if (c_guess->parsed()) {
            pmf p = load_pmf(opt.p_path);
            if (opt.rate < 0.0) throw input_error("guessing needs --rate >= 0");
            if (opt.key_path.empty()) {
                print_value(guessing_exponent(p, opt.rho, opt.rate), bits);
            } else {
                guess_query gq{p, load_pmf(opt.key_path), opt.rho, opt.rate};
                auto [lo, hi] = guessing_bounds(gq);
                std::printf("%s %s\n", format_value(lo, bits).c_str(),
                            format_value(hi, bits).c_str());
            }
        } else if (c_oracle->parsed()) {
            run_oracle(opt);
        } else if (c_sweep->parsed()) {
            run_sweep(sweep_target, opt);
        }
    } catch (const input_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const guard_error& e) {
        std::fprintf(stderr, "guard exceeded: %s\n", e.what());
        return 3;
    }
    return 0;
}
