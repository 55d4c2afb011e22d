#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jarc/jarc.hpp"

namespace fs = std::filesystem;
using namespace jarc;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInternal = 2;

struct Common {
    std::string input;
    int m_override = 0;
};

CurveFamily load(const Common& c) {
    auto fam = read_family_file(c.input);
    if (c.m_override > 0) return CurveFamily(fam.curves(), c.m_override);
    return fam;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 1) throw PreconditionError("bad sweep size '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw PreconditionError("empty sweep");
    return out;
}

Rational parse_rational_arg(const std::string& s) {
    Rational q;
    if (!parse_rational(s, q)) throw PreconditionError("bad rational '" + s + "'");
    return q;
}

int print_violations(const ValidationReport& r) {
    for (const auto& v : r.violations) {
        std::cerr << to_string(v.kind) << ":";
        for (auto id : v.curves) std::cerr << " " << id;
        if (v.point) std::cerr << " at " << to_string(*v.point);
        std::cerr << " " << v.message << "\n";
    }
    return kViolation;
}

int cmd_validate(const Common& c) {
    auto fam = load(c);
    auto r = validate_general_position(fam);
    if (!r.ok) return print_violations(r);
    std::cout << "ok\n";
    return kOk;
}

int cmd_analyze(const Common& c, const std::string& graphs, const std::string& emit, const std::string& report) {
    auto fam = load(c);
    auto v = validate_general_position(fam);
    if (!v.ok) return print_violations(v);
    auto inc = family_incidences(fam);
    auto st = family_stats(fam, inc);
    auto contact = build_contact_graph(fam, inc);
    auto strings = build_intersection_graph(fam, inc);
    bool all_closed = true;
    for (const auto& cv : fam.curves()) all_closed = all_closed && cv.closed();
    const bool planar = check_planarity(contact);
    std::cout << "n=" << st.n << " T=" << st.T << " X=" << st.X << " d=" << st.d << "\n";
    std::cout << "contact_edges=" << contact.edge_count() << " string_edges=" << strings.edge_count()
              << " contact_planar=" << (planar ? "yes" : "no") << "\n";
    write_text(graphs, format_edge_list(contact));
    write_text(emit, format_family(fam));
    if (!report.empty()) {
        Json j{{"stats", to_json(st)},
               {"m", fam.m()},
               {"contact_edges", contact.edge_count()},
               {"string_edges", strings.edge_count()},
               {"contact_planar", planar},
               {"all_closed", all_closed},
               {"bounds", to_json(bound_row(st, fam.m()))}};
        write_text(report, dump_report(j));
    }
    // Closed curves always have a planar contact graph.
    return all_closed && !planar ? kViolation : kOk;
}

int cmd_generate(const std::string& kind, int n, int m, int resolution, std::uint64_t seed, const std::string& out) {
    GeneratorSpec spec;
    spec.kind = parse_generator_kind(kind);
    spec.n = n;
    spec.m = m;
    spec.resolution = resolution;
    spec.seed = seed;
    auto fam = generate(spec);
    if (out.empty())
        std::cout << format_family(fam);
    else
        write_family_file(out, fam);
    return kOk;
}

int cmd_decompose(const Common& c, const std::string& cconst, const std::string& pieces_dir, const std::string& report) {
    auto fam = load(c);
    auto v = validate_general_position(fam);
    if (!v.ok) return print_violations(v);
    DecomposeOptions opt;
    opt.report_only = true;
    auto rep = recursive_decompose(fam, parse_rational_arg(cconst), opt);
    std::cout << "n=" << rep.n << " T=" << rep.T << " d=" << rep.d << " M=" << format_rational(rep.M)
              << " separator=" << rep.separator.size() << " pieces=" << rep.pieces.size()
              << " surviving=" << rep.touchings_surviving << (rep.degenerate ? " degenerate" : "") << "\n";
    if (!pieces_dir.empty()) {
        fs::create_directories(pieces_dir);
        const auto& red = rep.reduction.family;
        for (std::size_t k = 0; k < rep.pieces.size(); ++k) {
            std::vector<PolylineCurve> curves;
            for (auto id : rep.pieces[k]) curves.push_back(red[red.index_of(id)]);
            char name[32];
            std::snprintf(name, sizeof name, "piece_%04zu.fam", k);
            write_family_file((fs::path(pieces_dir) / name).string(), CurveFamily(std::move(curves), fam.m()));
        }
    }
    write_text(report, dump_report(to_json(rep)));
    const bool ok = rep.degenerate || (rep.pieces_below_M && rep.pieces_independent && rep.accounting_matches);
    return ok ? kOk : kViolation;
}

int cmd_prop9(const Common& c, std::uint64_t seed, std::uint64_t budget, const std::string& report) {
    Json j;
    bool ok = true;
    Json valid = Json::array();
    std::size_t distinct = 0;
    for (const auto& inst : valid_face_instances(seed)) {
        auto r = verify_signature_uniqueness(inst.context(), inst.lambdaF);
        distinct += r.distinct;
        ok = ok && r.distinct;
        Json e = to_json(r);
        e["name"] = inst.name;
        e["m"] = inst.m;
        valid.push_back(std::move(e));
    }
    Json violating = Json::array();
    std::size_t certified = 0;
    auto pairs = violating_face_pairs(seed);
    for (const auto& inst : pairs) {
        auto ctx = inst.context();
        auto r = alt_hat_charging(ctx, inst.lambdaF[0], inst.lambdaF[1]);
        const bool good = r.certified && r.arc_intersections >= static_cast<std::size_t>(inst.m) + 1;
        certified += good;
        ok = ok && good;
        Json e = to_json(r);
        e["name"] = inst.name;
        e["m"] = inst.m;
        violating.push_back(std::move(e));
    }
    std::cout << "signature instances distinct: " << distinct << "/" << valid.size() << "\n";
    std::cout << "violating pairs certified: " << certified << "/" << pairs.size() << "\n";
    j["seed"] = seed;
    j["valid_instances"] = std::move(valid);
    j["violating_pairs"] = std::move(violating);
    if (!c.input.empty()) {
        auto fam = load(c);
        auto v = validate_general_position(fam);
        if (!v.ok) return print_violations(v);
        GroundPairSampler sampler(fam);
        if (sampler.pair_count() == 0) throw PreconditionError("family needs at least two curves");
        auto sample = sampler.sample(seed);
        auto l8 = check_lemma8(fam, sample, budget);
        std::cout << "lemma8: arcs=" << l8.arcs << " s=" << l8.s << " l_observed=" << l8.l_observed << "\n";
        j["family"] = Json{{"sample", to_json(sample)}, {"lemma8", to_json(l8)}};
    }
    write_text(report, dump_report(j));
    return ok ? kOk : kViolation;
}

int cmd_sample_lemma(const Common& c, std::size_t trials, std::uint64_t seed, const std::string& report) {
    auto fam = load(c);
    auto v = validate_general_position(fam);
    if (!v.ok) return print_violations(v);
    auto inc = family_incidences(fam);
    Json j{{"seed", seed}, {"trials", trials}};
    bool ok = true;
    auto st = family_stats(fam, inc);
    if (st.T >= 1) {
        auto rp = rich_poor_partition(fam, inc);
        ok = ok && rp.bound_holds;
        j["rich_poor"] = to_json(rp);
        std::cout << "T=" << rp.T << " T_poor=" << rp.T_poor << " T_rich=" << rp.T_rich << "\n";
    }
    if (fam.size() >= 2) {
        auto mc = monte_carlo_ground_pairs(fam, trials, seed);
        j["monte_carlo"] = to_json(mc);
        std::cout << "mean t'=" << format_double(mc.mean_t_prime) << " t*=" << format_double(mc.mean_t_star)
                  << " t*_delta=" << format_double(mc.mean_t_star_in_delta) << "\n";
        if (fam.size() <= 8) {
            auto ex = exhaustive_expectation(fam);
            ok = ok && ex.half_bound_holds && ex.cell_bound_holds && ex.pigeonhole_holds;
            j["exhaustive"] = to_json(ex);
            std::cout << "exhaustive over " << ex.outcomes << " outcomes: "
                      << (ex.half_bound_holds && ex.cell_bound_holds ? "bounds hold" : "bound violated") << "\n";
        }
    }
    write_text(report, dump_report(j));
    return ok ? kOk : kViolation;
}

int cmd_experiment(const std::string& kind, const std::string& sweep, int m, int resolution, std::uint64_t seed,
                   const std::string& cconst, const std::string& out, const std::string& summary) {
    SweepOptions opt;
    opt.kind = parse_generator_kind(kind);
    opt.ns = parse_sizes(sweep);
    opt.m = m;
    opt.resolution = resolution;
    opt.seed = seed;
    opt.C_const = parse_rational_arg(cconst);
    auto rows = run_sweep(opt);
    auto s = summarize_sweep(rows, m);
    const std::string csv = sweep_csv(rows);
    if (out.empty())
        std::cout << csv;
    else
        write_text(out, csv);
    if (!summary.empty()) {
        Json j{{"kind", kind}, {"seed", seed}, {"m", m}, {"summary", to_json(s)}};
        Json r = Json::array();
        for (const auto& row : rows) r.push_back(to_json(row));
        j["rows"] = std::move(r);
        write_text(summary, dump_report(j));
    }
    if (s.fit) std::cerr << "alpha=" << format_double(s.fit->alpha) << " r2=" << format_double(s.fit->r2) << "\n";
    return s.alpha_within_bound && s.x_at_least_t ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Touching curves: validation, analysis, decomposition and experiments"};
    app.require_subcommand(1);

    Common common;
    std::uint64_t seed = 42;
    std::string report, graphs, emit, out, summary, kind = "unit-circles-grid", cconst = "8", sweep, pieces_dir;
    int n = 16, m = 2, resolution = 16;
    std::size_t trials = 10000;
    std::uint64_t budget = 200'000'000;

    auto add_input = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("family", common.input, "family file");
        if (required) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--m", common.m_override, "override the declared intersection bound")->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand("validate", "check general position and the declared bound");
    add_input(validate, true);

    auto* analyze = app.add_subcommand("analyze", "counts, graphs and bound ratios");
    add_input(analyze, true);
    analyze->add_option("--graphs", graphs, "write the contact graph edge list");
    analyze->add_option("--emit", emit, "re-serialize the family");
    analyze->add_option("--report", report, "JSON report");

    auto* gen = app.add_subcommand("generate", "generate a family");
    gen->add_option("--kind", kind)->required();
    gen->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    gen->add_option("--m", m)->check(CLI::PositiveNumber);
    gen->add_option("--resolution", resolution)->check(CLI::Range(8, 1 << 20));
    gen->add_option("--seed", seed);
    gen->add_option("-o,--out", out, "family file (stdout when omitted)");

    auto* dec = app.add_subcommand("decompose", "degree reduction and recursive separation");
    add_input(dec, true);
    dec->add_option("--cconst", cconst, "rational constant C");
    dec->add_option("--emit-pieces", pieces_dir, "directory for one family file per piece");
    dec->add_option("--report", report, "JSON report");

    auto* prop9 = app.add_subcommand("verify-prop9", "signature uniqueness and charging on the built-in face suite");
    add_input(prop9, false);
    prop9->add_option("--seed", seed);
    prop9->add_option("--budget", budget, "biclique subset budget")->check(CLI::PositiveNumber);
    prop9->add_option("--report", report, "JSON report");

    auto* lemma = app.add_subcommand("sample-lemma", "ground pair sampling and rich/poor split");
    add_input(lemma, true);
    lemma->add_option("--trials", trials)->check(CLI::PositiveNumber);
    lemma->add_option("--seed", seed);
    lemma->add_option("--report", report, "JSON report");

    auto* exp = app.add_subcommand("experiment", "generator sweep against both bounds");
    exp->add_option("--kind", kind)->required();
    exp->add_option("--sweep", sweep, "comma separated sizes")->required();
    exp->add_option("--m", m)->check(CLI::PositiveNumber);
    exp->add_option("--resolution", resolution)->check(CLI::Range(8, 1 << 20));
    exp->add_option("--seed", seed);
    exp->add_option("--cconst", cconst);
    exp->add_option("--out", out, "CSV (stdout when omitted)");
    exp->add_option("--summary", summary, "JSON summary with the fitted exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInternal;
    }

    try {
        if (*validate) return cmd_validate(common);
        if (*analyze) return cmd_analyze(common, graphs, emit, report);
        if (*gen) return cmd_generate(kind, n, m, resolution, seed, out);
        if (*dec) return cmd_decompose(common, cconst, pieces_dir, report);
        if (*prop9) return cmd_prop9(common, seed, budget, report);
        if (*lemma) return cmd_sample_lemma(common, trials, seed, report);
        if (*exp) return cmd_experiment(kind, sweep, m, resolution, seed, cconst, out, summary);
    } catch (const ParseError& e) {
        std::cerr << common.input << ": " << e.what() << "\n";
        return kViolation;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
