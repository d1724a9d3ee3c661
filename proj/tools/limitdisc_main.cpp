// Command-line front end: ingest a generator file, run the analyses, and
// emit JSON reports plus CSV traces.
//
// Exit codes: 0 success, 2 input error, 3 hypothesis violation, 4 numeric
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <limitdisc/limitdisc.hpp>

namespace fs = std::filesystem;
using namespace limitdisc;

namespace {

struct RunConfig {
    std::string input;
    std::string word_path;
    std::size_t steps = 300;
    double tol = kChordalTol;
    std::string out_dir;
    bool csv = false;
    std::size_t grid_points = 0;
    unsigned long seed = 0;
};

void emit(const RunConfig& cfg, const Json& report, const std::string& filename) {
    if (cfg.out_dir.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    fs::create_directories(cfg.out_dir);
    std::ofstream out(fs::path(cfg.out_dir) / filename);
    out << report.dump(2) << "\n";
}

Json run_config_json(const RunConfig& cfg, const char* command) {
    return Json{{"command", command}, {"tol", cfg.tol}, {"seed", cfg.seed}};
}

GeneratorSet load_generators(const RunConfig& cfg) {
    return generator_set_from_json(load_json_file(cfg.input), cfg.tol);
}

WordSpec load_word(const RunConfig& cfg, const GeneratorSet& F) {
    return word_from_json(load_json_file(cfg.word_path), F);
}

Json generator_report(const GeneratorSet& F) {
    Json gens = Json::array();
    for (const auto& g : F) {
        Json j = to_json(g.map);
        j["name"] = g.name;
        j["in_class"] = true;
        j["tangency"] = to_json(g.data);
        j["image_disc"] = to_json(in_class_md(g.map).image);
        gens.push_back(std::move(j));
    }
    return gens;
}

int cmd_analyze(const RunConfig& cfg) {
    const GeneratorSet F = load_generators(cfg);
    const TangencyGraph G = build_tangency_graph(F, cfg.tol);
    const auto completeness = check_complete(F, G);

    Json report = run_config_json(cfg, "analyze");
    report["tol"] = cfg.tol;
    report["generators"] = generator_report(F);
    report["graph"] = to_json(G, F);
    report["graph"]["has_cycle"] = has_cycle(G);
    report["graph"]["complete"] = completeness.complete;
    if (completeness.warning) report["graph"]["warning"] = *completeness.warning;
    emit(cfg, report, "analyze.json");
    return 0;
}

int cmd_classify(const RunConfig& cfg) {
    const GeneratorSet F = load_generators(cfg);
    const WordSpec w = load_word(cfg, F);
    w.validate(F);
    const Classification cls = classify_word(F, w);

    Json report = run_config_json(cfg, "classify");
    report["classification"] = to_json(cls);
    if (cls.verdict == Verdict::LimitDisc) {
        const auto ld = limit_disc_exact(F, w);
        report["limit_disc"] = to_json(ld.disc);
        report["t_infinity"] = ld.t_infinity;
        report["dropped_prefix"] = ld.dropped_prefix;
    }
    emit(cfg, report, "classify.json");
    return 0;
}

int cmd_dimension(const RunConfig& cfg) {
    const GeneratorSet F = load_generators(cfg);
    const TangencyGraph G = build_tangency_graph(F, cfg.tol);
    const DimensionReport rep = dimension_upper_bound(F, G);

    Json report = run_config_json(cfg, "dimension");
    report["dimension"] = to_json(rep);
    report["spectral_radius"] = spectral_radius(G);
    report["alphabet_size"] = F.size();
    Json gammas = Json::object();
    for (const auto& g : F)
        if (g.data.tangent) gammas[g.name] = *g.data.gamma;
    report["gammas"] = gammas;
    emit(cfg, report, "dimension.json");
    return 0;
}

std::vector<ExtComplex> interior_grid(std::size_t count) {
    std::vector<ExtComplex> pts;
    if (count == 0) return pts;
    const std::size_t side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    for (std::size_t i = 0; i < side && pts.size() < count; ++i)
        for (std::size_t j = 0; j < side && pts.size() < count; ++j) {
            const double re = side == 1 ? 0.0 : -0.6 + 1.2 * static_cast<double>(i) / (side - 1);
            const double im = side == 1 ? 0.0 : -0.6 + 1.2 * static_cast<double>(j) / (side - 1);
            pts.emplace_back(re, im);
        }
    return pts;
}

int cmd_simulate(const RunConfig& cfg) {
    const GeneratorSet F = load_generators(cfg);
    const WordSpec w = load_word(cfg, F);
    const OrbitTrace tr = iterate_orbit(F, w, cfg.steps);

    Json report = run_config_json(cfg, "simulate");
    report["steps"] = cfg.steps;
    if (!w.period.empty()) report["classification"] = to_json(classify_word(F, w));
    report["final"] = Json{{"n", tr.size()},
                           {"disc", to_json(tr.discs.back())},
                           {"dist_j", tr.dist_j.back()},
                           {"partial_sum", tr.escape_partial_sums.back()}};

    try {
        const auto esc = rapid_escape_report(tr);
        report["escape"] = Json{{"cauchy_tail", esc.cauchy_tail},
                                {"tail_sum_estimate", esc.tail_sum_estimate},
                                {"height_inequality_ok", esc.height_inequality_ok}};
    } catch (const TraceTooShortError& e) {
        report["escape"] = Json{{"error", e.what()}};
    }
    try {
        const auto il = ideal_limit(tr);
        report["ideal_limit"] =
            Json{{"q", to_json(il.q)}, {"resid", il.resid}, {"converged", il.converged}};
    } catch (const TraceTooShortError& e) {
        report["ideal_limit"] = Json{{"error", e.what()}};
    }
    const auto chain = tangency_chain_check(tr.discs);
    report["chain"] = Json{{"eventually_tangent", chain.eventually_tangent},
                           {"witness_index", chain.witness_index}};

    if (cfg.grid_points > 0) {
        const auto pts = interior_grid(cfg.grid_points);
        const auto conv = pointwise_convergence(F, w, cfg.steps, pts);
        Json pj = Json::array();
        for (const auto& pr : conv.per_point) {
            Json one{{"point", to_json(pr.point)},
                     {"converged", pr.converged},
                     {"limit", to_json(pr.limit)}};
            if (!pr.anchor_hits.empty()) one["anchor_hits"] = pr.anchor_hits;
            pj.push_back(std::move(one));
        }
        Json xs = Json::array();
        for (const auto& x : conv.exceptional_set) xs.push_back(to_json(x));
        report["pointwise"] = Json{{"q", to_json(conv.q)},
                                   {"q_resid", conv.q_resid},
                                   {"exceptional_set", xs},
                                   {"points", pj}};
    }

    if (cfg.csv) {
        const fs::path dir = cfg.out_dir.empty() ? fs::path(".") : fs::path(cfg.out_dir);
        fs::create_directories(dir);
        std::ofstream csv(dir / "trace.csv");
        write_trace_csv(csv, tr);
        report["trace_csv"] = (dir / "trace.csv").string();
    }
    if (!cfg.out_dir.empty()) report["trace"] = to_json(tr); // full trace only in file reports
    emit(cfg, report, "simulate.json");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"composition sequences of Moebius maps of the unit disc: "
                 "tangency analysis, limit-type classification, Hausdorff "
                 "dimension, orbit simulation"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool needs_word) {
        sub->add_option("--input", cfg.input, "generator file (JSON)")->required();
        if (needs_word) sub->add_option("--word", cfg.word_path, "word file (JSON)")->required();
        sub->add_option("--tol", cfg.tol, "tangency / comparison tolerance");
        sub->add_option("--out", cfg.out_dir, "output directory (default: stdout)");
        sub->add_option("--seed", cfg.seed, "seed recorded in reports");
    };

    auto* analyze = app.add_subcommand("analyze", "tangency data and graph for a generator set");
    add_common(analyze, false);
    auto* classify = app.add_subcommand("classify", "limit-point / limit-disc verdict for a word");
    add_common(classify, true);
    auto* dimension = app.add_subcommand("dimension", "Hausdorff dimension of the limit-disc set");
    add_common(dimension, false);
    auto* simulate = app.add_subcommand("simulate", "orbit trace and convergence diagnostics");
    add_common(simulate, true);
    simulate->add_option("--steps", cfg.steps, "orbit length")->check(CLI::PositiveNumber);
    simulate->add_flag("--csv", cfg.csv, "write the per-step trace as CSV");
    simulate->add_option("--points", cfg.grid_points, "interior grid points for pointwise checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(cfg);
        if (app.got_subcommand(classify)) return cmd_classify(cfg);
        if (app.got_subcommand(dimension)) return cmd_dimension(cfg);
        if (app.got_subcommand(simulate)) return cmd_simulate(cfg);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownNameError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NotInMDError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateMapError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolatedError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const GraphNotCompleteError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const LogBaseDegenerateError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const NotLimitDiscError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
