#include "adjspec/adjacency.hpp"
#include "adjspec/flow.hpp"
#include "adjspec/hydrogen.hpp"
#include "adjspec/param_matrix.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace adjspec;

struct ModelOpts {
    std::string name;  // built-in: h0 | h | hprime | hydrogen
    std::string input; // model file path
    double c2 = 0.3;
    double coupling = 1.0; // hprime off-diagonal coefficient
};

void add_model_flags(CLI::App* cmd, ModelOpts& opts) {
    cmd->add_option("--model", opts.name, "built-in model: h0 | h | hprime | hydrogen");
    cmd->add_option("--input", opts.input, "model file (JSON)");
    cmd->add_option("--c2", opts.c2, "coupling scale of the built-in model h (default 0.3)");
    cmd->add_option("--C", opts.coupling, "off-diagonal coefficient of hprime (default 1)");
}

ParametricMatrix resolve_matrix(const ModelOpts& opts) {
    if (opts.name.empty() == opts.input.empty())
        throw input_error("give exactly one of --model and --input");
    if (!opts.input.empty()) return load_model(opts.input);
    if (opts.name == "h0") return model_h0();
    if (opts.name == "h") return model_h(opts.c2);
    if (opts.name == "hprime") return model_hprime(opts.coupling);
    if (opts.name == "hydrogen") return build_subspace_one();
    throw input_error("unknown model '" + opts.name + "' (try h0, h, hprime, hydrogen)");
}

struct GridOpts {
    std::string parameter;
    std::string from, to;
    int steps = 400;
    bool log_spacing = false;
};

void add_grid_flags(CLI::App* cmd, GridOpts& opts) {
    cmd->add_option("--param", opts.parameter, "swept parameter name")->required();
    cmd->add_option("--from", opts.from, "grid start")->required();
    cmd->add_option("--to", opts.to, "grid end")->required();
    cmd->add_option("--steps", opts.steps, "number of grid points (default 400)");
    cmd->add_flag("--log", opts.log_spacing, "logarithmic spacing");
}

SweepGrid make_grid(const GridOpts& opts, unsigned digits) {
    SweepGrid grid{opts.parameter, make_real(opts.from, digits), make_real(opts.to, digits),
                   opts.steps, opts.log_spacing};
    grid.validate();
    return grid;
}

Assignment parse_assignments(const std::vector<std::string>& sets, double e1, double e2,
                             bool have_e1, bool have_e2, unsigned digits) {
    Assignment fixed;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw input_error("--set expects name=value, got '" + s + "'");
        fixed[s.substr(0, eq)] = make_real(s.substr(eq + 1), digits);
    }
    if (have_e1) fixed["E1"] = make_real(std::to_string(e1), digits);
    if (have_e2) fixed["E2"] = make_real(std::to_string(e2), digits);
    return fixed;
}

std::vector<unsigned> parse_ladder(const std::string& text) {
    std::vector<unsigned> ladder;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            ladder.push_back(static_cast<unsigned>(std::stoul(item)));
        } catch (const std::exception&) {
            throw input_error("bad precision ladder entry '" + item + "'");
        }
    }
    if (ladder.empty()) throw input_error("empty precision ladder");
    return ladder;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << content;
}

std::string format_sets(const ComponentPartition& partition) {
    std::ostringstream out;
    for (size_t s = 0; s < partition.sets.size(); ++s) {
        out << (s ? " {" : "{");
        for (size_t i = 0; i < partition.sets[s].size(); ++i)
            out << (i ? "," : "") << partition.sets[s][i];
        out << "}";
    }
    return out.str();
}

int cmd_decompose(const ModelOpts& model, const std::string& out_path,
                  const std::string& format, bool self_loops) {
    PatternMatrix pattern(1);
    std::vector<std::string> labels;
    std::optional<ParametricMatrix> matrix;
    if (model.input.empty() && model.name == "hydrogen") {
        pattern = fz0_adjacency();
        for (const auto& s : fz0_states()) labels.push_back(s.label());
    } else {
        matrix = resolve_matrix(model);
        pattern = pattern_of(*matrix);
        labels = matrix->labels();
    }
    const ComponentPartition partition = components(pattern);
    if (partition.sets.size() == 1)
        std::cout << "irreducible: 1 component\n";
    else
        std::cout << "reducible: " << partition.sets.size() << " components "
                  << format_sets(partition) << "\n";
    if (!out_path.empty()) {
        if (format == "dot")
            write_output(out_path, to_dot(pattern, labels, self_loops));
        else if (format == "json")
            write_output(out_path, accumulated_to_json(accumulate(pattern)));
        else
            throw input_error("decompose writes dot or json, not '" + format + "'");
    }
    return 0;
}

int cmd_sweep(const ModelOpts& model, const GridOpts& grid_opts, const Assignment& fixed,
              unsigned digits, int threads, const std::string& out_path,
              const std::string& format) {
    const ParametricMatrix m = resolve_matrix(model);
    const SweepGrid grid = make_grid(grid_opts, digits);
    const SpectralFlow flow = sweep(m, grid, fixed, digits, threads);
    if (format == "csv")
        write_output(out_path, flow_to_csv(flow));
    else if (format == "json")
        write_output(out_path, flow_to_json(flow));
    else
        throw input_error("sweep writes csv or json, not '" + format + "'");
    return 0;
}

int cmd_crossings(const ModelOpts& model, const GridOpts& grid_opts, const Assignment& fixed,
                  unsigned digits, const std::vector<unsigned>& ladder,
                  const std::string& threshold, int threads, const std::string& out_path,
                  const std::string& format) {
    const ParametricMatrix m = resolve_matrix(model);
    const SweepGrid grid = make_grid(grid_opts, digits);
    const SpectralFlow flow = sweep(m, grid, fixed, digits, threads);
    const auto candidates = detect_candidates(flow, make_real(threshold, digits));
    const MatrixFamily family{m, grid.parameter, fixed, {}};
    std::vector<CrossingReport> reports;
    for (const auto& c : candidates) reports.push_back(classify(family, c, ladder));
    const unsigned out_digits = ladder.back();
    if (format == "json")
        write_output(out_path, reports_to_json(reports, out_digits));
    else if (format == "csv")
        write_output(out_path, reports_to_csv(reports, out_digits));
    else
        throw input_error("crossings writes json or csv, not '" + format + "'");
    return 0;
}

int cmd_hydrogen(const std::string& rho_min, const std::string& rho_max, int steps,
                 unsigned digits, const std::vector<unsigned>& ladder,
                 const std::string& threshold, int threads, const std::string& out_curves,
                 const std::string& out_crossings, const std::string& graph_path) {
    const HydrogenConstants constants;
    SweepGrid grid{"rho", make_real(rho_min, digits), make_real(rho_max, digits), steps, true};
    const SpectralFlow flow = potential_curves(grid, constants, digits, threads);
    write_output(out_curves, flow_to_csv(flow));

    const auto candidates = detect_candidates(flow, make_real(threshold, digits));
    const MatrixFamily family = hydrogen_family(constants, ladder.back());
    std::vector<CrossingReport> reports;
    for (const auto& c : candidates) reports.push_back(classify(family, c, ladder));
    write_output(out_crossings, reports_to_json(reports, ladder.back()));

    if (!graph_path.empty()) {
        std::vector<std::string> labels;
        for (const auto& s : fz0_states()) labels.push_back(s.label());
        write_output(graph_path, to_dot(fz0_adjacency(), labels));
    }

    for (const auto& r : reports)
        std::cout << to_string(r.verdict) << ": curves (" << r.candidate.curve_a << ","
                  << r.candidate.curve_b << ") at rho = " << to_decimal(r.location, 16)
                  << ", energy = " << to_decimal(r.energy, 16) << " MHz\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decompose parameter-dependent symmetric matrices into irreducible blocks,\n"
                 "sweep their eigenvalue curves, and classify level crossings at escalating\n"
                 "precision."};
    app.require_subcommand(1);

    ModelOpts model;
    GridOpts grid;
    std::vector<std::string> sets;
    double e1 = 0, e2 = 0;
    unsigned digits = 16;
    int threads = 0;
    std::string ladder_text = "16,50,128";
    std::string threshold = "0.25";
    std::string out_path; // decompose/sweep/crossings: empty means stdout
    std::string dec_format = "dot", swp_format = "csv", cro_format = "json";
    std::string hyd_curves = "hydrogen_curves.csv", out_crossings = "hydrogen_crossings.json";
    std::string rho_min = "100", rho_max = "10000";
    int rho_steps = 200;
    bool self_loops = false;
    std::string graph_path;

    auto* dec = app.add_subcommand("decompose", "component partition and reducibility verdict");
    add_model_flags(dec, model);
    dec->add_option("--out", out_path, "write DOT or accumulated-matrix JSON here");
    dec->add_option("--format", dec_format, "output format: dot | json (default dot)");
    dec->add_flag("--self-loops", self_loops, "keep diagonal self-loops in DOT output");

    auto* swp = app.add_subcommand("sweep", "eigenvalue curves over a parameter grid");
    add_model_flags(swp, model);
    add_grid_flags(swp, grid);
    swp->add_option("--set", sets, "fix a parameter, name=value (repeatable)");
    auto* e1_opt = swp->add_option("--E1", e1, "shorthand for --set E1=<value>");
    auto* e2_opt = swp->add_option("--E2", e2, "shorthand for --set E2=<value>");
    swp->add_option("--precision", digits, "working precision in decimal digits (default 16)");
    swp->add_option("--threads", threads, "worker threads (default: all cores)");
    swp->add_option("--out", out_path, "output path (default: stdout)");
    swp->add_option("--format", swp_format, "output format: csv | json (default csv)");

    auto* cro = app.add_subcommand("crossings", "detect and classify crossing candidates");
    add_model_flags(cro, model);
    add_grid_flags(cro, grid);
    cro->add_option("--set", sets, "fix a parameter, name=value (repeatable)");
    auto* e1_optc = cro->add_option("--E1", e1, "shorthand for --set E1=<value>");
    auto* e2_optc = cro->add_option("--E2", e2, "shorthand for --set E2=<value>");
    cro->add_option("--precision", digits, "sweep precision in decimal digits (default 16)");
    cro->add_option("--ladder", ladder_text, "classification precision ladder (default 16,50,128)");
    cro->add_option("--gap-threshold", threshold,
                    "adjacent-gap detection threshold (default 0.25); order swaps are always kept");
    cro->add_option("--threads", threads, "worker threads (default: all cores)");
    cro->add_option("--out", out_path, "output path (default: stdout)");
    cro->add_option("--format", cro_format, "output format: json | csv (default json)");

    auto* hyd = app.add_subcommand("hydrogen", "2S-2S potential curves and crossing reports");
    hyd->add_option("--rho-min", rho_min, "smallest separation in Bohr radii (default 100)");
    hyd->add_option("--rho-max", rho_max, "largest separation in Bohr radii (default 10000)");
    hyd->add_option("--steps", rho_steps, "log-spaced grid points (default 200)");
    hyd->add_option("--precision", digits, "sweep precision in decimal digits (default 16)");
    hyd->add_option("--ladder", ladder_text, "classification precision ladder (default 16,50,128)");
    hyd->add_option("--gap-threshold", threshold,
                    "adjacent-gap detection threshold in MHz (default 0.25)");
    hyd->add_option("--threads", threads, "worker threads (default: all cores)");
    hyd->add_option("--out", hyd_curves, "curves CSV path (default hydrogen_curves.csv)");
    hyd->add_option("--out-crossings", out_crossings,
                    "crossing report JSON path (default hydrogen_crossings.json)");
    hyd->add_option("--emit-graph", graph_path, "also write the 24-state coupling graph as DOT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        const std::vector<unsigned> ladder = parse_ladder(ladder_text);
        if (dec->parsed()) return cmd_decompose(model, out_path, dec_format, self_loops);
        if (swp->parsed()) {
            const Assignment fixed = parse_assignments(sets, e1, e2, e1_opt->count() > 0,
                                                       e2_opt->count() > 0, digits);
            return cmd_sweep(model, grid, fixed, digits, threads, out_path, swp_format);
        }
        if (cro->parsed()) {
            const unsigned anchor = std::max(digits, ladder.back());
            const Assignment fixed = parse_assignments(sets, e1, e2, e1_optc->count() > 0,
                                                       e2_optc->count() > 0, anchor);
            return cmd_crossings(model, grid, fixed, digits, ladder, threshold, threads,
                                 out_path, cro_format);
        }
        if (hyd->parsed())
            return cmd_hydrogen(rho_min, rho_max, rho_steps, digits, ladder, threshold, threads,
                                hyd_curves, out_crossings, graph_path);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
