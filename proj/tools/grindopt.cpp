// grindopt: surface-grinding parameter optimization and method ranking CLI.
//
// Exit codes: 0 success, 1 usage/parse error, 2 infeasible or degenerate input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grind/process_model.hpp"
#include "grind/report.hpp"
#include "grind/scalarization.hpp"
#include "grind/solver.hpp"
#include "grind/topsis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

struct GlobalArgs {
    std::string config_path;
    std::string json_path;
    std::string csv_dir;
    grind::SolveOptions opts;
};

grind::ProcessConstants load_constants(const GlobalArgs& g) {
    if (g.config_path.empty()) return grind::ProcessConstants{};
    auto c = grind::constants_from_json(read_file(g.config_path));
    c.require_valid();
    return c;
}

std::vector<double> parse_weight_csv(const std::string& text, std::size_t expected) {
    std::vector<double> w;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            std::size_t pos = 0;
            w.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad weight '" + tok + "'");
        }
    }
    if (w.size() != expected)
        throw std::invalid_argument("expected " + std::to_string(expected) + " weights, got " +
                                    std::to_string(w.size()));
    return w;
}

nlohmann::json evaluation_json(const grind::DecisionVector& dv, const grind::Evaluation& e,
                               double wrp, double wwp) {
    return {{"dv", {{"vw", dv.vw}, {"vs", dv.vs}, {"aw", dv.aw}}},
            {"objectives", {{"ra", e.objectives.ra}, {"t", e.objectives.t}, {"ct", e.objectives.ct}}},
            {"wrp", wrp},
            {"wwp", wwp},
            {"wear_ratio", e.wear_ratio},
            {"wear_residual", e.wear_residual},
            {"in_bounds", e.in_bounds},
            {"feasible", e.feasible}};
}

int cmd_evaluate(const GlobalArgs& g, double vw, double vs, double aw) {
    const auto c = load_constants(g);
    const grind::DecisionVector dv{vw, vs, aw};
    const grind::ModelEvaluator model(c);
    const auto e = model.evaluate(dv);
    const double wrp = model.wrp(dv);
    const double wwp = model.wwp(dv);

    std::printf("R_a            %.3f um\n", e.objectives.ra);
    std::printf("T              %.1f min\n", e.objectives.t);
    std::printf("C_T            %.3f $\n", e.objectives.ct);
    std::printf("WRP            %.6f mm^3/(min N)\n", wrp);
    std::printf("WWP            %.6f mm^3/(min N)\n", wwp);
    std::printf("WRP/WWP        %.4f (required >= %g)\n", e.wear_ratio, c.g_ratio);
    std::printf("wear residual  %.6f\n", e.wear_residual);
    std::printf("in bounds      %s\n", e.in_bounds ? "yes" : "no");
    std::printf("feasible       %s\n", e.feasible ? "yes" : "no");
    if (!g.json_path.empty())
        write_file(g.json_path, evaluation_json(dv, e, wrp, wwp).dump(2) + "\n");
    return e.feasible ? kExitOk : kExitInfeasible;
}

nlohmann::json ideal_json(const grind::IdealPoint& fstar) {
    auto dvj = [](const grind::DecisionVector& dv) {
        return nlohmann::json{{"vw", dv.vw}, {"vs", dv.vs}, {"aw", dv.aw}};
    };
    return {{"ra_star", fstar.ra_star},   {"t_star", fstar.t_star},
            {"ct_star", fstar.ct_star},   {"argmin_ra", dvj(fstar.argmin_ra)},
            {"argmin_t", dvj(fstar.argmin_t)}, {"argmin_ct", dvj(fstar.argmin_ct)}};
}

void print_ideal(const grind::IdealPoint& fstar) {
    std::printf("R_a*  %.4f um  at (vw=%.2f, vs=%.0f, aw=%.3f)\n", fstar.ra_star,
                fstar.argmin_ra.vw, fstar.argmin_ra.vs, fstar.argmin_ra.aw);
    std::printf("T*    %.2f min at (vw=%.2f, vs=%.0f, aw=%.3f)\n", fstar.t_star,
                fstar.argmin_t.vw, fstar.argmin_t.vs, fstar.argmin_t.aw);
    std::printf("C_T*  %.4f $   at (vw=%.2f, vs=%.0f, aw=%.3f)\n", fstar.ct_star,
                fstar.argmin_ct.vw, fstar.argmin_ct.vs, fstar.argmin_ct.aw);
}

int cmd_ideal(const GlobalArgs& g) {
    const auto c = load_constants(g);
    const auto fstar = grind::ideal_point(c, g.opts);
    print_ideal(fstar);
    if (!g.json_path.empty()) write_file(g.json_path, ideal_json(fstar).dump(2) + "\n");
    return kExitOk;
}

grind::MethodSpec with_weights(grind::MethodSpec spec, const std::string& weights_arg) {
    if (weights_arg.empty()) return spec;
    const auto parsed = parse_weight_csv(weights_arg, 3);
    const std::array<double, 3> w{parsed[0], parsed[1], parsed[2]};
    switch (spec.kind) {
        case grind::MethodKind::WSM:
            return grind::MethodSpec::wsm(w, spec.ideal_normalized);
        case grind::MethodKind::GoalAttainment:
            return grind::MethodSpec::goal_attainment(w);
        case grind::MethodKind::GoalProgramming:
            return grind::MethodSpec::goal_programming(w, spec.ideal_normalized);
        default:
            throw std::invalid_argument(
                "--weights applies to wsm, goal-attainment, and goal-programming only");
    }
}

int cmd_solve(const GlobalArgs& g, const std::string& method, const std::string& weights_arg) {
    const auto c = load_constants(g);
    const auto spec = with_weights(grind::MethodSpec::parse(method), weights_arg);
    const auto fstar = grind::ideal_point(c, g.opts);
    if (spec.kind == grind::MethodKind::Individual) {
        print_ideal(fstar);
        if (!g.json_path.empty()) write_file(g.json_path, ideal_json(fstar).dump(2) + "\n");
        return kExitOk;
    }
    const auto r = grind::solve(spec, c, fstar, g.opts);
    std::printf("%s\n", spec.display_name().c_str());
    std::printf("  dv            (vw=%.2f, vs=%.0f, aw=%.3f)\n", r.dv.vw, r.dv.vs, r.dv.aw);
    std::printf("  R_a           %.3f um\n", r.objectives.ra);
    std::printf("  T             %.1f min\n", r.objectives.t);
    std::printf("  C_T           %.3f $\n", r.objectives.ct);
    std::printf("  scalar value  %.9g (%s)\n", r.scalar_value,
                r.direction == grind::Direction::Maximize ? "maximized" : "minimized");
    std::printf("  feasible      %s\n", r.feasible ? "yes" : "no");
    std::printf("  CPU-Time      %.3f s (%lld evaluations)\n", r.wall_time_s,
                static_cast<long long>(r.evaluations));
    if (!g.json_path.empty()) {
        nlohmann::json j;
        j["ideal"] = ideal_json(fstar);
        j["method"] = spec.cli_name();
        j["dv"] = {{"vw", r.dv.vw}, {"vs", r.dv.vs}, {"aw", r.dv.aw}};
        j["objectives"] = {{"ra", r.objectives.ra}, {"t", r.objectives.t}, {"ct", r.objectives.ct}};
        j["scalar_value"] = r.scalar_value;
        j["direction"] = r.direction == grind::Direction::Maximize ? "max" : "min";
        j["feasible"] = r.feasible;
        j["truncated"] = r.truncated;
        j["wall_time_s"] = r.wall_time_s;
        j["evaluations"] = r.evaluations;
        write_file(g.json_path, j.dump(2) + "\n");
    }
    return r.feasible ? kExitOk : kExitInfeasible;
}

int cmd_compare(const GlobalArgs& g, const std::vector<std::string>& method_args,
                const std::string& weights_arg, bool renormalize) {
    const auto c = load_constants(g);
    std::vector<grind::MethodSpec> methods;
    if (method_args.empty()) {
        methods = grind::default_method_set();
    } else {
        for (const auto& m : method_args) methods.push_back(grind::MethodSpec::parse(m));
    }
    grind::CriteriaWeights weights = grind::default_criteria_weights();
    if (!weights_arg.empty()) weights.w = parse_weight_csv(weights_arg, 4);

    const auto report = grind::run_experiment(c, methods, g.opts, weights, renormalize);
    std::fputs(grind::format_comparison_table(report).c_str(), stdout);
    if (report.topsis) {
        std::printf("\n");
        std::fputs(grind::format_topsis_table(report.topsis->matrix.alternatives,
                                              report.topsis->result)
                       .c_str(),
                   stdout);
    }
    if (!g.json_path.empty()) write_file(g.json_path, grind::report_to_json(report));
    if (!g.csv_dir.empty()) grind::write_report_csvs(report, g.csv_dir);
    for (const auto& row : report.rows)
        if (row.feasible) return kExitOk;
    return kExitInfeasible;
}

int cmd_topsis(const GlobalArgs& g, const std::string& matrix_path, const std::string& weights_arg,
               bool renormalize) {
    const auto matrix = grind::load_decision_matrix(read_file(matrix_path));
    grind::CriteriaWeights weights = grind::default_criteria_weights();
    if (!weights_arg.empty()) weights.w = parse_weight_csv(weights_arg, matrix.cols());
    if (renormalize) weights = weights.renormalized();

    const auto result = grind::run_topsis(matrix, weights);
    std::fputs(grind::format_topsis_table(matrix.alternatives, result).c_str(), stdout);
    if (!g.json_path.empty()) {
        nlohmann::json j;
        j["alternatives"] = matrix.alternatives;
        j["weights"] = weights.w;
        j["renormalized"] = renormalize;
        j["similarity"] = result.similarity;
        j["d_plus"] = result.d_plus;
        j["d_minus"] = result.d_minus;
        j["rank"] = result.rank;
        write_file(g.json_path, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_config(const std::string& out_path, const std::string& check_path) {
    if (!check_path.empty()) {
        const auto c = grind::constants_from_json(read_file(check_path));
        const auto bad = c.validate();
        if (!bad.empty()) {
            std::fprintf(stderr, "config %s is invalid:\n", check_path.c_str());
            for (const auto& b : bad) std::fprintf(stderr, "  %s\n", b.c_str());
            return kExitInfeasible;
        }
        std::printf("config %s is valid\n", check_path.c_str());
        return kExitOk;
    }
    const std::string text = grind::constants_to_json(grind::ProcessConstants{});
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(out_path, text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface-grinding parameter optimization with multi-objective scalarization "
                 "methods and TOPSIS method ranking"};
    app.set_version_flag("--version", grind::kVersion);
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "Process constants JSON (defaults built in)");
    app.add_option("--grid", g.opts.grid_resolution, "Grid points per axis")
        ->check(CLI::Range(2, 100000));
    app.add_option("--starts", g.opts.multistart_count, "Multistart refinement count")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--penalty", g.opts.penalty_coefficient, "Constraint penalty coefficient");
    app.add_option("--seed", g.opts.seed, "RNG seed for multistart jitter");
    app.add_option("--json", g.json_path, "Write machine-readable output to this JSON file");
    app.add_option("--csv", g.csv_dir, "Write CSV outputs (tables + figure series) to this dir");

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate the model at one decision vector");
    double vw = 0, vs = 0, aw = 0;
    evaluate->add_option("vw", vw, "workpiece speed, m/min")->required();
    evaluate->add_option("vs", vs, "wheel speed, m/min")->required();
    evaluate->add_option("aw", aw, "total thickness of cut, mm")->required();

    auto* ideal = app.add_subcommand("ideal", "Compute the ideal point (per-objective optima)");

    auto* solve = app.add_subcommand("solve", "Optimize one scalarization method");
    std::string method, solve_weights;
    solve->add_option("--method", method, "individual | lp-metric[:r] | wsm[:w1,w2,w3] | "
                                          "max-min | goal-attainment[:w] | goal-programming[:w]")
        ->required();
    solve->add_option("--weights", solve_weights, "Objective weights w1,w2,w3");

    auto* compare = app.add_subcommand("compare", "Run every method and rank them");
    std::vector<std::string> methods_arg;
    std::string topsis_weights_arg;
    bool renormalize = false;
    compare->add_option("--methods", methods_arg, "Methods to run (default: all six)");
    compare->add_option("--topsis-weights", topsis_weights_arg, "Criteria weights w1,w2,w3,w4");
    compare->add_flag("--renormalize-weights", renormalize, "Scale criteria weights to sum 1");

    auto* topsis = app.add_subcommand("topsis", "Rank alternatives from a decision matrix");
    std::string matrix_path, topsis_weights2;
    bool renormalize2 = false;
    topsis->add_option("--matrix", matrix_path, "Matrix CSV or comparison-report JSON")
        ->required();
    topsis->add_option("--weights", topsis_weights2, "Criteria weights w1,...,wn");
    topsis->add_flag("--renormalize-weights", renormalize2, "Scale criteria weights to sum 1");

    auto* config = app.add_subcommand("config", "Emit or check a constants config file");
    std::string out_path, check_path;
    config->add_option("--out", out_path, "Write the default config here (default: stdout)");
    config->add_option("--check", check_path, "Validate this config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*evaluate) return cmd_evaluate(g, vw, vs, aw);
        if (*ideal) return cmd_ideal(g);
        if (*solve) return cmd_solve(g, method, solve_weights);
        if (*compare) return cmd_compare(g, methods_arg, topsis_weights_arg, renormalize);
        if (*topsis) return cmd_topsis(g, matrix_path, topsis_weights2, renormalize2);
        if (*config) return cmd_config(out_path, check_path);
    } catch (const grind::InfeasibleProblem& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
