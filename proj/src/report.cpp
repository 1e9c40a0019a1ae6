#include "grind/report.hpp"

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace grind {

namespace {

using nlohmann::json;

std::string strf(const char* fmt, ...) {
    char buf[128];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, ap);
    va_end(ap);
    return buf;
}

json dv_to_json(const DecisionVector& dv) {
    return json{{"vw", dv.vw}, {"vs", dv.vs}, {"aw", dv.aw}};
}

DecisionVector dv_from_json(const json& j) {
    return {j.at("vw").get<double>(), j.at("vs").get<double>(), j.at("aw").get<double>()};
}

json objectives_to_json(const ObjectiveTriple& f) {
    return json{{"ra", f.ra}, {"t", f.t}, {"ct", f.ct}};
}

ObjectiveTriple objectives_from_json(const json& j) {
    return {j.at("ra").get<double>(), j.at("t").get<double>(), j.at("ct").get<double>()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace

CriteriaWeights default_criteria_weights() { return {{0.266, 0.266, 0.266, 0.20}}; }

std::vector<MethodSpec> default_method_set() {
    return {MethodSpec::individual(),      MethodSpec::lp_metric(),
            MethodSpec::max_min(),         MethodSpec::goal_attainment(),
            MethodSpec::wsm(),             MethodSpec::goal_programming()};
}

DecisionMatrix matrix_from_rows(const std::vector<MethodRow>& rows) {
    DecisionMatrix m;
    m.criteria = {{"R_a", CriterionDirection::Cost},
                  {"T", CriterionDirection::Cost},
                  {"C_T", CriterionDirection::Cost},
                  {"CPU-Time", CriterionDirection::Cost}};
    for (const auto& row : rows) {
        // Individual optimization has no single solution; infeasible rows
        // carry no meaningful timings or objective values.
        if (!row.dv.has_value() || !row.feasible) continue;
        m.alternatives.push_back(row.method);
        m.values.push_back(
            {row.objectives.ra, row.objectives.t, row.objectives.ct, row.wall_time_s});
    }
    return m;
}

RunReport run_experiment(const ProcessConstants& c, const std::vector<MethodSpec>& methods,
                         const SolveOptions& opts, const CriteriaWeights& weights,
                         bool renormalize_weights) {
    c.require_valid();
    opts.require_valid();

    RunReport report;
    report.seed = opts.seed;
    report.options = opts;
    report.constants = c;
    const ModelEvaluator model(c);

    // A wholly infeasible wear threshold leaves no ideal point; anchor the
    // report at the least-violating node and flag every row.
    bool have_ideal = true;
    DecisionVector least_bad{};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        report.ideal = ideal_point(c, opts);
    } catch (const InfeasibleProblem& e) {
        have_ideal = false;
        least_bad = e.least_violating;
        const ObjectiveTriple f = model.objectives(least_bad);
        report.ideal.ra_star = f.ra;
        report.ideal.t_star = f.t;
        report.ideal.ct_star = f.ct;
        report.ideal.argmin_ra = report.ideal.argmin_t = report.ideal.argmin_ct = least_bad;
    }
    const double ideal_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (const auto& m : methods) {
        MethodRow row;
        row.method = m.display_name();
        row.cli_method = m.cli_name();
        if (m.kind == MethodKind::Individual) {
            row.objectives = {report.ideal.ra_star, report.ideal.t_star, report.ideal.ct_star};
            row.feasible = have_ideal;
            row.wall_time_s = ideal_seconds;
            report.rows.push_back(std::move(row));
            continue;
        }
        if (!have_ideal) {
            row.dv = least_bad;
            row.objectives = model.objectives(least_bad);
            row.feasible = false;
            report.rows.push_back(std::move(row));
            continue;
        }
        try {
            const SolveResult r = solve(m, c, report.ideal, opts);
            row.dv = r.dv;
            row.objectives = r.objectives;
            row.scalar_value = r.scalar_value;
            row.direction = r.direction;
            row.feasible = r.feasible;
            row.truncated = r.truncated;
            row.wall_time_s = r.wall_time_s;
            row.evaluations = r.evaluations;
        } catch (const InfeasibleProblem& e) {
            row.dv = e.least_violating;
            row.objectives = model.objectives(e.least_violating);
            row.feasible = false;
        }
        report.rows.push_back(std::move(row));
    }

    DecisionMatrix matrix = matrix_from_rows(report.rows);
    if (matrix.rows() >= 2) {
        TopsisBlock block;
        block.matrix = std::move(matrix);
        block.weights = renormalize_weights ? weights.renormalized() : weights;
        block.renormalized = renormalize_weights;
        block.result = run_topsis(block.matrix, block.weights);
        report.topsis = std::move(block);
    }
    return report;
}

std::string report_to_json(const RunReport& r) {
    json j;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["options"] = {{"grid_resolution", r.options.grid_resolution},
                    {"multistart_count", r.options.multistart_count},
                    {"penalty_coefficient", r.options.penalty_coefficient},
                    {"refine_tolerance", r.options.refine_tolerance},
                    {"seed", r.options.seed},
                    {"max_iterations", r.options.max_iterations}};
    j["constants"] = json::parse(constants_to_json(r.constants));
    j["ideal"] = {{"ra_star", r.ideal.ra_star},
                  {"t_star", r.ideal.t_star},
                  {"ct_star", r.ideal.ct_star},
                  {"argmin_ra", dv_to_json(r.ideal.argmin_ra)},
                  {"argmin_t", dv_to_json(r.ideal.argmin_t)},
                  {"argmin_ct", dv_to_json(r.ideal.argmin_ct)}};
    j["rows"] = json::array();
    for (const auto& row : r.rows) {
        json jr;
        jr["method"] = row.method;
        jr["cli_method"] = row.cli_method;
        jr["dv"] = row.dv ? dv_to_json(*row.dv) : json(nullptr);
        jr["objectives"] = objectives_to_json(row.objectives);
        jr["scalar_value"] = row.scalar_value ? json(*row.scalar_value) : json(nullptr);
        jr["direction"] = row.direction
                              ? json(*row.direction == Direction::Maximize ? "max" : "min")
                              : json(nullptr);
        jr["feasible"] = row.feasible;
        jr["truncated"] = row.truncated;
        jr["wall_time_s"] = row.wall_time_s;
        jr["evaluations"] = row.evaluations;
        j["rows"].push_back(std::move(jr));
    }
    if (r.topsis) {
        json jt;
        jt["alternatives"] = r.topsis->matrix.alternatives;
        jt["criteria"] = json::array();
        for (const auto& c : r.topsis->matrix.criteria)
            jt["criteria"].push_back(
                {{"name", c.name},
                 {"direction", c.direction == CriterionDirection::Benefit ? "benefit" : "cost"}});
        jt["matrix"] = r.topsis->matrix.values;
        jt["weights"] = r.topsis->weights.w;
        jt["renormalized"] = r.topsis->renormalized;
        jt["similarity"] = r.topsis->result.similarity;
        jt["d_plus"] = r.topsis->result.d_plus;
        jt["d_minus"] = r.topsis->result.d_minus;
        jt["rank"] = r.topsis->result.rank;
        jt["order"] = r.topsis->result.order;
        j["topsis"] = std::move(jt);
    } else {
        j["topsis"] = nullptr;
    }
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report JSON parse error: ") + e.what());
    }
    RunReport r;
    try {
        r.version = j.at("version").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        const json& jo = j.at("options");
        r.options.grid_resolution = jo.at("grid_resolution").get<int>();
        r.options.multistart_count = jo.at("multistart_count").get<int>();
        r.options.penalty_coefficient = jo.at("penalty_coefficient").get<double>();
        r.options.refine_tolerance = jo.at("refine_tolerance").get<double>();
        r.options.seed = jo.at("seed").get<std::uint64_t>();
        r.options.max_iterations = jo.at("max_iterations").get<int>();
        r.constants = constants_from_json(j.at("constants").dump());
        const json& ji = j.at("ideal");
        r.ideal.ra_star = ji.at("ra_star").get<double>();
        r.ideal.t_star = ji.at("t_star").get<double>();
        r.ideal.ct_star = ji.at("ct_star").get<double>();
        r.ideal.argmin_ra = dv_from_json(ji.at("argmin_ra"));
        r.ideal.argmin_t = dv_from_json(ji.at("argmin_t"));
        r.ideal.argmin_ct = dv_from_json(ji.at("argmin_ct"));
        for (const json& jr : j.at("rows")) {
            MethodRow row;
            row.method = jr.at("method").get<std::string>();
            row.cli_method = jr.at("cli_method").get<std::string>();
            if (!jr.at("dv").is_null()) row.dv = dv_from_json(jr.at("dv"));
            row.objectives = objectives_from_json(jr.at("objectives"));
            if (!jr.at("scalar_value").is_null())
                row.scalar_value = jr.at("scalar_value").get<double>();
            if (!jr.at("direction").is_null())
                row.direction = jr.at("direction").get<std::string>() == "max"
                                    ? Direction::Maximize
                                    : Direction::Minimize;
            row.feasible = jr.at("feasible").get<bool>();
            row.truncated = jr.at("truncated").get<bool>();
            row.wall_time_s = jr.at("wall_time_s").get<double>();
            row.evaluations = jr.at("evaluations").get<std::int64_t>();
            r.rows.push_back(std::move(row));
        }
        if (!j.at("topsis").is_null()) {
            const json& jt = j.at("topsis");
            TopsisBlock block;
            block.matrix.alternatives = jt.at("alternatives").get<std::vector<std::string>>();
            for (const json& jc : jt.at("criteria"))
                block.matrix.criteria.push_back(
                    {jc.at("name").get<std::string>(),
                     jc.at("direction").get<std::string>() == "benefit"
                         ? CriterionDirection::Benefit
                         : CriterionDirection::Cost});
            block.matrix.values = jt.at("matrix").get<std::vector<std::vector<double>>>();
            block.weights.w = jt.at("weights").get<std::vector<double>>();
            block.renormalized = jt.at("renormalized").get<bool>();
            block.result.similarity = jt.at("similarity").get<std::vector<double>>();
            block.result.d_plus = jt.at("d_plus").get<std::vector<double>>();
            block.result.d_minus = jt.at("d_minus").get<std::vector<double>>();
            block.result.rank = jt.at("rank").get<std::vector<int>>();
            block.result.order = jt.at("order").get<std::vector<std::size_t>>();
            r.topsis = std::move(block);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed report JSON: ") + e.what());
    }
    return r;
}

DecisionMatrix load_decision_matrix(const std::string& text) {
    // A report is a JSON object; a matrix file is CSV.
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const RunReport r = report_from_json(text);
        if (r.topsis) return r.topsis->matrix;
        return matrix_from_rows(r.rows);
    }
    return DecisionMatrix::from_csv(text);
}

std::string format_comparison_table(const RunReport& r) {
    std::ostringstream os;
    os << strf("%-28s %9s %9s %8s %8s %7s %8s %9s\n", "Method", "V_w", "V_s", "a_w", "R_a", "T",
               "C_T", "CPU-Time");
    for (const auto& row : r.rows) {
        std::string vw = "-----", vs = "-----", aw = "-----", cpu = "-----";
        if (row.dv) {
            vw = strf("%.2f", row.dv->vw);
            vs = strf("%.0f", row.dv->vs);
            aw = strf("%.3f", row.dv->aw);
            cpu = strf("%.3f", row.wall_time_s);
        }
        os << strf("%-28s %9s %9s %8s %8.3f %7.1f %8.3f %9s", row.method.c_str(), vw.c_str(),
                   vs.c_str(), aw.c_str(), row.objectives.ra, row.objectives.t, row.objectives.ct,
                   cpu.c_str());
        if (!row.feasible) os << "  [infeasible]";
        if (row.truncated) os << "  [truncated]";
        os << '\n';
    }
    return os.str();
}

std::string format_topsis_table(const std::vector<std::string>& alternatives,
                                const TopsisResult& t) {
    std::ostringstream os;
    os << strf("%-28s %10s %10s %10s %6s\n", "Alternative", "S+", "d+", "d-", "rank");
    for (std::size_t i = 0; i < alternatives.size(); ++i)
        os << strf("%-28s %10.4f %10.6f %10.6f %6d\n", alternatives[i].c_str(), t.similarity[i],
                   t.d_plus[i], t.d_minus[i], t.rank[i]);
    os << "Ranking:";
    for (std::size_t pos = 0; pos < t.order.size(); ++pos)
        os << (pos == 0 ? " " : " > ") << alternatives[t.order[pos]];
    os << '\n';
    return os.str();
}

void write_report_csvs(const RunReport& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto path = [&](const char* name) {
        return (std::filesystem::path(dir) / name).string();
    };

    {
        std::ostringstream os;
        os.precision(17);
        os << "method,vw,vs,aw,ra,t,ct,cpu_time_s,feasible\n";
        for (const auto& row : r.rows) {
            os << row.method << ',';
            if (row.dv)
                os << row.dv->vw << ',' << row.dv->vs << ',' << row.dv->aw << ',';
            else
                os << ",,,";
            os << row.objectives.ra << ',' << row.objectives.t << ',' << row.objectives.ct << ',';
            if (row.dv)
                os << row.wall_time_s;
            os << ',' << (row.feasible ? "true" : "false") << '\n';
        }
        write_file(path("comparison.csv"), os.str());
    }

    struct Series {
        const char* file;
        const char* metric;
        double MethodRow::* wall;  // set for the cpu series
        double ObjectiveTriple::* objective;
    };
    const Series series[] = {
        {"fig1_surface_roughness.csv", "surface_roughness", nullptr, &ObjectiveTriple::ra},
        {"fig2_production_cost.csv", "production_cost", nullptr, &ObjectiveTriple::ct},
        {"fig3_grinding_time.csv", "grinding_time", nullptr, &ObjectiveTriple::t},
        {"fig4_cpu_time.csv", "cpu_time_s", &MethodRow::wall_time_s, nullptr},
    };
    for (const auto& s : series) {
        std::ostringstream os;
        os.precision(17);
        os << "method,metric,value\n";
        for (const auto& row : r.rows) {
            if (!row.dv) continue;
            const double v = s.objective ? row.objectives.*(s.objective) : row.*(s.wall);
            os << row.method << ',' << s.metric << ',' << v << '\n';
        }
        write_file(path(s.file), os.str());
    }

    if (r.topsis) {
        write_file(path("decision_matrix.csv"), r.topsis->matrix.to_csv());
        std::ostringstream os;
        os.precision(17);
        os << "alternative,similarity,d_plus,d_minus,rank\n";
        for (std::size_t i = 0; i < r.topsis->matrix.alternatives.size(); ++i)
            os << r.topsis->matrix.alternatives[i] << ',' << r.topsis->result.similarity[i] << ','
               << r.topsis->result.d_plus[i] << ',' << r.topsis->result.d_minus[i] << ','
               << r.topsis->result.rank[i] << '\n';
        write_file(path("topsis_result.csv"), os.str());
    }
}

}  // namespace grind
