#include "grind/process_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace grind {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_components(const DecisionVector& dv) {
    if (!(dv.vw > 0.0) || !(dv.vs > 0.0) || !(dv.aw > 0.0)) {
        std::ostringstream os;
        os << "decision vector components must be positive, got (vw=" << dv.vw
           << ", vs=" << dv.vs << ", aw=" << dv.aw << ")";
        throw std::domain_error(os.str());
    }
}

}  // namespace

double ProcessConstants::resolve_ap(double aw) const {
    if (ap_mode.kind == ApMode::Kind::Fixed) return ap_mode.value;
    return aw / np;
}

std::vector<std::string> ProcessConstants::validate() const {
    std::vector<std::string> bad;
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0)) bad.push_back(std::string(name) + ": must be > 0");
    };
    auto count = [&](double v, const char* name) {
        if (!(v >= 1.0)) bad.push_back(std::string(name) + ": must be >= 1");
    };
    positive(mc, "mc");
    count(p, "p");
    positive(lw, "lw");
    positive(le, "le");
    positive(bw, "bw");
    positive(be, "be");
    positive(fb, "fb");
    positive(g_ratio, "g_ratio");
    positive(de, "de");
    positive(bs, "bs");
    positive(sd, "sd");
    positive(vr, "vr");
    positive(ti, "ti");
    positive(tch, "tch");
    count(nd, "nd");
    count(nt, "nt");
    count(ntd, "ntd");
    count(np, "np");
    positive(cd, "cd");
    positive(cs, "cs");
    count(sp, "sp");
    positive(doc, "doc");
    positive(lead, "lead");
    positive(ka, "ka");
    positive(vol, "vol");
    positive(dg, "dg");
    positive(rc, "rc");
    positive(ta, "ta");
    positive(te, "te");
    if (!(vw_min > 0.0)) bad.push_back("vw_min: must be > 0");
    if (!(vs_min > 0.0)) bad.push_back("vs_min: must be > 0");
    if (!(aw_min > 0.0)) bad.push_back("aw_min: must be > 0");
    if (!(vw_min < vw_max)) bad.push_back("vw_min/vw_max: lower bound must be below upper bound");
    if (!(vs_min < vs_max)) bad.push_back("vs_min/vs_max: lower bound must be below upper bound");
    if (!(aw_min < aw_max)) bad.push_back("aw_min/aw_max: lower bound must be below upper bound");
    if (ap_mode.kind == ApMode::Kind::Fixed && !(ap_mode.value > 0.0))
        bad.push_back("ap_mode: fixed a_p must be > 0");
    return bad;
}

void ProcessConstants::require_valid() const {
    auto bad = validate();
    if (bad.empty()) return;
    std::ostringstream os;
    os << "invalid process constants:";
    for (const auto& b : bad) os << "\n  " << b;
    throw std::invalid_argument(os.str());
}

namespace {

using nlohmann::json;

// Field table so the JSON reader/writer and the schema stay in one place.
struct FieldDef {
    const char* name;
    double ProcessConstants::* member;
};

constexpr FieldDef kFields[] = {
    {"mc", &ProcessConstants::mc},         {"p", &ProcessConstants::p},
    {"lw", &ProcessConstants::lw},         {"le", &ProcessConstants::le},
    {"bw", &ProcessConstants::bw},         {"be", &ProcessConstants::be},
    {"fb", &ProcessConstants::fb},         {"g_ratio", &ProcessConstants::g_ratio},
    {"de", &ProcessConstants::de},         {"bs", &ProcessConstants::bs},
    {"sd", &ProcessConstants::sd},         {"vr", &ProcessConstants::vr},
    {"ti", &ProcessConstants::ti},         {"tch", &ProcessConstants::tch},
    {"nd", &ProcessConstants::nd},         {"nt", &ProcessConstants::nt},
    {"ntd", &ProcessConstants::ntd},       {"np", &ProcessConstants::np},
    {"cd", &ProcessConstants::cd},         {"cs", &ProcessConstants::cs},
    {"sp", &ProcessConstants::sp},         {"doc", &ProcessConstants::doc},
    {"lead", &ProcessConstants::lead},     {"ka", &ProcessConstants::ka},
    {"vol", &ProcessConstants::vol},       {"dg", &ProcessConstants::dg},
    {"rc", &ProcessConstants::rc},         {"ta", &ProcessConstants::ta},
    {"te", &ProcessConstants::te},         {"vw_min", &ProcessConstants::vw_min},
    {"vw_max", &ProcessConstants::vw_max}, {"vs_min", &ProcessConstants::vs_min},
    {"vs_max", &ProcessConstants::vs_max}, {"aw_min", &ProcessConstants::aw_min},
    {"aw_max", &ProcessConstants::aw_max},
};

}  // namespace

std::string constants_to_json(const ProcessConstants& c) {
    json j;
    for (const auto& f : kFields) j[f.name] = c.*(f.member);
    if (c.ap_mode.kind == ApMode::Kind::Derived)
        j["ap_mode"] = "derived";
    else
        j["ap_mode"] = c.ap_mode.value;
    return j.dump(2) + "\n";
}

ProcessConstants constants_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config JSON must be an object");

    ProcessConstants c;
    for (const auto& f : kFields) {
        auto it = j.find(f.name);
        if (it == j.end())
            throw std::invalid_argument(std::string("config missing field: ") + f.name);
        if (!it->is_number())
            throw std::invalid_argument(std::string("config field must be a number: ") + f.name);
        c.*(f.member) = it->get<double>();
    }
    auto ap = j.find("ap_mode");
    if (ap == j.end()) throw std::invalid_argument("config missing field: ap_mode");
    if (ap->is_string()) {
        if (ap->get<std::string>() != "derived")
            throw std::invalid_argument("ap_mode: expected \"derived\" or a number");
        c.ap_mode = ApMode::derived();
    } else if (ap->is_number()) {
        c.ap_mode = ApMode::fixed(ap->get<double>());
    } else {
        throw std::invalid_argument("ap_mode: expected \"derived\" or a number");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = it.key() == "ap_mode";
        for (const auto& f : kFields) known = known || it.key() == f.name;
        if (!known) throw std::invalid_argument("config has unknown field: " + it.key());
    }
    return c;
}

double feasibility_tolerance(const ProcessConstants& c) {
    // scale with the threshold, but keep the slack finite for G = inf
    const double scale = std::isfinite(c.g_ratio) ? std::max(1.0, c.g_ratio) : 1.0;
    return 1e-9 * scale;
}

bool in_bounds(const DecisionVector& dv, const ProcessConstants& c) {
    return dv.vw >= c.vw_min && dv.vw <= c.vw_max && dv.vs >= c.vs_min && dv.vs <= c.vs_max &&
           dv.aw >= c.aw_min && dv.aw <= c.aw_max;
}

ModelEvaluator::ModelEvaluator(const ProcessConstants& c) : c_(c) {
    const double dressing_num = 2.0 * c_.doc / (3.0 * c_.lead) + 1.0;
    const double wrp_den = std::pow(c_.de, 43.0 / 304.0) * std::pow(c_.vol, 0.47) *
                           std::pow(c_.dg, 5.0 / 38.0) * std::pow(c_.rc, 27.0 / 19.0);
    wrp_const_ = 94.4 * dressing_num * std::pow(c_.lead, 11.0 / 19.0) / wrp_den;

    const double abrasive = std::pow(c_.dg, 5.0 / 38.0) * std::pow(c_.rc, 27.0 / 19.0) /
                            (std::pow(c_.de, 1.2 / c_.vol - 43.0 / 304.0) * std::pow(c_.vol, 0.38));
    wwp_const_ = c_.ka * abrasive * (1.0 + c_.doc / c_.lead) * std::pow(c_.lead, 27.0 / 19.0) /
                 (1.0 + 2.0 * c_.doc / (3.0 * c_.lead));

    feas_tol_ = grind::feasibility_tolerance(c_);
}

double ModelEvaluator::surface_roughness(const DecisionVector& dv) const {
    require_positive_components(dv);
    return 4.456 * std::pow(dv.vw, 0.229) * std::pow(dv.aw, -1.649) * std::pow(dv.vs, -0.964);
}

double ModelEvaluator::grinding_time(const DecisionVector& dv) const {
    if (!(dv.vw > 0.0)) throw std::domain_error("grinding_time: vw must be > 0");
    return c_.np * c_.lw / dv.vw + c_.tch + c_.ti + c_.le / dv.vw + c_.le / dv.vw;
}

CostTerms ModelEvaluator::production_cost_terms(const DecisionVector& dv) const {
    require_positive_components(dv);
    const double ap = c_.resolve_ap(dv.aw);
    if (!(ap > 0.0)) throw std::domain_error("production_cost: resolved a_p must be > 0");

    CostTerms t;
    const double rate = c_.mc / (60.0 * c_.p);
    t.machining = rate * ((c_.lw + c_.le) / (1000.0 * dv.vw)) * ((c_.bw + c_.be) / c_.fb) *
                  (dv.aw / ap + c_.sp +
                   dv.aw * c_.bw * c_.lw / (kPi * c_.de * c_.bs * ap * c_.g_ratio));
    t.idle = rate * (c_.sd / c_.vr + c_.ti);
    t.adjustment = (c_.mc / 60.0) * (c_.tch / c_.nt);
    t.dressing_time = rate * (1.0 / c_.nd) * (kPi * c_.de * c_.bs / (1000.0 * c_.lead * dv.vs));
    t.wheel_wear = c_.cs * (dv.aw * c_.bw * c_.lw / (c_.p * c_.g_ratio) +
                            kPi * c_.doc * c_.bs * c_.de / (c_.p * c_.nd));
    t.dressing_tool = c_.cd / (c_.p * c_.ntd);
    return t;
}

double ModelEvaluator::production_cost(const DecisionVector& dv) const {
    return production_cost_terms(dv).total();
}

double ModelEvaluator::wrp(const DecisionVector& dv) const {
    require_positive_components(dv);
    return wrp_const_ * std::pow(dv.vw / dv.vs, 3.0 / 19.0) * dv.vs;
}

double ModelEvaluator::wwp(const DecisionVector& dv) const {
    require_positive_components(dv);
    const double ap = c_.resolve_ap(dv.aw);
    if (!(ap > 0.0)) throw std::domain_error("wwp: resolved a_p must be > 0");
    return wwp_const_ * ap * std::pow(dv.vs / dv.vw, 3.0 / 19.0) * dv.vw;
}

WrpFactors ModelEvaluator::wrp_factors(const DecisionVector& dv) const {
    require_positive_components(dv);
    WrpFactors f;
    f.dressing_term = 2.0 * c_.doc / (3.0 * c_.lead) + 1.0;
    f.lead_pow = std::pow(c_.lead, 11.0 / 19.0);
    f.speed_ratio_pow = std::pow(dv.vw / dv.vs, 3.0 / 19.0);
    f.denominator = std::pow(c_.de, 43.0 / 304.0) * std::pow(c_.vol, 0.47) *
                    std::pow(c_.dg, 5.0 / 38.0) * std::pow(c_.rc, 27.0 / 19.0);
    f.numerator = 94.4 * f.dressing_term * f.lead_pow * f.speed_ratio_pow * dv.vs;
    f.value = wrp(dv);
    return f;
}

WwpFactors ModelEvaluator::wwp_factors(const DecisionVector& dv) const {
    require_positive_components(dv);
    const double ap = c_.resolve_ap(dv.aw);
    WwpFactors f;
    f.abrasive_num = c_.ka * ap * std::pow(c_.dg, 5.0 / 38.0) * std::pow(c_.rc, 27.0 / 19.0);
    f.abrasive_den = std::pow(c_.de, 1.2 / c_.vol - 43.0 / 304.0) * std::pow(c_.vol, 0.38);
    f.dressing_num = 1.0 + c_.doc / c_.lead;
    f.dressing_den = 1.0 + 2.0 * c_.doc / (3.0 * c_.lead);
    f.lead_pow = std::pow(c_.lead, 27.0 / 19.0);
    f.speed_ratio_pow = std::pow(dv.vs / dv.vw, 3.0 / 19.0);
    f.value = wwp(dv);
    return f;
}

double ModelEvaluator::wear_constraint_residual(const DecisionVector& dv) const {
    const double removal = wrp(dv);
    const double wear = wwp(dv);
    if (!(wear > 0.0)) throw std::domain_error("wear_constraint_residual: WWP must be > 0");
    return removal / wear - c_.g_ratio;
}

ObjectiveTriple ModelEvaluator::objectives(const DecisionVector& dv) const {
    return {surface_roughness(dv), grinding_time(dv), production_cost(dv)};
}

Evaluation ModelEvaluator::evaluate(const DecisionVector& dv) const {
    Evaluation e;
    e.objectives = objectives(dv);
    const double wear = wwp(dv);
    e.wear_ratio = wrp(dv) / wear;
    e.wear_residual = e.wear_ratio - c_.g_ratio;
    e.in_bounds = grind::in_bounds(dv, c_);
    e.feasible = e.in_bounds && e.wear_residual >= -feas_tol_;
    return e;
}

double surface_roughness(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).surface_roughness(dv);
}

double grinding_time(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).grinding_time(dv);
}

CostTerms production_cost_terms(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).production_cost_terms(dv);
}

double production_cost(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).production_cost(dv);
}

double workpiece_removal_parameter(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).wrp(dv);
}

double wheel_wear_parameter(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).wwp(dv);
}

double wear_constraint_residual(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).wear_constraint_residual(dv);
}

Evaluation evaluate(const DecisionVector& dv, const ProcessConstants& c) {
    return ModelEvaluator(c).evaluate(dv);
}

}  // namespace grind
