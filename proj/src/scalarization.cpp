#include "grind/scalarization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace grind {

namespace {

void require_positive_ideal(const IdealPoint& fstar) {
    for (double v : fstar.as_array())
        if (!(v > 0.0))
            throw std::domain_error("scalarization: ideal point components must be > 0");
}

std::array<double, 3> normalized_weights(const std::array<double, 3>& w) {
    double sum = 0.0;
    for (double x : w) {
        if (!(x > 0.0)) throw std::invalid_argument("weights must be positive");
        sum += x;
    }
    return {w[0] / sum, w[1] / sum, w[2] / sum};
}

std::array<double, 3> parse_weight_list(const std::string& text) {
    std::array<double, 3> w{};
    std::istringstream is(text);
    std::string tok;
    int i = 0;
    while (std::getline(is, tok, ',')) {
        if (i >= 3) throw std::invalid_argument("expected exactly 3 weights, got more: " + text);
        try {
            std::size_t pos = 0;
            w[i] = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad weight '" + tok + "' in: " + text);
        }
        ++i;
    }
    if (i != 3) throw std::invalid_argument("expected exactly 3 weights in: " + text);
    return w;
}

}  // namespace

MethodSpec MethodSpec::individual() { return {MethodKind::Individual}; }

MethodSpec MethodSpec::lp_metric(double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("lp-metric exponent must be >= 1");
    MethodSpec m{MethodKind::LpMetric};
    m.lp_exponent = r;
    return m;
}

MethodSpec MethodSpec::wsm(const std::array<double, 3>& w, bool ideal_normalized) {
    MethodSpec m{MethodKind::WSM};
    m.weights = normalized_weights(w);
    m.ideal_normalized = ideal_normalized;
    return m;
}

MethodSpec MethodSpec::max_min() { return {MethodKind::MaxMin}; }

MethodSpec MethodSpec::goal_attainment(const std::array<double, 3>& w) {
    MethodSpec m{MethodKind::GoalAttainment};
    m.weights = normalized_weights(w);
    return m;
}

MethodSpec MethodSpec::goal_programming(const std::array<double, 3>& w, bool ideal_normalized) {
    MethodSpec m{MethodKind::GoalProgramming};
    m.weights = normalized_weights(w);
    m.ideal_normalized = ideal_normalized;
    return m;
}

MethodSpec MethodSpec::parse(const std::string& text) {
    std::string name = text;
    std::string arg;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        arg = text.substr(colon + 1);
    }
    auto weights_or_default = [&]() {
        return arg.empty() ? std::array<double, 3>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}
                           : parse_weight_list(arg);
    };
    if (name == "individual") {
        if (!arg.empty()) throw std::invalid_argument("individual takes no arguments");
        return individual();
    }
    if (name == "lp-metric") {
        double r = 2.0;
        if (!arg.empty()) {
            try {
                std::size_t pos = 0;
                r = std::stod(arg, &pos);
                if (pos != arg.size()) throw std::invalid_argument(arg);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad lp-metric exponent: " + arg);
            }
        }
        return lp_metric(r);
    }
    if (name == "wsm") return wsm(weights_or_default(), false);
    if (name == "wsm-ideal") return wsm(weights_or_default(), true);
    if (name == "max-min") {
        if (!arg.empty()) throw std::invalid_argument("max-min takes no arguments");
        return max_min();
    }
    if (name == "goal-attainment") return goal_attainment(weights_or_default());
    if (name == "goal-programming") return goal_programming(weights_or_default(), false);
    if (name == "goal-programming-ideal") return goal_programming(weights_or_default(), true);
    throw std::invalid_argument(
        "unknown method '" + name +
        "' (expected individual, lp-metric[:r], wsm[:w1,w2,w3], wsm-ideal[:w1,w2,w3], max-min, "
        "goal-attainment[:w1,w2,w3], goal-programming[:w1,w2,w3], "
        "goal-programming-ideal[:w1,w2,w3])");
}

std::string MethodSpec::display_name() const {
    switch (kind) {
        case MethodKind::Individual: return "Individual optimization";
        case MethodKind::LpMetric: return "Lp-Metric";
        case MethodKind::WSM: return ideal_normalized ? "WSM (ideal-normalized)" : "WSM";
        case MethodKind::MaxMin: return "Max-Min";
        case MethodKind::GoalAttainment: return "Goal attainment";
        case MethodKind::GoalProgramming:
            return ideal_normalized ? "Goal programming (ideal-normalized)" : "Goal programming";
    }
    return "?";
}

std::string MethodSpec::cli_name() const {
    switch (kind) {
        case MethodKind::Individual: return "individual";
        case MethodKind::LpMetric: return "lp-metric";
        case MethodKind::WSM: return ideal_normalized ? "wsm-ideal" : "wsm";
        case MethodKind::MaxMin: return "max-min";
        case MethodKind::GoalAttainment: return "goal-attainment";
        case MethodKind::GoalProgramming:
            return ideal_normalized ? "goal-programming-ideal" : "goal-programming";
    }
    return "?";
}

double lp_metric_value(const ObjectiveTriple& f, const IdealPoint& fstar, double r) {
    require_positive_ideal(fstar);
    if (!(r >= 1.0)) throw std::invalid_argument("lp_metric_value: r must be >= 1");
    const auto fv = f.as_array();
    const auto sv = fstar.as_array();
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double dev = std::max(0.0, (fv[i] - sv[i]) / sv[i]);
        sum += std::pow(dev, r);
    }
    return std::pow(sum, 1.0 / r);
}

double wsm_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                 const std::array<double, 3>& w) {
    require_positive_ideal(fstar);
    const auto fv = f.as_array();
    const auto sv = fstar.as_array();
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += w[i] * fv[i] / sv[i];
    return sum;
}

double wsm_raw_value(const ObjectiveTriple& f, const std::array<double, 3>& w) {
    const auto fv = f.as_array();
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += w[i] * fv[i];
    return sum;
}

double maxmin_value(const ObjectiveTriple& f, const IdealPoint& fstar) {
    require_positive_ideal(fstar);
    const auto fv = f.as_array();
    const auto sv = fstar.as_array();
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        if (!(fv[i] > 0.0)) throw std::domain_error("maxmin_value: objectives must be > 0");
        worst = std::min(worst, sv[i] / fv[i]);
    }
    return worst;
}

double goal_attainment_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                             const std::array<double, 3>& w) {
    require_positive_ideal(fstar);
    const auto fv = f.as_array();
    const auto sv = fstar.as_array();
    double z = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        if (!(w[i] > 0.0)) throw std::domain_error("goal_attainment_value: weights must be > 0");
        z = std::max(z, (fv[i] - sv[i]) / w[i]);
    }
    return z;
}

double goal_programming_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                              const std::array<double, 3>& a) {
    require_positive_ideal(fstar);
    const auto fv = f.as_array();
    const auto sv = fstar.as_array();
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d_plus = std::max(fv[i] - sv[i], 0.0);
        const double d_minus = std::max(sv[i] - fv[i], 0.0);
        sum += a[i] * (d_plus + d_minus) / sv[i];
    }
    return sum;
}

double goal_programming_raw_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                                  const std::array<double, 3>& a) {
    const auto fv = f.as_array();
    const auto sv = fstar.as_array();
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d_plus = std::max(fv[i] - sv[i], 0.0);
        const double d_minus = std::max(sv[i] - fv[i], 0.0);
        sum += a[i] * (d_plus + d_minus);
    }
    return sum;
}

ScalarizedValue scalarize(const MethodSpec& m, const ObjectiveTriple& f,
                          const IdealPoint& fstar) {
    switch (m.kind) {
        case MethodKind::Individual:
            throw std::invalid_argument(
                "scalarize: Individual optimization is not a scalar function; use the "
                "ideal-point workflow");
        case MethodKind::LpMetric:
            return {lp_metric_value(f, fstar, m.lp_exponent), Direction::Minimize};
        case MethodKind::WSM:
            return {m.ideal_normalized ? wsm_value(f, fstar, m.weights)
                                       : wsm_raw_value(f, m.weights),
                    Direction::Minimize};
        case MethodKind::MaxMin:
            return {maxmin_value(f, fstar), Direction::Maximize};
        case MethodKind::GoalAttainment:
            return {goal_attainment_value(f, fstar, m.weights), Direction::Minimize};
        case MethodKind::GoalProgramming:
            return {m.ideal_normalized ? goal_programming_value(f, fstar, m.weights)
                                       : goal_programming_raw_value(f, fstar, m.weights),
                    Direction::Minimize};
    }
    throw std::invalid_argument("scalarize: unknown method kind");
}

}  // namespace grind
