#pragma once

#include <array>
#include <string>

#include "grind/process_model.hpp"

namespace grind {

/// Per-objective optima over the feasible set, with their minimizers.
struct IdealPoint {
    double ra_star = 0.0;
    double t_star = 0.0;
    double ct_star = 0.0;
    DecisionVector argmin_ra{};
    DecisionVector argmin_t{};
    DecisionVector argmin_ct{};

    std::array<double, 3> as_array() const { return {ra_star, t_star, ct_star}; }
};

enum class MethodKind { Individual, LpMetric, WSM, MaxMin, GoalAttainment, GoalProgramming };

enum class Direction { Minimize, Maximize };

/// A scalarization method with its parameters. WSM and GoalProgramming come
/// in two flavors: the raw form (weighted sum / weighted absolute deviations
/// of the objectives as-is) and an ideal-normalized form that divides each
/// objective or deviation by its ideal value. Raw is the default; the
/// normalized variants parse as "wsm-ideal" / "goal-programming-ideal".
struct MethodSpec {
    MethodKind kind = MethodKind::WSM;
    double lp_exponent = 2.0;  // LpMetric only, >= 1
    std::array<double, 3> weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    bool ideal_normalized = false;  // WSM / GoalProgramming only

    /// Parses "individual", "lp-metric[:r]", "wsm[:w1,w2,w3]", "max-min",
    /// "goal-attainment[:w1,w2,w3]", "goal-programming[:w1,w2,w3]", plus the
    /// "-ideal" variants of wsm and goal-programming. Weights are validated
    /// positive and normalized to sum 1.
    static MethodSpec parse(const std::string& text);

    static MethodSpec individual();
    static MethodSpec lp_metric(double r = 2.0);
    static MethodSpec wsm(const std::array<double, 3>& w = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                          bool ideal_normalized = false);
    static MethodSpec max_min();
    static MethodSpec goal_attainment(
        const std::array<double, 3>& w = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    static MethodSpec goal_programming(
        const std::array<double, 3>& w = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
        bool ideal_normalized = false);

    /// Human-readable name, e.g. "Goal programming".
    std::string display_name() const;
    /// Round-trips through parse(), e.g. "goal-programming".
    std::string cli_name() const;
};

/// ( sum_i ((f_i - f_i*)/f_i*)^r )^(1/r); deviations below zero (solver
/// noise) are clamped to 0 before exponentiation.
double lp_metric_value(const ObjectiveTriple& f, const IdealPoint& fstar, double r);

/// sum_i w_i * f_i / f_i* (ideal-normalized weighted sum, minimized).
double wsm_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                 const std::array<double, 3>& w);

/// sum_i w_i * f_i (raw weighted sum, minimized).
double wsm_raw_value(const ObjectiveTriple& f, const std::array<double, 3>& w);

/// min_i f_i*/f_i, maximized by the solver.
double maxmin_value(const ObjectiveTriple& f, const IdealPoint& fstar);

/// Z = max_i (f_i - f_i*)/w_i, minimized.
double goal_attainment_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                             const std::array<double, 3>& w);

/// sum_i a_i * (d_i+ + d_i-)/f_i* with d+ = max(f-f*,0), d- = max(f*-f,0).
double goal_programming_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                              const std::array<double, 3>& a);

/// sum_i a_i * (d_i+ + d_i-) (raw deviations, minimized).
double goal_programming_raw_value(const ObjectiveTriple& f, const IdealPoint& fstar,
                                  const std::array<double, 3>& a);

struct ScalarizedValue {
    double value = 0.0;
    Direction direction = Direction::Minimize;
};

/// Dispatch over the method kinds. Individual is rejected (it is a family of
/// per-objective solves, not a scalar function); use the ideal-point workflow.
ScalarizedValue scalarize(const MethodSpec& m, const ObjectiveTriple& f, const IdealPoint& fstar);

}  // namespace grind
