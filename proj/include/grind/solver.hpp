#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "grind/process_model.hpp"
#include "grind/scalarization.hpp"

namespace grind {

struct SolveOptions {
    int grid_resolution = 201;          // points per axis
    int multistart_count = 16;          // local refinements from jittered starts
    double penalty_coefficient = 1e6;   // quadratic exterior penalty weight
    double refine_tolerance = 1e-9;     // termination step size, relative to axis range
    std::uint64_t seed = 0;             // RNG seed for multistart jitter
    int max_iterations = 10000;         // per local search

    void require_valid() const;
};

struct SolveResult {
    DecisionVector dv{};
    ObjectiveTriple objectives{};
    double scalar_value = 0.0;
    Direction direction = Direction::Minimize;
    bool feasible = false;
    bool truncated = false;  // a local search hit max_iterations
    double wall_time_s = 0.0;
    std::int64_t evaluations = 0;
};

/// Thrown when no point satisfies the wear constraint; carries the node that
/// came closest so the caller can report how infeasible the problem is.
class InfeasibleProblem : public std::runtime_error {
public:
    InfeasibleProblem(const DecisionVector& least_violating, double violation);
    DecisionVector least_violating;
    double violation;  // max(0, G - WRP/WWP) at that node
};

/// A scalar objective over decision vectors, in minimization form.
using ScalarObjective = std::function<double(const DecisionVector&)>;

/// Minimization-form objective for a method (negated for max-direction
/// methods). Captures by value; safe to outlive its arguments.
ScalarObjective make_scalar_objective(const ModelEvaluator& model, const MethodSpec& m,
                                      const IdealPoint& fstar);

/// Evaluates the penalized objective at every node of the uniform grid over
/// the bounds box and returns the best wear-feasible node; ties break to the
/// lexicographically smallest (vw, vs, aw). Throws InfeasibleProblem when no
/// node is feasible.
SolveResult grid_search(const ScalarObjective& objective, const ProcessConstants& c,
                        const SolveOptions& opts);

/// Derivative-free pattern descent from an in-bounds start: only function
/// evaluations, monotone non-increasing best value, candidates projected
/// onto the bounds. Stops when the step pattern collapses below
/// refine_tolerance or max_iterations is hit (then truncated is set).
SolveResult local_refine(const DecisionVector& start, const ScalarObjective& objective,
                         const ProcessConstants& c, const SolveOptions& opts);

/// Grid seed plus multistart local refinement; deterministic for fixed
/// options. scalar_value is reported in the method's own direction.
SolveResult solve(const MethodSpec& m, const ProcessConstants& c, const IdealPoint& fstar,
                  const SolveOptions& opts);

/// Three individual solves (minimize R_a, T, C_T separately subject to the
/// wear constraint and bounds).
IdealPoint ideal_point(const ProcessConstants& c, const SolveOptions& opts);

}  // namespace grind
