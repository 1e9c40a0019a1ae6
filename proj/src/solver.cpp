#include "grind/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace grind {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Axis {
    double lo, hi;
    double at(int i, int n) const {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        return lo + (hi - lo) * t;
    }
    double clamp(double x) const { return std::min(hi, std::max(lo, x)); }
    double range() const { return hi - lo; }
};

struct Box {
    Axis vw, vs, aw;
    explicit Box(const ProcessConstants& c)
        : vw{c.vw_min, c.vw_max}, vs{c.vs_min, c.vs_max}, aw{c.aw_min, c.aw_max} {}
    DecisionVector clamp(const DecisionVector& dv) const {
        return {vw.clamp(dv.vw), vs.clamp(dv.vs), aw.clamp(dv.aw)};
    }
};

// Shared state for one optimization run: the penalized objective, the wear
// feasibility test, and the evaluation counter.
struct Problem {
    const ScalarObjective& objective;
    ModelEvaluator model;
    double penalty;
    double feas_tol;
    std::int64_t evaluations = 0;

    Problem(const ScalarObjective& fn, const ProcessConstants& c, const SolveOptions& opts)
        : objective(fn), model(c), penalty(opts.penalty_coefficient),
          feas_tol(feasibility_tolerance(c)) {}

    double violation(const DecisionVector& dv) const {
        return std::max(0.0, -model.wear_constraint_residual(dv));
    }
    bool feasible(const DecisionVector& dv) const {
        return model.wear_constraint_residual(dv) >= -feas_tol;
    }
    double penalized(const DecisionVector& dv) {
        ++evaluations;
        const double viol = violation(dv);
        return objective(dv) + penalty * viol * viol;
    }
};

bool better(double value, const DecisionVector& dv, double best_value,
            const DecisionVector& best_dv) {
    if (value < best_value) return true;
    return value == best_value && dv < best_dv;
}

SolveResult refine_impl(const DecisionVector& start, Problem& prob, const Box& box,
                        const SolveOptions& opts) {
    const auto t0 = Clock::now();
    const std::int64_t evals0 = prob.evaluations;

    DecisionVector best = box.clamp(start);
    double best_value = prob.penalized(best);

    const double n = static_cast<double>(opts.grid_resolution - 1);
    std::array<double, 3> step = {box.vw.range() / n, box.vs.range() / n, box.aw.range() / n};
    const std::array<double, 3> range = {box.vw.range(), box.vs.range(), box.aw.range()};
    const std::array<const Axis*, 3> axes = {&box.vw, &box.vs, &box.aw};

    auto component = [](DecisionVector& dv, int axis) -> double& {
        return axis == 0 ? dv.vw : axis == 1 ? dv.vs : dv.aw;
    };

    SolveResult r;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        bool improved = false;
        for (int axis = 0; axis < 3; ++axis) {
            for (double sign : {+1.0, -1.0}) {
                DecisionVector cand = best;
                component(cand, axis) = axes[axis]->clamp(component(cand, axis) + sign * step[axis]);
                if (cand == best) continue;
                const double v = prob.penalized(cand);
                if (v < best_value) {
                    best = cand;
                    best_value = v;
                    improved = true;
                }
            }
        }
        if (!improved) {
            bool collapsed = true;
            for (int axis = 0; axis < 3; ++axis) {
                step[axis] *= 0.5;
                collapsed = collapsed && step[axis] < opts.refine_tolerance * range[axis];
            }
            if (collapsed) break;
        }
    }
    r.truncated = iter >= opts.max_iterations;
    r.dv = best;
    r.objectives = prob.model.objectives(best);
    r.scalar_value = prob.objective(best);
    r.direction = Direction::Minimize;
    r.feasible = prob.feasible(best);
    r.evaluations = prob.evaluations - evals0;
    r.wall_time_s = elapsed_s(t0);
    return r;
}

SolveResult grid_impl(Problem& prob, const Box& box, const SolveOptions& opts) {
    const auto t0 = Clock::now();
    const std::int64_t evals0 = prob.evaluations;
    const int n = opts.grid_resolution;

    bool found = false;
    DecisionVector best{};
    double best_value = std::numeric_limits<double>::infinity();
    bool have_least = false;
    DecisionVector least_bad{};
    double least_violation = std::numeric_limits<double>::infinity();

    for (int i = 0; i < n; ++i) {
        const double vw = box.vw.at(i, n);
        for (int j = 0; j < n; ++j) {
            const double vs = box.vs.at(j, n);
            for (int k = 0; k < n; ++k) {
                const DecisionVector dv{vw, vs, box.aw.at(k, n)};
                ++prob.evaluations;
                const double viol = prob.violation(dv);
                const double value = prob.objective(dv) + prob.penalty * viol * viol;
                if (viol <= prob.feas_tol) {
                    if (!found || value < best_value) {
                        found = true;
                        best = dv;
                        best_value = value;
                    }
                } else if (!have_least || viol < least_violation) {
                    have_least = true;
                    least_bad = dv;
                    least_violation = viol;
                }
            }
        }
    }
    if (!found) throw InfeasibleProblem(least_bad, least_violation);

    SolveResult r;
    r.dv = best;
    r.objectives = prob.model.objectives(best);
    r.scalar_value = prob.objective(best);
    r.direction = Direction::Minimize;
    r.feasible = true;
    r.evaluations = prob.evaluations - evals0;
    r.wall_time_s = elapsed_s(t0);
    return r;
}

// Grid seed, then refinements from the seed and from jittered copies of it;
// merged by (value, lexicographic dv) so arrival order never matters.
SolveResult minimize_scalar(const ScalarObjective& fn, const ProcessConstants& c,
                            const SolveOptions& opts) {
    opts.require_valid();
    c.require_valid();
    const auto t0 = Clock::now();
    const Box box(c);
    Problem prob(fn, c, opts);

    SolveResult seed = grid_impl(prob, box, opts);

    SolveResult best = refine_impl(seed.dv, prob, box, opts);
    if (!best.feasible || seed.scalar_value < best.scalar_value) best = seed;
    bool truncated = best.truncated;

    const double n = static_cast<double>(opts.grid_resolution - 1);
    const std::array<double, 3> cell = {box.vw.range() / n, box.vs.range() / n,
                                        box.aw.range() / n};
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < opts.multistart_count; ++k) {
        DecisionVector start{seed.dv.vw + unit(rng) * cell[0], seed.dv.vs + unit(rng) * cell[1],
                             seed.dv.aw + unit(rng) * cell[2]};
        SolveResult r = refine_impl(box.clamp(start), prob, box, opts);
        truncated = truncated || r.truncated;
        if (r.feasible && better(r.scalar_value, r.dv, best.scalar_value, best.dv)) best = r;
    }

    best.truncated = truncated;
    best.evaluations = prob.evaluations;
    best.wall_time_s = elapsed_s(t0);
    return best;
}

}  // namespace

void SolveOptions::require_valid() const {
    std::ostringstream bad;
    if (grid_resolution < 2) bad << " grid_resolution must be >= 2;";
    if (multistart_count < 0) bad << " multistart_count must be >= 0;";
    if (!(penalty_coefficient > 0.0)) bad << " penalty_coefficient must be > 0;";
    if (!(refine_tolerance > 0.0)) bad << " refine_tolerance must be > 0;";
    if (max_iterations < 1) bad << " max_iterations must be >= 1;";
    const std::string s = bad.str();
    if (!s.empty()) throw std::invalid_argument("invalid solve options:" + s);
}

InfeasibleProblem::InfeasibleProblem(const DecisionVector& dv, double viol)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "no feasible point: wear constraint violated everywhere; least-violating "
                "node (vw="
             << dv.vw << ", vs=" << dv.vs << ", aw=" << dv.aw << ") misses G by " << viol;
          return os.str();
      }()),
      least_violating(dv),
      violation(viol) {}

ScalarObjective make_scalar_objective(const ModelEvaluator& model, const MethodSpec& m,
                                      const IdealPoint& fstar) {
    if (m.kind == MethodKind::Individual)
        throw std::invalid_argument(
            "make_scalar_objective: Individual optimization is not a scalar function; use "
            "ideal_point");
    // Probe the direction once; it depends only on the method kind.
    const Direction dir = m.kind == MethodKind::MaxMin ? Direction::Maximize : Direction::Minimize;
    return [model, m, fstar, dir](const DecisionVector& dv) {
        const double v = scalarize(m, model.objectives(dv), fstar).value;
        return dir == Direction::Maximize ? -v : v;
    };
}

SolveResult grid_search(const ScalarObjective& objective, const ProcessConstants& c,
                        const SolveOptions& opts) {
    opts.require_valid();
    c.require_valid();
    const Box box(c);
    Problem prob(objective, c, opts);
    return grid_impl(prob, box, opts);
}

SolveResult local_refine(const DecisionVector& start, const ScalarObjective& objective,
                         const ProcessConstants& c, const SolveOptions& opts) {
    opts.require_valid();
    c.require_valid();
    if (!in_bounds(start, c))
        throw std::invalid_argument("local_refine: start must be within bounds");
    const Box box(c);
    Problem prob(objective, c, opts);
    return refine_impl(start, prob, box, opts);
}

SolveResult solve(const MethodSpec& m, const ProcessConstants& c, const IdealPoint& fstar,
                  const SolveOptions& opts) {
    const auto t0 = Clock::now();
    const ModelEvaluator model(c);
    const ScalarObjective fn = make_scalar_objective(model, m, fstar);
    SolveResult r = minimize_scalar(fn, c, opts);

    // Report in the method's own direction, recomputed from the objectives.
    const Evaluation eval = model.evaluate(r.dv);
    const ScalarizedValue sv = scalarize(m, eval.objectives, fstar);
    r.objectives = eval.objectives;
    r.scalar_value = sv.value;
    r.direction = sv.direction;
    r.feasible = eval.feasible;
    r.wall_time_s = elapsed_s(t0);
    return r;
}

IdealPoint ideal_point(const ProcessConstants& c, const SolveOptions& opts) {
    const ModelEvaluator model(c);
    const ScalarObjective min_ra = [model](const DecisionVector& dv) {
        return model.surface_roughness(dv);
    };
    const ScalarObjective min_t = [model](const DecisionVector& dv) {
        return model.grinding_time(dv);
    };
    const ScalarObjective min_ct = [model](const DecisionVector& dv) {
        return model.production_cost(dv);
    };

    const SolveResult r_ra = minimize_scalar(min_ra, c, opts);
    const SolveResult r_t = minimize_scalar(min_t, c, opts);
    const SolveResult r_ct = minimize_scalar(min_ct, c, opts);

    IdealPoint fstar;
    fstar.ra_star = r_ra.objectives.ra;
    fstar.t_star = r_t.objectives.t;
    fstar.ct_star = r_ct.objectives.ct;
    fstar.argmin_ra = r_ra.dv;
    fstar.argmin_t = r_t.dv;
    fstar.argmin_ct = r_ct.dv;
    return fstar;
}

}  // namespace grind
