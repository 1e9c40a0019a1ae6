#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace grind {

/// Down-feed policy: the per-pass depth a_p is either derived from the total
/// thickness of cut (a_p = a_w / n_p) or fixed explicitly in mm/pass.
struct ApMode {
    enum class Kind { Derived, Fixed };
    Kind kind = Kind::Derived;
    double value = 0.0;  // mm/pass, Fixed only

    static ApMode derived() { return {Kind::Derived, 0.0}; }
    static ApMode fixed(double ap) { return {Kind::Fixed, ap}; }
    bool operator==(const ApMode&) const = default;
};

/// Machine and economic constants of the surface-grinding model.
/// Defaults correspond to the built-in reference dataset.
struct ProcessConstants {
    double mc = 30.0;      // cost rate, $/h
    double p = 1.0;        // workpieces per table load
    double lw = 30.0;      // workpiece grinding length, mm
    double le = 15.0;      // empty grinding length, mm
    double bw = 20.0;      // workpiece width, mm
    double be = 10.0;      // empty grinding width, mm
    double fb = 2.0;       // cross feed rate, mm/pass
    double g_ratio = 60.0; // required grinding ratio G
    double de = 500.0;     // wheel diameter, mm
    double bs = 50.0;      // wheel width, mm
    double sd = 10.0;      // wheel idling distance, mm
    double vr = 25.0;      // wheel idling speed, mm/min
    double ti = 2.0;       // load/unload time, min
    double tch = 20.0;     // machine adjustment time, min
    double nd = 4.0;       // pieces ground per dressing life
    double nt = 4.0;       // batches per machine adjustment
    double ntd = 2000.0;   // pieces ground per dresser life
    double np = 4.0;       // number of passes
    double cd = 75.0;      // dressing cost, $
    double cs = 0.003;     // wheel cost, $/mm^3
    double sp = 3.0;       // spark-out passes
    double doc = 0.02;     // depth of dressing, mm
    double lead = 0.02;    // lead of dressing, mm/rev
    double ka = 0.0869;    // wear coefficient
    double vol = 6.99;     // wheel hardness
    double dg = 0.3;       // grain diameter, mm
    double rc = 58.0;      // workpiece hardness
    double ta = 0.02;      // workpiece approach time, min
    double te = 0.02;      // extra workpiece path time, min
    double vw_min = 10.0, vw_max = 50.0;     // workpiece speed bounds, m/min
    double vs_min = 1000.0, vs_max = 3000.0; // wheel speed bounds, m/min
    double aw_min = 0.04, aw_max = 0.12;     // total thickness of cut bounds, mm
    ApMode ap_mode{};

    /// a_p for a given total thickness of cut, per ap_mode.
    double resolve_ap(double aw) const;

    /// Returns invariant violations as "field: problem" strings; empty if valid.
    std::vector<std::string> validate() const;
    /// Throws std::invalid_argument listing every violation.
    void require_valid() const;

    bool operator==(const ProcessConstants&) const = default;
};

/// JSON (snake_case keys matching the field names; ap_mode is "derived" or a number).
std::string constants_to_json(const ProcessConstants& c);
ProcessConstants constants_from_json(const std::string& text);

/// The three decision variables. Ordering is lexicographic (vw, vs, aw),
/// which the solver uses for deterministic tie-breaks.
struct DecisionVector {
    double vw = 0.0;  // workpiece speed, m/min
    double vs = 0.0;  // wheel speed, m/min
    double aw = 0.0;  // total thickness of cut, mm

    auto operator<=>(const DecisionVector&) const = default;
};

/// Evaluated objective values for one decision vector.
struct ObjectiveTriple {
    double ra = 0.0;  // surface roughness, um
    double t = 0.0;   // total grinding time, min
    double ct = 0.0;  // production cost, $

    std::array<double, 3> as_array() const { return {ra, t, ct}; }
    bool operator==(const ObjectiveTriple&) const = default;
};

/// The six cost terms, individually retrievable for diagnostics.
struct CostTerms {
    double machining = 0.0;      // feed passes over the workpiece
    double idle = 0.0;           // wheel idling + load/unload
    double adjustment = 0.0;     // machine adjustment amortized per batch
    double dressing_time = 0.0;  // dressing labor amortized per piece
    double wheel_wear = 0.0;     // wheel volume consumed by grinding + dressing
    double dressing_tool = 0.0;  // dresser amortization

    double total() const {
        return machining + idle + adjustment + dressing_time + wheel_wear + dressing_tool;
    }
};

/// Sub-factors of the workpiece removal parameter, exposed so the grouping
/// of the printed fraction is auditable.
struct WrpFactors {
    double dressing_term = 0.0;    // 2*Doc/(3*L) + 1
    double lead_pow = 0.0;         // L^(11/19)
    double speed_ratio_pow = 0.0;  // (vw/vs)^(3/19)
    double numerator = 0.0;
    double denominator = 0.0;      // De^(43/304) * VOL^0.47 * dg^(5/38) * Rc^(27/19)
    double value = 0.0;
};

/// Sub-factors of the wheel wear parameter.
struct WwpFactors {
    double abrasive_num = 0.0;     // Ka * ap * dg^(5/38) * Rc^(27/19)
    double abrasive_den = 0.0;     // De^(1.2/VOL - 43/304) * VOL^0.38
    double dressing_num = 0.0;     // 1 + Doc/L
    double dressing_den = 0.0;     // 1 + 2*Doc/(3*L)
    double lead_pow = 0.0;         // L^(27/19)
    double speed_ratio_pow = 0.0;  // (vs/vw)^(3/19)
    double value = 0.0;
};

struct Evaluation {
    ObjectiveTriple objectives;
    double wear_ratio = 0.0;     // WRP / WWP
    double wear_residual = 0.0;  // WRP/WWP - G
    bool in_bounds = false;
    bool feasible = false;       // in_bounds && wear_residual >= -tolerance
};

/// Wear-constraint slack below which a point still counts as feasible.
double feasibility_tolerance(const ProcessConstants& c);

bool in_bounds(const DecisionVector& dv, const ProcessConstants& c);

/// Caches the constant sub-expressions of the model; a wear evaluation in a
/// tight loop costs one pow instead of ten. The public free functions
/// delegate here, keeping a single code path for every caller.
class ModelEvaluator {
public:
    explicit ModelEvaluator(const ProcessConstants& c);

    double surface_roughness(const DecisionVector& dv) const;
    double grinding_time(const DecisionVector& dv) const;
    CostTerms production_cost_terms(const DecisionVector& dv) const;
    double production_cost(const DecisionVector& dv) const;
    double wrp(const DecisionVector& dv) const;
    double wwp(const DecisionVector& dv) const;
    WrpFactors wrp_factors(const DecisionVector& dv) const;
    WwpFactors wwp_factors(const DecisionVector& dv) const;
    double wear_constraint_residual(const DecisionVector& dv) const;
    ObjectiveTriple objectives(const DecisionVector& dv) const;
    Evaluation evaluate(const DecisionVector& dv) const;

    const ProcessConstants& constants() const { return c_; }

private:
    ProcessConstants c_;
    double wrp_const_ = 0.0;  // everything in WRP except (vw/vs)^(3/19) * vs
    double wwp_const_ = 0.0;  // everything in WWP except ap * (vs/vw)^(3/19) * vw
    double feas_tol_ = 0.0;
};

double surface_roughness(const DecisionVector& dv, const ProcessConstants& c);
double grinding_time(const DecisionVector& dv, const ProcessConstants& c);
CostTerms production_cost_terms(const DecisionVector& dv, const ProcessConstants& c);
double production_cost(const DecisionVector& dv, const ProcessConstants& c);
double workpiece_removal_parameter(const DecisionVector& dv, const ProcessConstants& c);
double wheel_wear_parameter(const DecisionVector& dv, const ProcessConstants& c);
double wear_constraint_residual(const DecisionVector& dv, const ProcessConstants& c);
Evaluation evaluate(const DecisionVector& dv, const ProcessConstants& c);

}  // namespace grind
