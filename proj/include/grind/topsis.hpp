#pragma once

#include <string>
#include <utility>
#include <vector>

namespace grind {

enum class CriterionDirection { Benefit, Cost };

struct Criterion {
    std::string name;
    CriterionDirection direction = CriterionDirection::Cost;
    bool operator==(const Criterion&) const = default;
};

/// Alternatives x criteria performance table.
/// CSV form: header "name,<crit><+|->..." (suffix '-' = cost, '+' = benefit),
/// one row per alternative, first column the alternative name.
struct DecisionMatrix {
    std::vector<std::string> alternatives;
    std::vector<Criterion> criteria;
    std::vector<std::vector<double>> values;  // [alternative][criterion]

    std::size_t rows() const { return alternatives.size(); }
    std::size_t cols() const { return criteria.size(); }
    void require_valid() const;  // shape match + finite values

    static DecisionMatrix from_csv(const std::string& text);
    std::string to_csv() const;
    bool operator==(const DecisionMatrix&) const = default;
};

struct CriteriaWeights {
    std::vector<double> w;

    CriteriaWeights renormalized() const;  // scaled to sum exactly 1
    void require_valid(std::size_t criteria_count) const;
    bool operator==(const CriteriaWeights&) const = default;
};

struct TopsisResult {
    std::vector<double> similarity;  // in [0,1], per alternative
    std::vector<double> d_plus;      // distance to the positive ideal
    std::vector<double> d_minus;     // distance to the negative ideal
    std::vector<int> rank;           // rank[i] = 1-based rank of alternative i
    std::vector<std::size_t> order;  // order[0] = index of the best alternative
};

/// Divides each column by its Euclidean norm. A zero-norm column is an error
/// naming the criterion.
DecisionMatrix normalize(const DecisionMatrix& m);

/// v_ij = w_j * n_ij.
DecisionMatrix apply_weights(const DecisionMatrix& m, const CriteriaWeights& w);

/// Per column: benefit -> (max, min); cost -> (min, max).
std::pair<std::vector<double>, std::vector<double>> ideal_solutions(const DecisionMatrix& m);

/// Euclidean row distances to v_plus and v_minus.
std::pair<std::vector<double>, std::vector<double>> distances(const DecisionMatrix& m,
                                                              const std::vector<double>& v_plus,
                                                              const std::vector<double>& v_minus);

/// S_i = d_i- / (d_i- + d_i+). d+ = d- = 0 means every alternative is
/// identical in weighted-normalized space; that degenerate matrix is an error.
std::vector<double> similarity(const std::vector<double>& d_plus,
                               const std::vector<double>& d_minus);

/// Descending similarity; ties keep input order.
TopsisResult rank_alternatives(const std::vector<double>& similarities);

/// The whole pipeline. Requires >= 2 alternatives.
TopsisResult run_topsis(const DecisionMatrix& m, const CriteriaWeights& w);

}  // namespace grind
