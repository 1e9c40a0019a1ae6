#include "grind/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace grind {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

[[noreturn]] void csv_error(std::size_t row, std::size_t col, const std::string& what) {
    std::ostringstream os;
    os << "decision matrix CSV error at row " << row << ", column " << col << ": " << what;
    throw std::invalid_argument(os.str());
}

}  // namespace

void DecisionMatrix::require_valid() const {
    if (values.size() != alternatives.size())
        throw std::invalid_argument("decision matrix: one value row per alternative required");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].size() != criteria.size())
            throw std::invalid_argument("decision matrix: row '" + alternatives[i] +
                                        "' has the wrong number of values");
        for (double v : values[i])
            if (!std::isfinite(v))
                throw std::invalid_argument("decision matrix: non-finite value in row '" +
                                            alternatives[i] + "'");
    }
}

DecisionMatrix DecisionMatrix::from_csv(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            line = trim(line);
            if (!line.empty()) lines.push_back(line);
        }
    }
    if (lines.empty()) throw std::invalid_argument("decision matrix CSV is empty");

    DecisionMatrix m;
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 2) csv_error(1, 1, "header needs a name column and at least one criterion");
    for (std::size_t j = 1; j < header.size(); ++j) {
        std::string name = header[j];
        if (name.empty()) csv_error(1, j + 1, "empty criterion name");
        const char suffix = name.back();
        if (suffix != '+' && suffix != '-')
            csv_error(1, j + 1, "criterion '" + name + "' must end in '+' (benefit) or '-' (cost)");
        name.pop_back();
        m.criteria.push_back(
            {trim(name), suffix == '+' ? CriterionDirection::Benefit : CriterionDirection::Cost});
    }

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv_line(lines[r]);
        if (cells.size() != header.size())
            csv_error(r + 1, cells.size(),
                      "expected " + std::to_string(header.size()) + " cells, got " +
                          std::to_string(cells.size()));
        if (cells[0].empty()) csv_error(r + 1, 1, "empty alternative name");
        m.alternatives.push_back(cells[0]);
        std::vector<double> row;
        for (std::size_t j = 1; j < cells.size(); ++j) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cells[j], &pos));
                if (pos != cells[j].size()) throw std::invalid_argument(cells[j]);
            } catch (const std::exception&) {
                csv_error(r + 1, j + 1, "bad number '" + cells[j] + "'");
            }
        }
        m.values.push_back(std::move(row));
    }
    m.require_valid();
    return m;
}

std::string DecisionMatrix::to_csv() const {
    require_valid();
    std::ostringstream os;
    os.precision(17);
    os << "name";
    for (const auto& c : criteria)
        os << ',' << c.name << (c.direction == CriterionDirection::Benefit ? '+' : '-');
    os << '\n';
    for (std::size_t i = 0; i < rows(); ++i) {
        os << alternatives[i];
        for (double v : values[i]) os << ',' << v;
        os << '\n';
    }
    return os.str();
}

CriteriaWeights CriteriaWeights::renormalized() const {
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(sum > 0.0)) throw std::invalid_argument("criteria weights must have a positive sum");
    CriteriaWeights out;
    out.w.reserve(w.size());
    for (double x : w) out.w.push_back(x / sum);
    return out;
}

void CriteriaWeights::require_valid(std::size_t criteria_count) const {
    if (w.size() != criteria_count)
        throw std::invalid_argument("expected " + std::to_string(criteria_count) +
                                    " criteria weights, got " + std::to_string(w.size()));
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("criteria weights must be non-negative");
        sum += x;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("criteria weights must have a positive sum");
}

DecisionMatrix normalize(const DecisionMatrix& m) {
    m.require_valid();
    DecisionMatrix out = m;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) ss += m.values[i][j] * m.values[i][j];
        const double norm = std::sqrt(ss);
        if (!(norm > 0.0))
            throw std::domain_error("criterion '" + m.criteria[j].name +
                                    "' has a zero-norm column; cannot normalize");
        for (std::size_t i = 0; i < m.rows(); ++i) out.values[i][j] = m.values[i][j] / norm;
    }
    return out;
}

DecisionMatrix apply_weights(const DecisionMatrix& m, const CriteriaWeights& w) {
    m.require_valid();
    w.require_valid(m.cols());
    DecisionMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.values[i][j] = w.w[j] * m.values[i][j];
    return out;
}

std::pair<std::vector<double>, std::vector<double>> ideal_solutions(const DecisionMatrix& m) {
    m.require_valid();
    if (m.rows() == 0) throw std::invalid_argument("ideal_solutions: empty matrix");
    std::vector<double> v_plus(m.cols()), v_minus(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double lo = m.values[0][j], hi = m.values[0][j];
        for (std::size_t i = 1; i < m.rows(); ++i) {
            lo = std::min(lo, m.values[i][j]);
            hi = std::max(hi, m.values[i][j]);
        }
        const bool benefit = m.criteria[j].direction == CriterionDirection::Benefit;
        v_plus[j] = benefit ? hi : lo;
        v_minus[j] = benefit ? lo : hi;
    }
    return {v_plus, v_minus};
}

std::pair<std::vector<double>, std::vector<double>> distances(const DecisionMatrix& m,
                                                              const std::vector<double>& v_plus,
                                                              const std::vector<double>& v_minus) {
    m.require_valid();
    if (v_plus.size() != m.cols() || v_minus.size() != m.cols())
        throw std::invalid_argument("distances: ideal vectors must match the criteria count");
    std::vector<double> d_plus(m.rows()), d_minus(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sp = 0.0, sm = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const double dp = m.values[i][j] - v_plus[j];
            const double dm = m.values[i][j] - v_minus[j];
            sp += dp * dp;
            sm += dm * dm;
        }
        d_plus[i] = std::sqrt(sp);
        d_minus[i] = std::sqrt(sm);
    }
    return {d_plus, d_minus};
}

std::vector<double> similarity(const std::vector<double>& d_plus,
                               const std::vector<double>& d_minus) {
    if (d_plus.size() != d_minus.size())
        throw std::invalid_argument("similarity: distance vectors must have equal length");
    std::vector<double> s(d_plus.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double denom = d_plus[i] + d_minus[i];
        if (!(denom > 0.0))
            throw std::domain_error(
                "degenerate decision matrix: an alternative coincides with both ideals "
                "(all alternatives identical)");
        s[i] = d_minus[i] / denom;
    }
    return s;
}

TopsisResult rank_alternatives(const std::vector<double>& similarities) {
    TopsisResult r;
    r.similarity = similarities;
    r.order.resize(similarities.size());
    std::iota(r.order.begin(), r.order.end(), std::size_t{0});
    std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
        return similarities[a] > similarities[b];
    });
    r.rank.resize(similarities.size());
    for (std::size_t pos = 0; pos < r.order.size(); ++pos)
        r.rank[r.order[pos]] = static_cast<int>(pos + 1);
    return r;
}

TopsisResult run_topsis(const DecisionMatrix& m, const CriteriaWeights& w) {
    m.require_valid();
    if (m.rows() < 2)
        throw std::domain_error("degenerate decision matrix: need at least 2 alternatives");
    const DecisionMatrix weighted = apply_weights(normalize(m), w);
    const auto [v_plus, v_minus] = ideal_solutions(weighted);
    const auto [d_plus, d_minus] = distances(weighted, v_plus, v_minus);
    TopsisResult r = rank_alternatives(similarity(d_plus, d_minus));
    r.d_plus = d_plus;
    r.d_minus = d_minus;
    return r;
}

}  // namespace grind
