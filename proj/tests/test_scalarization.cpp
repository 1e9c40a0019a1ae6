#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "grind/scalarization.hpp"

using namespace grind;

namespace {

constexpr std::array<double, 3> kEqual = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

IdealPoint make_ideal(double a, double b, double c) {
    IdealPoint f;
    f.ra_star = a;
    f.t_star = b;
    f.ct_star = c;
    return f;
}

// The reference individual-optimization triple, used as a fixed anchor.
const IdealPoint kAnchor = make_ideal(0.111, 25.0, 5.336);

std::mt19937_64 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::strlen(tag));
    return std::mt19937_64(seq);
}

}  // namespace

TEST_CASE("lp metric: zero at the ideal, unit single deviation, frozen example") {
    CHECK(lp_metric_value({0.111, 25.0, 5.336}, kAnchor, 2.0) == 0.0);
    CHECK(lp_metric_value({2, 1, 1}, make_ideal(1, 1, 1), 2.0) == doctest::Approx(1.0));
    // frozen from the desk oracle
    CHECK(lp_metric_value({0.144, 26.7, 5.656}, kAnchor, 2.0) ==
          doctest::Approx(0.3108151953789882).epsilon(1e-12));
    CHECK_THROWS_AS(lp_metric_value({1, 1, 1}, make_ideal(0, 1, 1), 2.0), std::domain_error);
    CHECK_THROWS_AS(lp_metric_value({1, 1, 1}, make_ideal(1, 1, 1), 0.5), std::invalid_argument);
}

TEST_CASE("lp metric clamps sub-ideal noise before fractional powers") {
    const IdealPoint fstar = make_ideal(1, 1, 1);
    const double v = lp_metric_value({1.0 - 1e-12, 1.0, 1.0}, fstar, 2.5);
    CHECK(std::isfinite(v));
    CHECK(v == 0.0);
}

TEST_CASE("ideal-normalized wsm: one at the ideal, frozen example, weight limits") {
    CHECK(wsm_value({0.111, 25.0, 5.336}, kAnchor, kEqual) == doctest::Approx(1.0).epsilon(1e-12));
    // frozen from the desk oracle
    CHECK(wsm_value({0.16, 25, 5.445}, kAnchor, kEqual) ==
          doctest::Approx(1.153956242599421).epsilon(1e-12));
    // near-degenerate weights track the first ratio alone
    const double eps = 1e-12;
    const std::array<double, 3> w{1.0 - 2 * eps, eps, eps};
    CHECK(wsm_value({0.222, 30.0, 6.0}, kAnchor, w) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(wsm_value({1, 1, 1}, make_ideal(1, 0, 1), kEqual), std::domain_error);
}

TEST_CASE("raw wsm is the plain weighted sum") {
    CHECK(wsm_raw_value({3, 6, 9}, kEqual) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(wsm_raw_value({3, 6, 9}, {1, 0, 0}) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("max-min: ideal gives one, uniform scaling halves it, feasible below one") {
    const IdealPoint fstar = make_ideal(0.2, 20, 5);
    CHECK(maxmin_value({0.2, 20, 5}, fstar) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(maxmin_value({0.4, 40, 10}, fstar) == doctest::Approx(0.5).epsilon(1e-12));

    auto rng = rng_for("maxmin-feasible");
    std::uniform_real_distribution<double> stretch(1.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const ObjectiveTriple f{0.2 * stretch(rng), 20 * stretch(rng), 5 * stretch(rng)};
        CHECK(maxmin_value(f, fstar) <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(maxmin_value({0, 1, 1}, fstar), std::domain_error);
}

TEST_CASE("goal attainment: zero at the ideal, scaled worst deviation") {
    const IdealPoint fstar = make_ideal(0.2, 20, 5);
    CHECK(goal_attainment_value({0.2, 20, 5}, fstar, kEqual) == 0.0);
    CHECK(goal_attainment_value({0.5, 20, 5}, fstar, kEqual) ==
          doctest::Approx(0.9).epsilon(1e-12));
    auto rng = rng_for("ga-feasible");
    std::uniform_real_distribution<double> stretch(1.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const ObjectiveTriple f{0.2 * stretch(rng), 20 * stretch(rng), 5 * stretch(rng)};
        CHECK(goal_attainment_value(f, fstar, kEqual) >= 0.0);
    }
    CHECK_THROWS_AS(goal_attainment_value({1, 1, 1}, fstar, {1, 0, 0}), std::domain_error);
}

TEST_CASE("goal programming: zero at the ideal, relative deviations") {
    const IdealPoint unit = make_ideal(1, 1, 1);
    CHECK(goal_programming_value({1, 1, 1}, unit, kEqual) == 0.0);
    CHECK(goal_programming_value({1.3, 1, 1}, unit, kEqual) ==
          doctest::Approx(0.1).epsilon(1e-12));
    // negative deviations count too
    CHECK(goal_programming_value({0.7, 1, 1}, unit, kEqual) ==
          doctest::Approx(0.1).epsilon(1e-12));
    auto rng = rng_for("gp-nonneg");
    std::uniform_real_distribution<double> u(0.2, 5.0);
    for (int i = 0; i < 200; ++i)
        CHECK(goal_programming_value({u(rng), u(rng), u(rng)}, unit, kEqual) >= 0.0);
}

TEST_CASE("scalarize dispatch and directions") {
    const ObjectiveTriple at_ideal{0.111, 25.0, 5.336};

    const auto lp = scalarize(MethodSpec::lp_metric(2.0), at_ideal, kAnchor);
    CHECK(lp.value == 0.0);
    CHECK(lp.direction == Direction::Minimize);

    const auto mm = scalarize(MethodSpec::max_min(), at_ideal, kAnchor);
    CHECK(mm.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mm.direction == Direction::Maximize);

    const auto wn = scalarize(MethodSpec::wsm(kEqual, true), at_ideal, kAnchor);
    CHECK(wn.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wn.direction == Direction::Minimize);

    // the default (raw) form is the plain weighted sum
    const auto wr = scalarize(MethodSpec::wsm(), at_ideal, kAnchor);
    CHECK(wr.value == doctest::Approx((0.111 + 25.0 + 5.336) / 3.0).epsilon(1e-12));

    const auto gp = scalarize(MethodSpec::goal_programming(), at_ideal, kAnchor);
    CHECK(gp.value == 0.0);

    CHECK_THROWS_AS(scalarize(MethodSpec::individual(), at_ideal, kAnchor),
                    std::invalid_argument);
}

TEST_CASE("method spec parsing") {
    CHECK(MethodSpec::parse("individual").kind == MethodKind::Individual);
    CHECK(MethodSpec::parse("lp-metric").lp_exponent == 2.0);
    CHECK(MethodSpec::parse("lp-metric:4").lp_exponent == 4.0);
    CHECK(MethodSpec::parse("max-min").kind == MethodKind::MaxMin);

    const auto w = MethodSpec::parse("wsm:2,1,1");
    CHECK(w.kind == MethodKind::WSM);
    CHECK_FALSE(w.ideal_normalized);
    CHECK(w.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.weights[1] == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(MethodSpec::parse("wsm-ideal").ideal_normalized);
    CHECK(MethodSpec::parse("goal-attainment:1,1,2").weights[2] ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(MethodSpec::parse("goal-programming").kind == MethodKind::GoalProgramming);
    CHECK(MethodSpec::parse("goal-programming-ideal").ideal_normalized);

    for (const char* bad : {"wsm:1,2", "wsm:1,2,3,4", "wsm:0,1,1", "wsm:a,b,c", "lp-metric:0.5",
                            "lp-metric:x", "nope", "individual:1", "max-min:1"})
        CHECK_THROWS_AS(MethodSpec::parse(bad), std::invalid_argument);

    // cli_name round-trips
    for (const char* name : {"individual", "lp-metric", "wsm", "wsm-ideal", "max-min",
                             "goal-attainment", "goal-programming", "goal-programming-ideal"})
        CHECK(MethodSpec::parse(name).cli_name() == name);
}

TEST_CASE("dominance consistency across all scalarizations") {
    auto rng = rng_for("dominance");
    std::uniform_real_distribution<double> base(0.1, 10.0);
    std::uniform_real_distribution<double> up(0.0, 2.0);
    std::uniform_real_distribution<double> wdist(0.1, 1.0);

    for (int i = 0; i < 1000; ++i) {
        const IdealPoint fstar = make_ideal(base(rng), base(rng), base(rng));
        // f and g both above the ideal componentwise (as feasible objective
        // vectors are), with f <= g and at least one strict inequality
        const ObjectiveTriple f{fstar.ra_star * (1 + up(rng)), fstar.t_star * (1 + up(rng)),
                                fstar.ct_star * (1 + up(rng))};
        auto gv = f.as_array();
        gv[i % 3] += 0.1 + up(rng);
        if (i % 2) {
            gv[0] += up(rng);
            gv[1] += up(rng);
            gv[2] += up(rng);
        }
        const ObjectiveTriple g{gv[0], gv[1], gv[2]};
        const std::array<double, 3> w{wdist(rng), wdist(rng), wdist(rng)};

        CHECK(lp_metric_value(f, fstar, 2.0) <= lp_metric_value(g, fstar, 2.0));
        CHECK(wsm_value(f, fstar, w) <= wsm_value(g, fstar, w));
        CHECK(wsm_raw_value(f, w) <= wsm_raw_value(g, w));
        CHECK(goal_attainment_value(f, fstar, w) <= goal_attainment_value(g, fstar, w));
        CHECK(goal_programming_value(f, fstar, w) <= goal_programming_value(g, fstar, w));
        CHECK(goal_programming_raw_value(f, fstar, w) <= goal_programming_raw_value(g, fstar, w));
        CHECK(maxmin_value(f, fstar) >= maxmin_value(g, fstar));
    }
}

TEST_CASE("wsm ranking is invariant to scaling all weights by c > 0") {
    auto rng = rng_for("wsm-scale");
    std::uniform_real_distribution<double> obj(0.1, 10.0);
    const IdealPoint fstar = make_ideal(0.5, 12.0, 3.0);

    std::vector<ObjectiveTriple> sample;
    sample.reserve(1000);
    for (int i = 0; i < 1000; ++i)
        sample.push_back({fstar.ra_star * (1 + obj(rng)), fstar.t_star * (1 + obj(rng)),
                          fstar.ct_star * (1 + obj(rng))});

    for (double c : {0.01, 3.0, 1e6}) {
        const auto base = MethodSpec::wsm({0.5, 0.3, 0.2});
        const auto scaled = MethodSpec::wsm({0.5 * c, 0.3 * c, 0.2 * c});
        auto argmin = [&](const MethodSpec& m) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < sample.size(); ++i)
                if (scalarize(m, sample[i], fstar).value <
                    scalarize(m, sample[best], fstar).value)
                    best = i;
            return best;
        };
        CHECK(argmin(base) == argmin(scaled));
        // normalization at construction makes the specs identical outright
        CHECK(base.weights[0] == doctest::Approx(scaled.weights[0]).epsilon(1e-12));
    }
}

TEST_CASE("lp metric decreases in r toward the worst relative deviation") {
    auto rng = rng_for("lp-monotone");
    std::uniform_real_distribution<double> dev(0.0, 1.0);
    const IdealPoint fstar = make_ideal(1, 1, 1);

    int kept = 0;
    while (kept < 200) {
        const std::array<double, 3> d{dev(rng), dev(rng), dev(rng)};
        std::array<double, 3> sorted = d;
        std::sort(sorted.begin(), sorted.end());
        // keep the top two deviations separated so r=64 has contracted enough
        if (!(sorted[2] > 0.05) || sorted[1] / sorted[2] > 0.9) continue;
        ++kept;
        const ObjectiveTriple f{1 + d[0], 1 + d[1], 1 + d[2]};
        const double cheby = sorted[2];
        double prev = std::numeric_limits<double>::infinity();
        for (double r : {1.0, 2.0, 4.0, 8.0, 16.0, 64.0}) {
            const double v = lp_metric_value(f, fstar, r);
            CHECK(v <= prev + 1e-15);
            CHECK(v >= cheby - 1e-15);
            prev = v;
        }
        CHECK(std::abs(prev - cheby) < 1e-3);
    }
}

TEST_CASE("equal-weight goal programming equals the r=1 lp metric divided by n") {
    auto rng = rng_for("gp-lp1");
    std::uniform_real_distribution<double> base(0.1, 10.0);
    std::uniform_real_distribution<double> up(0.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const IdealPoint fstar = make_ideal(base(rng), base(rng), base(rng));
        const ObjectiveTriple f{fstar.ra_star * (1 + up(rng)), fstar.t_star * (1 + up(rng)),
                                fstar.ct_star * (1 + up(rng))};
        const double gp = goal_programming_value(f, fstar, kEqual);
        const double lp1 = lp_metric_value(f, fstar, 1.0);
        CHECK(3.0 * gp == doctest::Approx(lp1).epsilon(1e-12));
    }
}
