// test_yamabe.cpp — test energies against closed forms and an independent
// high-precision oracle, the benchmark bound table, the two-point sweep, and
// the option envelope.
//
// Frozen oracle values (40-digit arithmetic) for the symmetric two-unit-point
// family at separation d:
//   cone factor, hyperbolic gauge:  E(0.05) = 46.224148792115571
//                                   E(1.5)  = 52.472221772985734
//                                   E(10)   = 53.314595221270538
//   round factor, scalar-flat gauge: E(0.05) = 50.270717081887115
//                                    E(1.5)  = 54.029275400585663
//                                    E(10)   = 61.559597363550753

#include "doctest.h"

#include "monopole/yamabe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace monopole;

namespace {

constexpr double kPi = std::numbers::pi;

MonopoleConfig two_point_config(double d) {
    MonopoleConfig cfg;
    cfg.points.push_back({HPoint{0.0, 0.0, std::exp(0.5 * d)}, 1});
    cfg.points.push_back({HPoint{0.0, 0.0, std::exp(-0.5 * d)}, 1});
    return cfg;
}

MonopoleConfig one_point_config(long long charge) {
    MonopoleConfig cfg;
    cfg.points.push_back({HPoint{0.0, 0.0, 1.0}, charge});
    return cfg;
}

} // namespace

TEST_CASE("benchmark bounds reduce to their radical closed forms") {
    CHECK(bound_round_s4() == doctest::Approx(8.0 * kPi * std::sqrt(6.0)).epsilon(1e-15));
    CHECK(bound_cp2() == doctest::Approx(12.0 * kPi * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(bound_round_negdist() ==
          doctest::Approx(12.0 * std::sqrt(3.0) * kPi).epsilon(1e-15));
    CHECK(bound_two_point_floor() ==
          doctest::Approx(8.0 * kPi * std::sqrt(3.0)).epsilon(1e-15));
    for (long long n = 1; n <= 8; ++n)
        CHECK(bound_multi_fold(n) ==
              doctest::Approx(12.0 * kPi * std::sqrt(6.0 / (n + 2.0))).epsilon(1e-15));
    CHECK(bound_multi_fold(1) == doctest::Approx(bound_cp2()).epsilon(1e-15));
    for (long long m = 1; m <= 6; ++m)
        CHECK(bound_orbifold(m) ==
              doctest::Approx(8.0 * kPi * std::sqrt(6.0 / m)).epsilon(1e-15));
    CHECK(bound_orbifold(1) == doctest::Approx(bound_round_s4()).epsilon(1e-15));
    for (long long n = 1; n <= 3; ++n)
        CHECK(bound_selfdual_lower(n) ==
              doctest::Approx(4.0 * kPi * std::sqrt(6.0 * (4.0 - n))).epsilon(1e-15));
    CHECK_THROWS_AS(bound_selfdual_lower(4), std::invalid_argument);
}

TEST_CASE("orbifold existence criterion is strict in 9 m < 4 (N + 2)") {
    CHECK(orbifold_existence_test({1, 2}) == OrbifoldExistence::SolvableByCorollary);
    CHECK(orbifold_existence_test({3}) == OrbifoldExistence::Inconclusive);
    CHECK(orbifold_existence_test({1, 1, 1}) == OrbifoldExistence::SolvableByCorollary);
    CHECK(orbifold_existence_test({2, 2}) == OrbifoldExistence::SolvableByCorollary);
    CHECK(orbifold_existence_test({4}) == OrbifoldExistence::Inconclusive);
    // Boundary case 9 * 4 == 4 * (7 + 2): equality must NOT qualify.
    CHECK(orbifold_existence_test({4, 1, 1, 1}) == OrbifoldExistence::Inconclusive);
}

TEST_CASE("empty background energies: round endpoints in both gauges") {
    MonopoleConfig empty;

    const EnergyReport flat = energy_flat_gauge(empty);
    CHECK(flat.numerator == doctest::Approx(32.0 * kPi * kPi).epsilon(1e-15));
    CHECK(flat.energy == doctest::Approx(bound_round_s4()).epsilon(1e-10));
    CHECK(flat.converged);

    const EnergyReport cone =
        energy_hyp_gauge(empty, TestConformal::neg_dist(HPoint{0.0, 0.0, 1.0}));
    CHECK(cone.energy == doctest::Approx(bound_round_negdist()).epsilon(1e-10));

    const EnergyReport round =
        energy_hyp_gauge(empty, TestConformal::log_u(HPoint{0.0, 0.0, 1.0}));
    CHECK(round.energy == doctest::Approx(bound_round_s4()).epsilon(1e-10));
}

TEST_CASE("one-point and multiplicity-N energies hit the multi-fold closed form") {
    for (long long n = 1; n <= 6; ++n) {
        const MonopoleConfig cfg = one_point_config(n);
        const EnergyReport rep =
            energy_hyp_gauge(cfg, TestConformal::neg_dist(cfg.points[0].pos));
        CHECK(rep.energy == doctest::Approx(bound_multi_fold(n)).epsilon(1e-10));
        CHECK(rep.numerator == doctest::Approx(12.0 * kPi * kPi).epsilon(1e-9));
        CHECK(rep.converged);
        CHECK(rep.energy_error < 1e-8);
    }
}

TEST_CASE("two-point cone energies match the independent oracle") {
    const std::vector<std::pair<double, double>> oracle = {
        {0.05, 46.224148792115571},
        {1.5, 52.472221772985734},
        {10.0, 53.314595221270538},
    };
    for (const auto& [d, expected] : oracle) {
        const MonopoleConfig cfg = two_point_config(d);
        const EnergyReport rep =
            energy_hyp_gauge(cfg, TestConformal::neg_dist(cfg.points[0].pos));
        CHECK(rep.energy == doctest::Approx(expected).epsilon(1e-10));
        CHECK(rep.energy < bound_cp2());
        CHECK(rep.energy > bound_two_point_floor());
    }
}

TEST_CASE("two-point flat-gauge energies match the independent oracle") {
    const std::vector<std::pair<double, double>> oracle = {
        {0.05, 50.270717081887115},
        {1.5, 54.029275400585663},
        {10.0, 61.559597363550753},
    };
    for (const auto& [d, expected] : oracle) {
        const EnergyReport rep = energy_flat_gauge(two_point_config(d));
        CHECK(rep.energy == doctest::Approx(expected).epsilon(1e-10));
        CHECK(rep.energy < bound_round_s4());
        CHECK(rep.numerator == doctest::Approx(32.0 * kPi * kPi).epsilon(1e-15));
    }
}

TEST_CASE("the round factor gives identical energies through both gauges") {
    const MonopoleConfig cfg = two_point_config(1.5);
    const HPoint base{0.0, 0.0, 1.0};
    const EnergyReport hyp = energy_hyp_gauge(cfg, TestConformal::log_u(base));
    const EnergyReport flat = energy_flat_gauge(cfg, base);
    CHECK(hyp.energy == doctest::Approx(flat.energy).epsilon(1e-9));
    CHECK(hyp.volume == doctest::Approx(flat.volume).epsilon(1e-9));
}

TEST_CASE("averaged cone factor: finite energy inside the admissible window") {
    const MonopoleConfig cfg = two_point_config(1.0);
    const EnergyReport rep =
        energy_hyp_gauge(cfg, TestConformal::avg_neg_dist(cfg));
    CHECK(rep.converged);
    CHECK(std::isfinite(rep.energy));
    CHECK(rep.energy > 0.0);
    CHECK(rep.energy > bound_two_point_floor());
    // An averaged factor is never sharper than the round 4-sphere ceiling by
    // more than the configuration allows; sanity-bound it loosely from above.
    CHECK(rep.energy < 2.0 * bound_round_s4());
    CHECK(rep.family == TestFamily::AvgNegDist);
}

TEST_CASE("energy reports carry satisfied comparison flags") {
    const MonopoleConfig cfg = two_point_config(1.5);
    const EnergyReport rep =
        energy_hyp_gauge(cfg, TestConformal::neg_dist(cfg.points[0].pos));
    REQUIRE(!rep.comparisons.empty());
    for (const auto& cmp : rep.comparisons) {
        CAPTURE(cmp.label);
        CHECK(cmp.satisfied);
    }

    MonopoleConfig empty;
    const EnergyReport flat = energy_flat_gauge(empty);
    bool saw_equality = false;
    for (const auto& cmp : flat.comparisons)
        if (cmp.relation == '=') {
            saw_equality = true;
            CHECK(cmp.satisfied);
        }
    CHECK(saw_equality);
}

TEST_CASE("two-point sweep rows stay strictly inside the admissible window") {
    const std::vector<double> ds = {0.05, 0.4, 1.2, 3.0, 10.0};

    const auto hyp = two_point_sweep(ds, Gauge::HyperbolicGauge);
    REQUIRE(hyp.size() == ds.size());
    double prev = 0.0;
    for (const auto& row : hyp) {
        CHECK(row.ceiling == doctest::Approx(bound_cp2()).epsilon(1e-15));
        CHECK(row.has_floor);
        CHECK(row.floor_bound == doctest::Approx(bound_two_point_floor()).epsilon(1e-15));
        CHECK(row.beta > 0.0);
        CHECK(row.report.energy < row.ceiling);
        CHECK(row.report.energy > row.floor_bound);
        CHECK(row.report.converged);
        CHECK(row.report.energy > prev);  // monotone in the separation
        prev = row.report.energy;
    }

    const auto flat = two_point_sweep(ds, Gauge::ScalarFlatGauge);
    REQUIRE(flat.size() == ds.size());
    for (const auto& row : flat) {
        CHECK(row.ceiling == doctest::Approx(bound_round_s4()).epsilon(1e-15));
        CHECK_FALSE(row.has_floor);
        CHECK(row.beta > 0.0);
        CHECK(row.report.energy < row.ceiling);
    }
}

TEST_CASE("quadrature option envelope is enforced") {
    quad::Options ok;
    CHECK_NOTHROW(validate_quadrature_options(ok));

    quad::Options loose;
    loose.tol = 1e-3;  // coarser than the supported envelope
    CHECK_THROWS_AS(validate_quadrature_options(loose), std::invalid_argument);

    quad::Options nonpos;
    nonpos.tol = 0.0;
    CHECK_THROWS_AS(validate_quadrature_options(nonpos), std::invalid_argument);

    quad::Options shallow;
    shallow.rho_max = 8.0;  // truncation radius below the supported floor
    CHECK_THROWS_AS(validate_quadrature_options(shallow), std::invalid_argument);

    quad::Options starved;
    starved.max_evals_per_term = 0;
    CHECK_THROWS_AS(validate_quadrature_options(starved), std::invalid_argument);
}

TEST_CASE("closed-form integral table rows are labelled and tight") {
    const auto rows = closed_form_integrals();
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) {
        CHECK(!row.label.empty());
        CHECK(row.converged);
        CHECK(row.rel_err < 1e-6);
        CHECK(row.evals > 0);
    }
}
