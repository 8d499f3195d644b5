// test_ode.cpp — the radial orbifold profile equation: series seeds, the exact
// n = 1 solution, trajectory classification, grid scans with fate-boundary
// refinement, and the concavity monitor for n >= 3.

#include "doctest.h"

#include "monopole/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace monopole;

namespace {

std::vector<double> uniform_samples(double lo, double hi, int count) {
    std::vector<double> xs;
    xs.reserve(count);
    for (int i = 0; i < count; ++i)
        xs.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    return xs;
}

} // namespace

TEST_CASE("series seeds reproduce the Taylor data of the exact n=1 profile") {
    // f = 1 / (1 + r^2) = 1 - r^2 + r^4 - ...  at n = 1, lambda = 4, f0 = 1.
    CHECK(series_a2(1, 4.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(series_a4(1, 4.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    // General formulas: a2 = -lambda f0^2 / (4n),
    // a4 = lambda f0^2 (3 lambda f0^2 + 12 - 8n) / (64 n^2).
    CHECK(series_a2(2, 3.0, 0.5) == doctest::Approx(-3.0 * 0.25 / 8.0).epsilon(1e-15));
    CHECK(series_a4(2, 3.0, 0.5) ==
          doctest::Approx(0.75 * (2.25 + 12.0 - 16.0) / 256.0).epsilon(1e-14));
    CHECK(series_a2(3, 10.0, 1.0) == doctest::Approx(-10.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("the exact n=1, lambda=4 profile is tracked to high accuracy") {
    OdeOptions opt;
    opt.sample_at = uniform_samples(1e-6, 50.0, 401);
    const RadialSolution sol = shoot(1, 4.0, 1.0, opt);

    CHECK(sol.cls == OdeClass::DecaysQuadratically);
    CHECK(sol.tail_drift < 1e-3);
    REQUIRE(sol.samples.size() == opt.sample_at.size());

    double sup_f = 0.0, sup_fp = 0.0;
    for (const auto& tp : sol.samples) {
        const double den = 1.0 + tp.r * tp.r;
        sup_f = std::max(sup_f, std::abs(tp.f - 1.0 / den));
        sup_fp = std::max(sup_fp, std::abs(tp.fp + 2.0 * tp.r / (den * den)));
    }
    CHECK(sup_f < 1e-6);
    CHECK(sup_fp < 1e-6);
}

TEST_CASE("classification: crossing, growing, and the admissible boundary") {
    const RadialSolution crossing = shoot(1, 8.0, 1.0);
    CHECK(crossing.cls == OdeClass::HitsZero);
    CHECK(std::isfinite(crossing.r_zero));
    CHECK(crossing.r_zero > 0.0);

    const RadialSolution growing = shoot(1, 0.5, 1.0);
    CHECK(growing.cls == OdeClass::Grows);

    // Crossing radius recedes as lambda grows past the critical value.
    double prev = std::numeric_limits<double>::infinity();
    for (double lam : {5.0, 6.0, 8.0, 12.0}) {
        const RadialSolution s = shoot(1, lam, 1.0);
        REQUIRE(s.cls == OdeClass::HitsZero);
        CHECK(s.r_zero < prev);
        prev = s.r_zero;
    }
}

TEST_CASE("shoot validates its arguments") {
    CHECK_THROWS_AS(shoot(0, 4.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(shoot(1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(shoot(1, -2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(shoot(1, 4.0, 0.0), std::invalid_argument);
    OdeOptions bad;
    bad.r_max = bad.r0 * 2.0;  // must exceed 10 r0
    CHECK_THROWS_AS(shoot(1, 4.0, 1.0, bad), std::invalid_argument);
}

TEST_CASE("unsorted sample requests come back sorted and dense-output smooth") {
    OdeOptions opt;
    opt.sample_at = {3.0, 0.5, 10.0, 1.0, 0.25};
    const RadialSolution sol = shoot(1, 4.0, 1.0, opt);
    REQUIRE(sol.samples.size() == 5);
    CHECK(std::is_sorted(sol.samples.begin(), sol.samples.end(),
                         [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                             return a.r < b.r;
                         }));
    for (const auto& tp : sol.samples) {
        const double den = 1.0 + tp.r * tp.r;
        CHECK(tp.f == doctest::Approx(1.0 / den).epsilon(1e-7));
    }
}

TEST_CASE("log_spaced_grid: exact endpoints, monotone interior, strict validation") {
    const auto grid = log_spaced_grid(0.1, 100.0, 60);
    REQUIRE(grid.size() == 60);
    CHECK(grid.front() == 0.1);
    CHECK(grid.back() == 100.0);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    // Log spacing: constant successive ratio.
    const double ratio = grid[1] / grid[0];
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        CHECK(grid[i + 1] / grid[i] == doctest::Approx(ratio).epsilon(1e-12));

    CHECK_THROWS_AS(log_spaced_grid(0.0, 10.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_grid(10.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_grid(1.0, 10.0, 1), std::invalid_argument);
}

TEST_CASE("n=1 scan finds the admissible decay at lambda = 4") {
    const ScanResult res = scan(1, log_spaced_grid(0.1, 100.0, 60));
    CHECK(res.verdict == ScanVerdict::AdmissibleFound);
    CHECK(res.admissible_found);
    CHECK(std::abs(res.lambda_admissible - 4.0) < 1e-3);
    CHECK(std::abs(res.lambda_star - 4.0) < 1e-3);
    CHECK(res.best_drift < 1e-3);
    CHECK(res.rows.size() == 60);
    CHECK(res.shots >= 60);
    CHECK(!res.flips.empty());
    // The class flips bracket the admissible value from below.
    CHECK(std::any_of(res.flips.begin(), res.flips.end(),
                      [](double f) { return std::abs(f - 4.0) < 0.01; }));
}

TEST_CASE("n >= 2 scans find no admissible decay on the standard grid") {
    for (int n : {2, 3, 4, 5}) {
        CAPTURE(n);
        const ScanResult res = scan(n, log_spaced_grid(0.1, 100.0, 60));
        CHECK(res.verdict == ScanVerdict::NoneOnGrid);
        CHECK_FALSE(res.admissible_found);
        CHECK(res.rows.size() == 60);
        for (const auto& row : res.rows)
            CHECK(row.cls != OdeClass::DecaysQuadratically);
    }
}

TEST_CASE("scan validates its grid") {
    CHECK_THROWS_AS(scan(1, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(scan(1, {2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(scan(1, {-1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("concavity monitor: persistent for n >= 3 across the lambda grid") {
    for (int n : {3, 4, 5}) {
        CAPTURE(n);
        int monitored = 0;
        for (double lam : log_spaced_grid(0.1, 100.0, 12)) {
            const RadialSolution s = shoot(n, lam, 1.0);
            CHECK(s.concavity_persistent);
            if (s.concavity_monitored) ++monitored;
            CHECK(s.r_sign ==
                  doctest::Approx(std::sqrt(n / (2.0 * n - 5.0))).epsilon(1e-12));
        }
        CHECK(monitored > 0);
    }
    // Below the threshold dimension the monitor stays disarmed.
    const RadialSolution low = shoot(2, 1.0, 1.0);
    CHECK_FALSE(low.concavity_monitored);
}

TEST_CASE("name helpers cover every enumerator") {
    CHECK(std::string(ode_class_name(OdeClass::DecaysQuadratically)) ==
          "DecaysQuadratically");
    CHECK(std::string(ode_class_name(OdeClass::HitsZero)) == "HitsZero");
    CHECK(std::string(ode_class_name(OdeClass::Grows)) == "Grows");
    CHECK(std::string(ode_class_name(OdeClass::Indeterminate)) == "Indeterminate");
    CHECK(std::string(scan_verdict_name(ScanVerdict::AdmissibleFound)) ==
          "AdmissibleFound");
    CHECK(std::string(scan_verdict_name(ScanVerdict::NoneOnGrid)) == "NoneOnGrid");
}
