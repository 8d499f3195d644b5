// yamabe.hpp — test energies of the monopole metrics and closed-form benchmarks.
//
// For a configuration with potential V = 1 + sum_k m_k green(rho_k) and a test
// conformal factor f, the hyperbolic-gauge energy is
//
//        2 pi  INT  6 e^{2f} (-1 - Lap f - |grad f|^2)  dV_H
//   E = ------------------------------------------------------ ,
//            [ 2 pi  INT  e^{4f} V  dV_H ]^{1/2}
//
// the quotient of total-scalar-curvature and volume functionals of the
// candidate 4-metric (the 2 pi factors are the fiber period).  The scalar-flat
// gauge energy is the same quotient for the round background factor, whose
// curvature integral is available in closed form.
//
// Every energy is an upper bound for the Yamabe constant of the conformal
// class, which drives the comparison flags attached to each report.

#pragma once

#include "monopole/conformal.hpp"
#include "monopole/quadrature.hpp"

#include <string>
#include <vector>

namespace monopole {

enum class Gauge { HyperbolicGauge, ScalarFlatGauge };

const char* gauge_name(Gauge g);

// One benchmark comparison: `relation` is '<' when the energy is expected to
// lie at or below `value`, '>' for a floor, '=' for a closed-form equality.
struct Comparison {
    std::string label;
    double value = 0.0;
    char relation = '<';
    bool satisfied = false;
};

struct EnergyReport {
    Gauge gauge = Gauge::HyperbolicGauge;
    TestFamily family = TestFamily::LogU;
    long long total_charge = 0;

    double energy = 0.0;
    double numerator = 0.0;  // includes the 2 pi fiber factor
    double volume = 0.0;     // includes the 2 pi fiber factor
    double numerator_error = 0.0;
    double volume_error = 0.0;
    double energy_error = 0.0;
    double tail_bound = 0.0;  // truncation estimate beyond rho_max, both integrals

    long long evals = 0;
    quad::Scheme scheme_used = quad::Scheme::Radial1D;
    bool converged = true;

    std::vector<Comparison> comparisons;
    std::vector<quad::TermResult> numerator_terms;
    std::vector<quad::TermResult> volume_terms;
};

// Rejects quadrature options outside the supported envelope: the truncation
// radius must be at least 10 and the relative tolerance in (0, 1e-4].
void validate_quadrature_options(const quad::Options& opt);

// ---------------------------------------------------------------------------
// closed-form benchmark values
// ---------------------------------------------------------------------------

double bound_round_s4();               // 8 pi sqrt(6):  round 4-sphere
double bound_cp2();                    // 12 pi sqrt(2): Fubini-Study class
double bound_multi_fold(long long n);  // 12 pi sqrt(6)/sqrt(n+2): one n-fold point
double bound_round_negdist();          // 12 sqrt(3) pi: cone factor on the round class
double bound_two_point_floor();        // 8 pi sqrt(3): floor for two unit points

// Football ceiling 8 pi sqrt(6) / sqrt(m) for the quotient by a cyclic group
// of order m (m = 1 is the round sphere).
double bound_orbifold(long long m);

// Self-dual floor 4 pi sqrt(6) sqrt(4 - n) for n unit points; vacuous (and
// rejected) for n > 3.
double bound_selfdual_lower(long long n);

// Sufficient criterion for solvability of the orbifold problem on the
// configuration with the given multiplicities: the global test value undercuts
// every local football ceiling iff  9 * max_mult < 4 (N + 2)  (strictly),
// N the total multiplicity.
enum class OrbifoldExistence { SolvableByCorollary, Inconclusive };
OrbifoldExistence orbifold_existence_test(const std::vector<long long>& mults);

const char* orbifold_existence_name(OrbifoldExistence v);

// ---------------------------------------------------------------------------
// closed-form integral table
// ---------------------------------------------------------------------------

// One row of the radial-integral benchmark table.
struct ClosedFormRow {
    std::string label;
    double computed = 0.0;
    double exact = 0.0;
    double rel_err = 0.0;
    double error_estimate = 0.0;
    long long evals = 0;
    bool converged = false;
};

// Quadrature vs closed form for the two radial integrals:
//   INT (1 + green) e^{-4 rho} dV_H            = pi/4
//   INT (1 + N green) e^{-4 rho} dV_H          = (N + 2) pi / 12,   N = 1..8.
std::vector<ClosedFormRow> closed_form_integrals(const quad::Options& opt = {});

// ---------------------------------------------------------------------------
// energies
// ---------------------------------------------------------------------------

// Hyperbolic-gauge energy for an arbitrary test factor.  AvgNegDist factors
// must be built from the same configuration.
EnergyReport energy_hyp_gauge(const MonopoleConfig& cfg, const TestConformal& tc,
                              const quad::Options& opt = {});

// Scalar-flat-gauge energy (round background factor based at `base`).  Its
// curvature numerator is the closed form 32 pi^2; only the volume is integrated.
EnergyReport energy_flat_gauge(const MonopoleConfig& cfg,
                               const HPoint& base = HPoint{0.0, 0.0, 1.0},
                               const quad::Options& opt = {});

// ---------------------------------------------------------------------------
// two-point sweep
// ---------------------------------------------------------------------------

// One sample of the separation sweep: the symmetric two-point configuration
// at hyperbolic distance d, its energy report, the relevant ceiling, and the
// gap beta = ceiling - energy (positive when the strict bound holds).
struct TwoPointSweepRow {
    double d = 0.0;
    EnergyReport report;
    double ceiling = 0.0;
    double beta = 0.0;
    double floor_bound = 0.0;  // meaningful when has_floor
    bool has_floor = false;
};

// Sweeps the symmetric two-unit-point family p1 = (0,0,e^{d/2}),
// p2 = (0,0,e^{-d/2}) over the given separations.  HyperbolicGauge uses the
// cone factor f = -rho_{p1} (ceiling 12 pi sqrt2, floor 8 pi sqrt3);
// ScalarFlatGauge uses the round background factor (ceiling 8 pi sqrt6).
std::vector<TwoPointSweepRow> two_point_sweep(const std::vector<double>& d_values,
                                              Gauge gauge,
                                              const quad::Options& opt = {});

} // namespace monopole
