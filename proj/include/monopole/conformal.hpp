// conformal.hpp — test conformal factors on hyperbolic 3-space and their calculus.
//
// A test factor is a function f on H^3; the associated 4-metric candidate is
// e^{2f} (g_H + fiber term), and the quantities below (Laplacian, gradient
// square, curvature density) are the ingredients of the test energies.
//
// Families:
//   NegDist     f = -dist(., c)                       (cone of constant slope)
//   AvgNegDist  f = -(1/n) sum_i dist(., p_i)         (averaged over the
//               configuration points, unweighted by charge)
//   LogU        f = -log cosh dist(., c)              (round background factor;
//               e^f / z is the classical round-sphere potential)
//
// All closed forms are arranged around cm1 = cosh(rho) - 1, which every caller
// can produce without cancellation.

#pragma once

#include "monopole/hgeom.hpp"

#include <vector>

namespace monopole {

enum class TestFamily { NegDist, AvgNegDist, LogU };

struct TestConformal {
    TestFamily family = TestFamily::LogU;
    HPoint center;                 // NegDist / LogU base point
    std::vector<HPoint> anchors;   // AvgNegDist distance anchors

    static TestConformal neg_dist(const HPoint& center);
    static TestConformal log_u(const HPoint& center);
    // Anchors are the configuration points; each enters the average once,
    // regardless of its charge.  Requires a non-empty configuration.
    static TestConformal avg_neg_dist(const MonopoleConfig& cfg);
};

const char* family_name(TestFamily f);

// ---------------------------------------------------------------------------
// pointwise calculus (primarily for tests and curvature evaluation)
// ---------------------------------------------------------------------------

// f(p)
double value_f(const TestConformal& tc, const HPoint& p);

// Hyperbolic Laplacian of f at p.  Closed forms:
//   NegDist:    -2 coth(rho)
//   AvgNegDist: -(2/n) sum_i coth(rho_i)
//   LogU:       -sech^2(rho) - 2
// Throws std::domain_error at a distance anchor (NegDist / AvgNegDist only).
double laplacian_f(const TestConformal& tc, const HPoint& p);

// |grad f|^2 with respect to g_H.  NegDist: 1.  LogU: tanh^2(rho).
// AvgNegDist: pairwise law-of-cosines expansion
//   (1/n^2) sum_{ij} (cosh rho_i cosh rho_j - cosh d_ij)/(sinh rho_i sinh rho_j),
// clamped into [0, 1] (the analytic value never exceeds 1; the clamp removes
// rounding noise of the 0/0 limit next to an anchor).
double grad_sq_f(const TestConformal& tc, const HPoint& p);

// X = -1 - laplacian(f) - |grad f|^2, through cancellation-free folds:
//   NegDist:    4 green(rho)                     (uses coth(rho) - 1 = 2 green(rho))
//   AvgNegDist: (4/n) sum_i green(rho_i) + (1 - |grad f|^2)
//   LogU:       2 sech^2(rho)
// Non-negative for every family.
double x_factor(const TestConformal& tc, const HPoint& p);

// Curvature density 6 e^{2f} X; the integrand of the energy numerator.
double numerator_density(const TestConformal& tc, const HPoint& p);

// ---------------------------------------------------------------------------
// scalar curvature of the candidate metrics
// ---------------------------------------------------------------------------

// Scalar curvature of the 4-metric built from (cfg, tc) in the hyperbolic
// gauge:  R = 6 X e^{-2f} / V.
double scalar_curvature_hyp(const MonopoleConfig& cfg, const TestConformal& tc,
                            const HPoint& p);

// Scalar curvature of the same conformal class presented in the scalar-flat
// gauge (round background factor):  R = 12 / V.  Coincides with the
// hyperbolic-gauge value for the LogU factor based at the same point.
double scalar_curvature_flat_gauge(const MonopoleConfig& cfg, const HPoint& p);

// ---------------------------------------------------------------------------
// spherical compactifier
// ---------------------------------------------------------------------------

// The compactifying potential u based at p0 = (0, 0, 1):
//   u(p) = sech(rho_0(p)) / z = 2 / (1 + x^2 + y^2 + z^2),
// with 0 < u <= 1 and maximum 1 at p0.  Both closed forms are exposed so they
// can be checked against each other.
struct Compactifier {
    HPoint p0{0.0, 0.0, 1.0};

    double value(const HPoint& p) const;           // 2 / (1 + |p|^2) route
    double value_via_sech(const HPoint& p) const;  // sech(rho_0) / z route
};

// Maximum absolute residual, over a grid of half-space points, of the identity
//   Delta_euc u + z^{-1} du/dz = -2 u^3
// evaluated from the analytic derivatives of u = 2 / (1 + |p|^2).
double check_ueqn(std::span<const HPoint> grid);

// Same residual with the left-hand side rebuilt by central finite differences
// of u itself (step h); an independent route with O(h^2) accuracy.
double check_ueqn_fd(std::span<const HPoint> grid, double h);

// ---------------------------------------------------------------------------
// negative-mass metric coefficients
// ---------------------------------------------------------------------------

// Radial data of the negative-mass family indexed by n >= 1: the radicand of
// the metric is 1 + A r^{-2} + B r^{-4} with A = n - 2, B = 1 - n (so it
// vanishes at r = 1), and the mass is -4 pi^2 (n - 2) (negative iff n > 2).
struct OLnCoefficients {
    int n = 1;
    double A = -1.0;
    double B = 0.0;
    double mass = 0.0;
};

OLnCoefficients oln_coefficients(int n);

// Metric coefficients after the change of coordinates rhat^2 = r^2 - 1:
//   radial  (1 + rhat^2) / (n + rhat^2)
//   sphere  1 + rhat^2
//   fiber   rhat^2 (n + rhat^2) / (n^2 (1 + rhat^2))
// The fiber coefficient vanishes at rhat = 0 (the bolt).
struct OLnProfile {
    double radial = 0.0;
    double sphere = 0.0;
    double fiber = 0.0;
};

OLnProfile oln_profile(int n, double rhat);

// ---------------------------------------------------------------------------
// shared stable helpers (used by the quadrature integrands as well)
// ---------------------------------------------------------------------------

// rho from cm1 = cosh(rho) - 1:  rho = log1p(cm1 + sqrt(cm1 (cm1 + 2))).
double rho_from_coshm1(double cm1);

// e^{-2 rho} from cm1, without forming rho.
double exp_m2rho_from_coshm1(double cm1);

// coth(rho) - 1 = 2 green(rho), from cm1.
double cothm1_from_coshm1(double cm1);

} // namespace monopole
