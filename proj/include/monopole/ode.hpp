// ode.hpp — shooting probe for the rotationally symmetric orbifold profile
// equation on the half-line,
//
//     (n + r^2)          (n + (5 - 2n) r^2)
//     --------- f''  +  ------------------- f'  +  lambda f^3  =  0,
//     (1 + r^2)             r (1 + r^2)
//
// with f(0) = f0 > 0, f'(0) = 0.  An *admissible* profile is positive for all
// r and decays quadratically (r^2 f has a finite nonzero limit); its existence
// for some lambda is the signature of a solvable orbifold problem for the
// given cone order n.  For n = 1 the profile f = 1/(1 + r^2) is an exact
// admissible solution at lambda = 4; for n >= 2 the linearized decay exponent
// 4 - 2n degenerates and no shot is admissible.

#pragma once

#include <limits>
#include <vector>

namespace monopole {

struct OdeOptions {
    double r0 = 1e-4;    // series-to-integrator handoff radius
    double r_max = 1e3;
    double rtol = 1e-10;
    double atol = 1e-12;
    double blowup = 1e6;       // |f| beyond this counts as growth
    double drift_tol = 1e-3;   // admissibility tolerance on the r^2 f tail
    // Radii at which the trajectory is recorded (sorted internally; values in
    // [0, r0] come from the series, later ones from dense output).
    std::vector<double> sample_at;
};

enum class OdeClass { DecaysQuadratically, HitsZero, Grows, Indeterminate };
const char* ode_class_name(OdeClass c);

struct TrajectoryPoint {
    double r = 0.0;
    double f = 0.0;
    double fp = 0.0;
};

struct RadialSolution {
    OdeClass cls = OdeClass::Indeterminate;
    int n = 1;
    double lambda = 0.0;
    double f0 = 1.0;
    double r_zero = std::numeric_limits<double>::quiet_NaN();  // first zero of f
    double r_end = 0.0;
    double f_end = 0.0;
    double fp_end = 0.0;
    double tail_drift = std::numeric_limits<double>::infinity();
    double tail_value = std::numeric_limits<double>::quiet_NaN();  // r^2 f at r_max
    long long steps = 0;

    // Requested samples of (r, f, f'); truncated at the termination radius.
    std::vector<TrajectoryPoint> samples;

    // Concavity monitor (engaged for n >= 3 only): once f' < 0 at a radius
    // beyond r_sign = sqrt(n / (2n - 5)), the equation forces f'' < 0 for as
    // long as f stays positive; `concavity_persistent` records whether the
    // integrated trajectory honored that sign at every accepted step.
    double r_sign = std::numeric_limits<double>::quiet_NaN();
    bool concavity_monitored = false;
    bool concavity_persistent = true;
};

// Power-series start  f = f0 (1 + a2 r^2 + a4 r^4 + ...):
//   a2 = -lambda f0^2 / (4 n)
//   a4 = lambda f0^2 (3 lambda f0^2 + 12 - 8 n) / (64 n^2)
double series_a2(int n, double lambda, double f0 = 1.0);
double series_a4(int n, double lambda, double f0 = 1.0);

// Adaptive Dormand-Prince 5(4) shot with dense zero detection.
RadialSolution shoot(int n, double lambda, double f0 = 1.0,
                     const OdeOptions& opt = OdeOptions{});

// ---------------------------------------------------------------------------
// lambda scans
// ---------------------------------------------------------------------------

enum class ScanVerdict { AdmissibleFound, NoneOnGrid };
const char* scan_verdict_name(ScanVerdict v);

struct ScanRow {
    double lambda = 0.0;
    OdeClass cls = OdeClass::Indeterminate;
    double r_zero = std::numeric_limits<double>::quiet_NaN();
    double tail_drift = std::numeric_limits<double>::infinity();
};

struct ScanResult {
    ScanVerdict verdict = ScanVerdict::NoneOnGrid;
    std::vector<ScanRow> rows;        // grid classification
    std::vector<double> flips;        // refined class-boundary locations
    bool admissible_found = false;
    double lambda_admissible = std::numeric_limits<double>::quiet_NaN();
    double best_drift = std::numeric_limits<double>::infinity();
    // location of the survival peak (where the first zero escapes to infinity)
    double lambda_star = std::numeric_limits<double>::quiet_NaN();
    long long shots = 0;
};

// Log-spaced grid helper (count >= 2, endpoints included).
std::vector<double> log_spaced_grid(double lo, double hi, int count);

// Classifies every lambda in the (sorted, positive) grid, refines each class
// flip by bisection (down to width 1e-12, at most 200 steps each), and
// sharpens every shooting-dichotomy boundary: a shot is "over" when its tail
// r^2 f is still rising at the end radius and "under" when the profile
// crossed zero or the tail is falling; an admissible decay sits exactly on
// an over/under boundary, so each such boundary is bisected to width 1e-12.
// The verdict is AdmissibleFound iff some examined shot (grid or refinement)
// decays quadratically; NoneOnGrid is numerical evidence of nonexistence on
// that grid, not a proof.
ScanResult scan(int n, const std::vector<double>& lambdas,
                const OdeOptions& opt = OdeOptions{});

} // namespace monopole
