// ode.cpp — Dormand-Prince 5(4) shooting for the orbifold profile equation,
// with cubic-Hermite dense output for zero location, trajectory sampling, the
// r^2 f tail monitor, and the n >= 3 concavity monitor.

#include "monopole/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace monopole {

namespace {

struct State {
    double f = 0.0;
    double fp = 0.0;
};

// First-order form of  Qhat f'' + P f' + lambda f^3 = 0  with
// Qhat = (n + r^2)/(1 + r^2) and P = (n + (5 - 2n) r^2)/(r (1 + r^2)).
State deriv(int n, double lambda, double r, const State& y) {
    const double r2 = r * r;
    const double qhat = (n + r2) / (1.0 + r2);
    const double p = (n + (5.0 - 2.0 * n) * r2) / (r * (1.0 + r2));
    State d;
    d.f = y.fp;
    d.fp = -(p * y.fp + lambda * y.f * y.f * y.f) / qhat;
    return d;
}

double second_derivative(int n, double lambda, double r, const State& y) {
    return deriv(n, lambda, r, y).fp;
}

State axpy(const State& y, double h, const State& d) {
    return State{y.f + h * d.f, y.fp + h * d.fp};
}

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0,
                 A63 = 46732.0 / 5247.0, A64 = 49.0 / 176.0,
                 A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

// Cubic Hermite interpolant over one accepted step [r, r + h]; t in [0, 1].
double hermite_f(double t, double h, const State& y0, const State& d0,
                 const State& y1, const State& d1) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * y0.f + (t3 - 2.0 * t2 + t) * h * d0.f +
           (-2.0 * t3 + 3.0 * t2) * y1.f + (t3 - t2) * h * d1.f;
}

double hermite_fp(double t, double h, const State& y0, const State& d0,
                  const State& y1, const State& d1) {
    const double t2 = t * t;
    return (6.0 * t2 - 6.0 * t) * (y0.f - y1.f) / h +
           (3.0 * t2 - 4.0 * t + 1.0) * d0.f + (3.0 * t2 - 2.0 * t) * d1.f;
}

double series_f(int n, double lambda, double f0, double r) {
    const double a2 = series_a2(n, lambda, f0);
    const double a4 = series_a4(n, lambda, f0);
    const double r2 = r * r;
    return f0 * (1.0 + a2 * r2 + a4 * r2 * r2);
}

double series_fp(int n, double lambda, double f0, double r) {
    const double a2 = series_a2(n, lambda, f0);
    const double a4 = series_a4(n, lambda, f0);
    return f0 * (2.0 * a2 * r + 4.0 * a4 * r * r * r);
}

constexpr int kTailCount = 33;

} // namespace

const char* ode_class_name(OdeClass c) {
    switch (c) {
        case OdeClass::DecaysQuadratically: return "DecaysQuadratically";
        case OdeClass::HitsZero: return "HitsZero";
        case OdeClass::Grows: return "Grows";
        case OdeClass::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

const char* scan_verdict_name(ScanVerdict v) {
    return v == ScanVerdict::AdmissibleFound ? "AdmissibleFound" : "NoneOnGrid";
}

double series_a2(int n, double lambda, double f0) {
    if (n < 1) throw std::invalid_argument("series_a2: cone order n must be >= 1");
    return -lambda * f0 * f0 / (4.0 * n);
}

double series_a4(int n, double lambda, double f0) {
    if (n < 1) throw std::invalid_argument("series_a4: cone order n must be >= 1");
    const double lf2 = lambda * f0 * f0;
    return lf2 * (3.0 * lf2 + 12.0 - 8.0 * n) / (64.0 * n * n);
}

RadialSolution shoot(int n, double lambda, double f0, const OdeOptions& opt) {
    if (n < 1) throw std::invalid_argument("shoot: cone order n must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("shoot: lambda must be positive and finite");
    if (!(f0 > 0.0)) throw std::invalid_argument("shoot: f0 must be positive");
    if (!(opt.r0 > 0.0) || !(opt.r_max > 10.0 * opt.r0))
        throw std::invalid_argument("shoot: need 0 < r0 and r_max > 10 r0");

    RadialSolution out;
    out.n = n;
    out.lambda = lambda;
    out.f0 = f0;
    if (n >= 3) out.r_sign = std::sqrt(double(n) / (2.0 * n - 5.0));

    // Requested trajectory samples, sorted ascending.
    std::vector<double> want = opt.sample_at;
    std::sort(want.begin(), want.end());
    std::size_t wi = 0;
    // Series handles everything at or below the handoff radius.
    while (wi < want.size() && want[wi] <= opt.r0) {
        const double r = std::max(want[wi], 0.0);
        out.samples.push_back(
            {r, series_f(n, lambda, f0, r), series_fp(n, lambda, f0, r)});
        ++wi;
    }

    // Tail checkpoints: log-spaced over the last decade [r_max/10, r_max].
    std::vector<double> tail_r(kTailCount);
    const double tail_lo = opt.r_max / 10.0;
    for (int i = 0; i < kTailCount; ++i)
        tail_r[i] = tail_lo * std::pow(10.0, double(i) / double(kTailCount - 1));
    tail_r.back() = opt.r_max;
    std::vector<double> tail_g;
    tail_g.reserve(kTailCount);
    std::size_t ti = 0;

    double r = opt.r0;
    State y{series_f(n, lambda, f0, r), series_fp(n, lambda, f0, r)};
    State d0 = deriv(n, lambda, r, y);
    double h = opt.r0 / 8.0;
    bool crossed = false;
    bool blew_up = false;

    const auto record_window = [&](double r_old, double hstep, const State& y0,
                                   const State& k_first, const State& y1,
                                   const State& k_last, double r_limit) {
        while (wi < want.size() && want[wi] <= r_limit * (1.0 + 1e-14)) {
            const double t = std::clamp((want[wi] - r_old) / hstep, 0.0, 1.0);
            out.samples.push_back({want[wi],
                                   hermite_f(t, hstep, y0, k_first, y1, k_last),
                                   hermite_fp(t, hstep, y0, k_first, y1, k_last)});
            ++wi;
        }
    };

    while (r < opt.r_max && !crossed && !blew_up) {
        if (r + h > opt.r_max) h = opt.r_max - r;
        // Never skip a tail checkpoint inside a single step.
        if (ti < tail_r.size() && r + h > tail_r[ti] && tail_r[ti] > r)
            h = tail_r[ti] - r;

        const State k1 = d0;
        const State k2 = deriv(n, lambda, r + A21 * h, axpy(y, h * A21, k1));
        const State k3 =
            deriv(n, lambda, r + 0.3 * h,
                  State{y.f + h * (A31 * k1.f + A32 * k2.f),
                        y.fp + h * (A31 * k1.fp + A32 * k2.fp)});
        const State k4 =
            deriv(n, lambda, r + 0.8 * h,
                  State{y.f + h * (A41 * k1.f + A42 * k2.f + A43 * k3.f),
                        y.fp + h * (A41 * k1.fp + A42 * k2.fp + A43 * k3.fp)});
        const State k5 = deriv(
            n, lambda, r + 8.0 / 9.0 * h,
            State{y.f + h * (A51 * k1.f + A52 * k2.f + A53 * k3.f + A54 * k4.f),
                  y.fp +
                      h * (A51 * k1.fp + A52 * k2.fp + A53 * k3.fp + A54 * k4.fp)});
        const State k6 =
            deriv(n, lambda, r + h,
                  State{y.f + h * (A61 * k1.f + A62 * k2.f + A63 * k3.f +
                                   A64 * k4.f + A65 * k5.f),
                        y.fp + h * (A61 * k1.fp + A62 * k2.fp + A63 * k3.fp +
                                    A64 * k4.fp + A65 * k5.fp)});
        const State y5{
            y.f + h * (B1 * k1.f + B3 * k3.f + B4 * k4.f + B5 * k5.f + B6 * k6.f),
            y.fp +
                h * (B1 * k1.fp + B3 * k3.fp + B4 * k4.fp + B5 * k5.fp + B6 * k6.fp)};
        const State k7 = deriv(n, lambda, r + h, y5);

        const double err_f = h * (E1 * k1.f + E3 * k3.f + E4 * k4.f + E5 * k5.f +
                                  E6 * k6.f + E7 * k7.f);
        const double err_fp = h * (E1 * k1.fp + E3 * k3.fp + E4 * k4.fp +
                                   E5 * k5.fp + E6 * k6.fp + E7 * k7.fp);
        const double scale_f =
            opt.atol + opt.rtol * std::max(std::abs(y.f), std::abs(y5.f));
        const double scale_fp =
            opt.atol + opt.rtol * std::max(std::abs(y.fp), std::abs(y5.fp));
        const double err = std::sqrt(0.5 * ((err_f / scale_f) * (err_f / scale_f) +
                                            (err_fp / scale_fp) * (err_fp / scale_fp)));

        if (err <= 1.0) {
            const double r_new = r + h;
            ++out.steps;

            double r_limit = r_new;
            if (y.f > 0.0 && y5.f <= 0.0) {
                // Locate the first zero by bisection on the dense output.
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (hermite_f(mid, h, y, k1, y5, k7) > 0.0 ? lo : hi) = mid;
                }
                const double tz = 0.5 * (lo + hi);
                out.r_zero = r + tz * h;
                out.f_end = 0.0;
                out.fp_end = hermite_fp(tz, h, y, k1, y5, k7);
                out.r_end = out.r_zero;
                crossed = true;
                r_limit = out.r_zero;
            }

            record_window(r, h, y, k1, y5, k7, r_limit);

            // Tail checkpoints reached during this step (dense output keeps
            // the drift measurement independent of the step pattern).
            while (ti < tail_r.size() && r_new >= tail_r[ti] * (1.0 - 1e-14) &&
                   (!crossed || tail_r[ti] <= r_limit)) {
                const double t = std::clamp((tail_r[ti] - r) / h, 0.0, 1.0);
                const double fv = hermite_f(t, h, y, k1, y5, k7);
                tail_g.push_back(tail_r[ti] * tail_r[ti] * fv);
                ++ti;
            }

            if (!crossed) {
                // Concavity monitor: for n >= 3, past r_sign the coefficient P
                // is negative, so f > 0 and f' < 0 force f'' < 0.
                if (n >= 3 && y5.f > 0.0 && y5.fp < 0.0 && r_new > out.r_sign) {
                    out.concavity_monitored = true;
                    if (second_derivative(n, lambda, r_new, y5) >= 0.0)
                        out.concavity_persistent = false;
                }
                if (std::abs(y5.f) > opt.blowup * f0 || !std::isfinite(y5.f)) {
                    blew_up = true;
                    out.r_end = r_new;
                    out.f_end = y5.f;
                    out.fp_end = y5.fp;
                }
            }

            r = r_new;
            y = y5;
            d0 = k7;  // FSAL
        }

        const double safety =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= safety;
        if (!(h > r * 1e-15 || h > 1e-300))
            throw std::runtime_error("shoot: step size underflow at r = " +
                                     std::to_string(r));
    }

    if (crossed) {
        out.cls = OdeClass::HitsZero;
        return out;
    }
    if (!blew_up) {
        out.r_end = r;
        out.f_end = y.f;
        out.fp_end = y.fp;
    }
    if (!tail_g.empty()) out.tail_value = tail_g.back();

    if (blew_up) {
        out.cls = OdeClass::Grows;
        return out;
    }
    if (y.f > 0.0 && tail_g.size() == std::size_t(kTailCount)) {
        const auto [mn, mx] = std::minmax_element(tail_g.begin(), tail_g.end());
        const double spread = *mx - *mn;
        const double base = std::max(std::abs(tail_g.back()), 1e-300);
        out.tail_drift = spread / base;
        if (out.tail_drift < opt.drift_tol) {
            out.cls = OdeClass::DecaysQuadratically;
        } else if (tail_g.front() > 0.0 && tail_g.back() >= 10.0 * tail_g.front()) {
            out.cls = OdeClass::Grows;
        } else {
            out.cls = OdeClass::Indeterminate;
        }
    } else {
        out.cls = OdeClass::Indeterminate;
    }
    return out;
}

// ---------------------------------------------------------------------------
// scans
// ---------------------------------------------------------------------------

std::vector<double> log_spaced_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("log_spaced_grid: need 0 < lo < hi");
    if (count < 2) throw std::invalid_argument("log_spaced_grid: count must be >= 2");
    std::vector<double> grid(count);
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * double(i) / double(count - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

namespace {

// Shooting dichotomy: a shot is "over" when it never crossed and its tail
// r^2 f is still rising at the end radius (toward a plateau or growth), and
// "under" when it crossed zero or the tail is falling toward a later
// crossing.  A quadratically decaying profile sits exactly on the boundary,
// so bisecting an over/under flip converges onto the admissible lambda.
bool fate_over(const RadialSolution& s) {
    if (std::isfinite(s.r_zero)) return false;                  // crossed
    return 2.0 * s.f_end + s.r_end * s.fp_end >= 0.0;           // (r^2 f)' sign
}

} // namespace

ScanResult scan(int n, const std::vector<double>& lambdas, const OdeOptions& opt) {
    if (lambdas.size() < 2)
        throw std::invalid_argument("scan: need at least two grid points");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i]))
            throw std::invalid_argument("scan: grid point " + std::to_string(i) +
                                        " must be positive and finite");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
            throw std::invalid_argument("scan: grid must be strictly increasing");
    }

    OdeOptions shot_opt = opt;
    shot_opt.sample_at.clear();  // scans never need trajectories

    ScanResult out;
    double best_admissible_drift = std::numeric_limits<double>::infinity();
    const auto probe = [&](double lambda) -> RadialSolution {
        RadialSolution s = shoot(n, lambda, 1.0, shot_opt);
        ++out.shots;
        if (std::isfinite(s.tail_drift) && s.tail_drift < out.best_drift)
            out.best_drift = s.tail_drift;
        if (s.cls == OdeClass::DecaysQuadratically &&
            s.tail_drift < best_admissible_drift) {
            best_admissible_drift = s.tail_drift;
            out.lambda_admissible = s.lambda;
            out.admissible_found = true;
        }
        return s;
    };

    std::vector<RadialSolution> grid_shots;
    grid_shots.reserve(lambdas.size());
    for (double lam : lambdas) {
        RadialSolution s = probe(lam);
        out.rows.push_back({lam, s.cls, s.r_zero, s.tail_drift});
        grid_shots.push_back(std::move(s));
    }

    // Refine every classification flip between adjacent grid points.
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
        if (grid_shots[i].cls == grid_shots[i + 1].cls) continue;
        double la = lambdas[i];
        double lb = lambdas[i + 1];
        const OdeClass left = grid_shots[i].cls;
        for (int it = 0; it < 200 && lb - la > 1e-12; ++it) {
            const double mid = 0.5 * (la + lb);
            (probe(mid).cls == left ? la : lb) = mid;
        }
        out.flips.push_back(0.5 * (la + lb));
    }

    // Shooting-dichotomy refinement: bisect every over/under fate boundary.
    // A decaying profile between two grid nodes sits on such a boundary, so
    // the probes of the final bisection steps land close enough to classify
    // as DecaysQuadratically when an admissible lambda exists.
    double last_boundary = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
        const bool left_over = fate_over(grid_shots[i]);
        if (left_over == fate_over(grid_shots[i + 1])) continue;
        double la = lambdas[i];
        double lb = lambdas[i + 1];
        for (int it = 0; it < 200 && lb - la > 1e-12; ++it) {
            const double mid = 0.5 * (la + lb);
            (fate_over(probe(mid)) == left_over ? la : lb) = mid;
        }
        last_boundary = 0.5 * (la + lb);
    }

    if (out.admissible_found) {
        out.lambda_star = out.lambda_admissible;
    } else if (std::isfinite(last_boundary)) {
        out.lambda_star = last_boundary;
    } else {
        // No boundary at all: report the grid shot that survived longest.
        std::size_t ibest = 0;
        double best_key = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < grid_shots.size(); ++i) {
            const double key = std::isfinite(grid_shots[i].r_zero)
                                   ? grid_shots[i].r_zero
                                   : grid_shots[i].r_end;
            if (key > best_key) {
                best_key = key;
                ibest = i;
            }
        }
        out.lambda_star = lambdas[ibest];
    }

    out.verdict = out.admissible_found ? ScanVerdict::AdmissibleFound
                                       : ScanVerdict::NoneOnGrid;
    return out;
}

} // namespace monopole
