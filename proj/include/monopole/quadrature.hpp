// quadrature.hpp — adaptive integration over hyperbolic 3-space.
//
// Integrals are specified as sums of *terms*
//     coefficient * smooth(x) * [green(dist(x, anchor_g))]   dV_H
// where `smooth` is a bounded factor evaluated from the cosh-distances to a
// fixed list of anchor points, and the optional Green factor carries the only
// (integrable) singularity.  Each term is integrated in geodesic polar
// coordinates about one of the anchors, which absorbs the Green pole into the
// volume element.
//
// Three concrete schemes:
//   Radial1D       exact reduction to a 1-d radial integral.  Used when the
//                  smooth factor is radial about the term's center; Green
//                  factors at other anchors are folded in *exactly* through
//                  the spherical-mean identity
//                      avg over the sphere S(c, s) of green(dist(., p))
//                        = green(max(s, dist(c, p))),
//                  valid because green is harmonic away from its pole and has
//                  matched flux through every sphere enclosing it.
//   Axisymmetric2D polar (s, theta) about the center, with the azimuthal
//                  angle integrated out; valid when all anchors lie on one
//                  geodesic.  Cosh-distances to the anchors are evaluated by
//                  a cancellation-free law of cosines.
//   Tensor3D       full polar coordinates about the center.
//
// The 2-d/3-d schemes are h-adaptive on cells with an embedded pair of
// Gauss-Legendre rules; the initial mesh is seeded at the anchor radii and
// with a geometric angular ladder so that exponentially narrow far-field
// features (angular width ~ e^{-d} at anchor distance d) are never missed.
// All refinement decisions and summations are deterministic.

#pragma once

#include "monopole/hgeom.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace monopole::quad {

enum class Scheme { Auto, Radial1D, Axisymmetric2D, Tensor3D };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct Options {
    double tol = 1e-7;        // relative tolerance per term (see notes below)
    double rho_max = 30.0;    // truncation radius from each term's center
    Scheme scheme = Scheme::Auto;
    bool mean_reduction = true;  // allow the spherical-mean 1-d shortcut
    long long max_evals_per_term = 40000000;
};

// Smooth factor from cm1 = cosh(dist to anchor) - 1, one entry per anchor.
using SmoothFn = std::function<double(std::span<const double>)>;
// Radial presentation of the same factor (argument: geodesic radius from the
// term's center), when the factor is radially symmetric about that center.
using RadialFn = std::function<double(double)>;

struct Term {
    double coefficient = 1.0;
    int green_anchor = -1;           // -1: no Green factor
    int center = 0;                  // polar center for the 2-d/3-d schemes
    int radial_center = 0;           // anchor about which `radial` is radial
    SmoothFn smooth;                 // required for 2-d / 3-d evaluation
    std::optional<RadialFn> radial;  // enables the 1-d scheme
    std::string label;
};

struct IntegralSpec {
    std::vector<HPoint> anchors;
    std::vector<Term> terms;
};

struct TermResult {
    std::string label;
    double value = 0.0;
    double error = 0.0;          // rule-difference estimate + truncation tail
    double tail = 0.0;           // truncation tail alone (part of `error`)
    long long evals = 0;
    Scheme scheme_used = Scheme::Radial1D;
    bool converged = true;
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
    double tail = 0.0;           // summed truncation tails of the terms
    long long evals = 0;
    Scheme scheme_used = Scheme::Radial1D;  // coarsest used by any term
    bool converged = true;
    std::vector<TermResult> terms;
};

IntegralResult integrate(const IntegralSpec& spec, const Options& opt);

// True if the anchor set lies on a single geodesic (within a strict relative
// residual); trivially true for fewer than three anchors.
bool anchors_collinear(const std::vector<HPoint>& anchors);

// Deterministic sum: sorts by magnitude, then reduces pairwise.
double stable_sum(std::vector<double> xs);

// Nodes/weights of the n-point Gauss-Legendre rule on [0, 1] (cached).
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace monopole::quad
