// hgeom.hpp — hyperbolic 3-space primitives (upper half-space + hyperboloid models).
//
// Conventions:
//   * Upper half-space model: points (x, y, z) with z > 0, metric z^{-2} (dx^2+dy^2+dz^2).
//   * Distances are returned in hyperbolic units; all formulas are arranged to be
//     cancellation-free for both tiny and large separations.
//   * The hyperboloid (Minkowski) model is used internally for frame/axis geometry;
//     signature is (+,+,+,-) and embedded points satisfy <X,X> = -1, X.t > 0.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace monopole {

// ---------------------------------------------------------------------------
// points and configurations
// ---------------------------------------------------------------------------

// Point of the upper half-space model. z must be positive.
struct HPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;
};

// A monopole point: a location together with an integer charge (multiplicity >= 1).
struct MonopolePoint {
    HPoint pos;
    long long charge = 1;
};

// Tag for an ideal boundary point of the half-space model (the z = 0 plane plus
// the point at infinity); carries only the Euclidean footprint when finite.
// Used by the degeneration module to label escaping limit points; no boundary
// geometry is attached to it.
struct BoundaryPoint {
    double x = 0.0;
    double y = 0.0;
    bool at_infinity = false;
};

// A finite monopole configuration. May be empty (round background).
struct MonopoleConfig {
    std::vector<MonopolePoint> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    long long total_charge() const;
};

// Throws std::invalid_argument if any point has z <= 0, a non-positive charge,
// or two points closer than min_separation (hyperbolic distance).
void validate_config(const MonopoleConfig& cfg, double min_separation = 1e-10);

// ---------------------------------------------------------------------------
// distances, Green's function, potential
// ---------------------------------------------------------------------------

// cosh(dist) - 1 for two half-space points; exact rational expression
//   coshm1 = |p - q|_euc^2 / (2 z_p z_q),
// free of cancellation at any separation.
double cosh_dist_m1(const HPoint& p, const HPoint& q);

// Hyperbolic distance, evaluated as 2 asinh(sqrt(coshm1/2)); stable for
// coincident and far-apart points alike.
double dist_h(const HPoint& p, const HPoint& q);

// Green-type profile of the hyperbolic Laplacian at distance rho from its pole:
//   green(rho) = 1 / (e^{2 rho} - 1),
// normalized so that  (Delta_H - ...) picks up the standard point source used by
// the monopole potential.  green_from_coshm1 evaluates the same function from
// cosh(rho) - 1 without forming rho (cancellation-free near the pole).
double green(double rho);
double green_from_coshm1(double cm1);

// Monopole potential  V(p) = 1 + sum_k charge_k * green(dist(p, p_k)).
// Throws std::domain_error when p is within pole_guard of a monopole point.
double potential_v(const MonopoleConfig& cfg, const HPoint& p,
                   double pole_guard = 1e-8);

// ---------------------------------------------------------------------------
// gradients
// ---------------------------------------------------------------------------

// Contravariant tangent vector at a half-space point (components in x, y, z).
struct TangentVec {
    double vx = 0.0;
    double vy = 0.0;
    double vz = 0.0;
};

// Gradient (with respect to the hyperbolic metric, contravariant components)
// of the distance function rho(.) = dist_h(. , q), evaluated at p.  Its
// hyperbolic norm is identically 1.  Throws std::domain_error if p == q.
TangentVec grad_dist_h(const HPoint& p, const HPoint& q);

// Hyperbolic inner product of two contravariant tangent vectors at p.
double hyp_inner(const TangentVec& a, const TangentVec& b, const HPoint& at);

double hyp_norm(const TangentVec& a, const HPoint& at);

// ---------------------------------------------------------------------------
// hyperboloid model
// ---------------------------------------------------------------------------

// Point on the unit hyperboloid in Minkowski 4-space, signature (+,+,+,-).
struct Vec4 {
    double a = 0.0;  // spacelike components
    double b = 0.0;
    double c = 0.0;
    double t = 1.0;  // timelike component
};

// Minkowski inner product  a1 b1 + a2 b2 + a3 b3 - t1 t2.
double mink(const Vec4& u, const Vec4& v);

Vec4 embed(const HPoint& p);    // half-space -> hyperboloid
HPoint unembed(const Vec4& X);  // hyperboloid -> half-space

// Unit tangent at A pointing towards B (both hyperboloid points):
//   T = (B - cosh(d) A) / sinh(d).
// Throws std::domain_error if A == B.
Vec4 unit_tangent(const Vec4& A, const Vec4& B);

// Signed arc-length coordinate of X along the geodesic through C with unit
// tangent T; exact when X lies on that geodesic.
double arc_coordinate(const Vec4& X, const Vec4& C, const Vec4& T);

// An orthonormal spacelike frame {e1, e2, e3} at the hyperboloid point C.
struct Frame { Vec4 e1, e2, e3; };
Frame orthonormal_frame(const Vec4& C);

// ---------------------------------------------------------------------------
// isometries and normal form
// ---------------------------------------------------------------------------

// Isometries of the upper half-space generated by boundary translations,
// dilations about the origin, rotations about the vertical axis, and the
// inversion in the unit sphere; enough to reach the normal form below.
HPoint translate_xy(const HPoint& p, double dx, double dy);
HPoint dilate(const HPoint& p, double lambda);
HPoint rotate_z(const HPoint& p, double angle);
HPoint invert_unit_sphere(const HPoint& p);

MonopoleConfig translate_xy(const MonopoleConfig& c, double dx, double dy);
MonopoleConfig dilate(const MonopoleConfig& c, double lambda);
MonopoleConfig rotate_z(const MonopoleConfig& c, double angle);
MonopoleConfig invert_unit_sphere(const MonopoleConfig& c);

// A replayable isometry word in the four generators above.  Parameter slots:
//   TranslateXY: (a, b) = (dx, dy);  Dilate: a = lambda;  RotateZ: a = angle;
//   InvertUnitSphere: no parameters.
enum class IsometryKind { TranslateXY, Dilate, RotateZ, InvertUnitSphere };

struct IsometryStep {
    IsometryKind kind = IsometryKind::TranslateXY;
    double a = 0.0;
    double b = 0.0;
};

using IsometryChain = std::vector<IsometryStep>;

HPoint apply_isometry(const IsometryChain& chain, const HPoint& p);
MonopoleConfig apply_isometry(const IsometryChain& chain, const MonopoleConfig& c);

struct NormalizeResult {
    MonopoleConfig config;     // the normalized configuration
    IsometryChain isometry;    // word mapping the input onto it
};

// Moves a configuration to its normal form and reports the isometry used:
//   * empty: unchanged;
//   * exactly two points: the symmetric normalization p1 = (0, 0, e^{d/2}),
//     p2 = (0, 0, e^{-d/2}) with d their hyperbolic distance;
//   * otherwise: p1 is carried to (0, 0, 1) and the first off-axis point (if
//     any) is rotated into the half-plane {y = 0, x > 0}.
// All pairwise distances are preserved to machine precision; points that land
// on the vertical axis are snapped to x = y = 0 exactly (the returned config
// may differ from the replayed isometry by that roundoff dust).
NormalizeResult normalize_config(const MonopoleConfig& cfg);

// ---------------------------------------------------------------------------
// self-checks
// ---------------------------------------------------------------------------

// Relative residual of the pointwise identity
//   -2 + 2 coth(rho)  ==  4 e^{-2 rho} (1 + green(rho)),
// evaluated through two independent floating-point routes (exp/sinh on the
// left, expm1-based on the right).  At rounding level for all rho > 0.
double check_rholemma(double rho);

// Maximum of check_rholemma over a grid of radii.
double check_rholemma_max(std::span<const double> rho_grid);

// Hyperbolic Laplacian of a scalar field by central finite differences,
//   Delta_H F = z^2 (F_xx + F_yy + F_zz) - z F_z,
// with coordinate step h.  Used as an independent cross-check of the analytic
// Laplacians carried by the conformal test factors.
double hyp_laplacian_fd(const std::function<double(const HPoint&)>& field,
                        const HPoint& p, double h);

// Directional derivative of a scalar field by central differences along the
// coordinate vector (vx, vy, vz) at p.
double directional_derivative_fd(const std::function<double(const HPoint&)>& field,
                                 const HPoint& p, const TangentVec& dir, double h);

} // namespace monopole
