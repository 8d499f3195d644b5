// hgeom.cpp — implementation of the hyperbolic-geometry primitives.

#include "monopole/hgeom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monopole {

long long MonopoleConfig::total_charge() const {
    long long n = 0;
    for (const auto& mp : points) n += mp.charge;
    return n;
}

void validate_config(const MonopoleConfig& cfg, double min_separation) {
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
        const auto& mp = cfg.points[i];
        if (!(mp.pos.z > 0.0) || !std::isfinite(mp.pos.z) ||
            !std::isfinite(mp.pos.x) || !std::isfinite(mp.pos.y))
            throw std::invalid_argument("monopole point " + std::to_string(i) +
                                        " is not in the upper half-space");
        if (mp.charge < 1)
            throw std::invalid_argument("monopole point " + std::to_string(i) +
                                        " has non-positive charge");
    }
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.points.size(); ++j)
            if (dist_h(cfg.points[i].pos, cfg.points[j].pos) < min_separation)
                throw std::invalid_argument(
                    "monopole points " + std::to_string(i) + " and " +
                    std::to_string(j) + " coincide");
}

// ---------------------------------------------------------------------------
// distances and potential
// ---------------------------------------------------------------------------

double cosh_dist_m1(const HPoint& p, const HPoint& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double dz = p.z - q.z;
    return (dx * dx + dy * dy + dz * dz) / (2.0 * p.z * q.z);
}

double dist_h(const HPoint& p, const HPoint& q) {
    // cosh(d) = 1 + cm1  and  sinh^2(d/2) = cm1/2, hence d = 2 asinh(sqrt(cm1/2)).
    return 2.0 * std::asinh(std::sqrt(0.5 * cosh_dist_m1(p, q)));
}

double green(double rho) {
    if (!(rho > 0.0)) throw std::domain_error("green: rho must be positive");
    return 1.0 / std::expm1(2.0 * rho);
}

double green_from_coshm1(double cm1) {
    if (!(cm1 > 0.0)) throw std::domain_error("green_from_coshm1: cm1 must be positive");
    // e^{2 rho} - 1 = 2 s (c + s) with c = cosh(rho), s = sinh(rho).
    const double s = std::sqrt(cm1 * (cm1 + 2.0));
    return 1.0 / (2.0 * s * (1.0 + cm1 + s));
}

double potential_v(const MonopoleConfig& cfg, const HPoint& p, double pole_guard) {
    double v = 1.0;
    for (const auto& mp : cfg.points) {
        const double cm1 = cosh_dist_m1(mp.pos, p);
        if (2.0 * std::asinh(std::sqrt(0.5 * cm1)) < pole_guard)
            throw std::domain_error("potential_v: evaluation point hits a monopole point");
        v += static_cast<double>(mp.charge) * green_from_coshm1(cm1);
    }
    return v;
}

// ---------------------------------------------------------------------------
// gradients
// ---------------------------------------------------------------------------

TangentVec grad_dist_h(const HPoint& p, const HPoint& q) {
    const double cm1 = cosh_dist_m1(p, q);
    if (cm1 <= 0.0) throw std::domain_error("grad_dist_h: coincident points");
    const double sinh_rho = std::sqrt(cm1 * (cm1 + 2.0));
    // Partial derivatives of C = cosh(dist) with respect to the coordinates of p.
    const double zz = p.z * q.z;
    const double dCdx = (p.x - q.x) / zz;
    const double dCdy = (p.y - q.y) / zz;
    const double dCdz = (p.z - q.z) / zz - cm1 / p.z;
    // Contravariant components: v^i = z_p^2 delta^{ij} d(rho)/dx^j, rho' = C'/sinh.
    const double f = p.z * p.z / sinh_rho;
    return TangentVec{f * dCdx, f * dCdy, f * dCdz};
}

double hyp_inner(const TangentVec& a, const TangentVec& b, const HPoint& at) {
    return (a.vx * b.vx + a.vy * b.vy + a.vz * b.vz) / (at.z * at.z);
}

double hyp_norm(const TangentVec& a, const HPoint& at) {
    return std::sqrt(hyp_inner(a, a, at));
}

// ---------------------------------------------------------------------------
// hyperboloid model
// ---------------------------------------------------------------------------

double mink(const Vec4& u, const Vec4& v) {
    return u.a * v.a + u.b * v.b + u.c * v.c - u.t * v.t;
}

Vec4 embed(const HPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
    Vec4 X;
    X.a = p.x / p.z;
    X.b = p.y / p.z;
    X.c = (r2 - 1.0) / (2.0 * p.z);
    X.t = (r2 + 1.0) / (2.0 * p.z);
    return X;
}

HPoint unembed(const Vec4& X) {
    const double z = 1.0 / (X.t - X.c);
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("unembed: point is not on the forward hyperboloid");
    return HPoint{X.a * z, X.b * z, z};
}

Vec4 unit_tangent(const Vec4& A, const Vec4& B) {
    const double coshd = -mink(A, B);
    const double cm1 = coshd - 1.0;
    if (!(cm1 > 0.0)) throw std::domain_error("unit_tangent: coincident points");
    const double sinhd = std::sqrt(cm1 * (cm1 + 2.0));
    return Vec4{(B.a - coshd * A.a) / sinhd, (B.b - coshd * A.b) / sinhd,
                (B.c - coshd * A.c) / sinhd, (B.t - coshd * A.t) / sinhd};
}

double arc_coordinate(const Vec4& X, const Vec4& /*C*/, const Vec4& T) {
    // X = cosh(u) C + sinh(u) T + (normal part); <X, T> = sinh(u).
    return std::asinh(mink(X, T));
}

Frame orthonormal_frame(const Vec4& C) {
    // Gram-Schmidt of the spatial coordinate directions against C (timelike).
    const Vec4 seeds[4] = {Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0},
                           Vec4{0, 0, 0, 1}};
    Vec4 out[3];
    int filled = 0;
    for (int si = 0; si < 4 && filled < 3; ++si) {
        Vec4 v = seeds[si];
        // project out the C direction (note <C,C> = -1)
        const double vc = mink(v, C);
        v.a += vc * C.a; v.b += vc * C.b; v.c += vc * C.c; v.t += vc * C.t;
        for (int k = 0; k < filled; ++k) {
            const double ve = mink(v, out[k]);
            v.a -= ve * out[k].a; v.b -= ve * out[k].b;
            v.c -= ve * out[k].c; v.t -= ve * out[k].t;
        }
        const double n2 = mink(v, v);
        if (n2 > 1e-12) {
            const double inv = 1.0 / std::sqrt(n2);
            out[filled++] = Vec4{v.a * inv, v.b * inv, v.c * inv, v.t * inv};
        }
    }
    if (filled != 3) throw std::runtime_error("orthonormal_frame: degenerate basis");
    return Frame{out[0], out[1], out[2]};
}

// ---------------------------------------------------------------------------
// isometries
// ---------------------------------------------------------------------------

HPoint translate_xy(const HPoint& p, double dx, double dy) {
    return HPoint{p.x + dx, p.y + dy, p.z};
}

HPoint dilate(const HPoint& p, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    return HPoint{p.x * lambda, p.y * lambda, p.z * lambda};
}

HPoint rotate_z(const HPoint& p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return HPoint{c * p.x - s * p.y, s * p.x + c * p.y, p.z};
}

HPoint invert_unit_sphere(const HPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
    if (!(r2 > 0.0)) throw std::domain_error("invert_unit_sphere: origin");
    return HPoint{p.x / r2, p.y / r2, p.z / r2};
}

namespace {

template <typename F>
MonopoleConfig map_config(const MonopoleConfig& c, F&& f) {
    MonopoleConfig out = c;
    for (auto& mp : out.points) mp.pos = f(mp.pos);
    return out;
}

} // namespace

MonopoleConfig translate_xy(const MonopoleConfig& c, double dx, double dy) {
    return map_config(c, [&](const HPoint& p) { return translate_xy(p, dx, dy); });
}
MonopoleConfig dilate(const MonopoleConfig& c, double lambda) {
    return map_config(c, [&](const HPoint& p) { return dilate(p, lambda); });
}
MonopoleConfig rotate_z(const MonopoleConfig& c, double angle) {
    return map_config(c, [&](const HPoint& p) { return rotate_z(p, angle); });
}
MonopoleConfig invert_unit_sphere(const MonopoleConfig& c) {
    return map_config(c, [&](const HPoint& p) { return invert_unit_sphere(p); });
}

HPoint apply_isometry(const IsometryChain& chain, const HPoint& p) {
    HPoint q = p;
    for (const auto& s : chain) {
        switch (s.kind) {
            case IsometryKind::TranslateXY: q = translate_xy(q, s.a, s.b); break;
            case IsometryKind::Dilate: q = dilate(q, s.a); break;
            case IsometryKind::RotateZ: q = rotate_z(q, s.a); break;
            case IsometryKind::InvertUnitSphere: q = invert_unit_sphere(q); break;
        }
    }
    return q;
}

MonopoleConfig apply_isometry(const IsometryChain& chain, const MonopoleConfig& c) {
    return map_config(c, [&](const HPoint& p) { return apply_isometry(chain, p); });
}

namespace {

// Appends a step to the chain and applies it to the working configuration.
struct ChainBuilder {
    MonopoleConfig work;
    IsometryChain chain;

    void push_translate(double dx, double dy) {
        chain.push_back({IsometryKind::TranslateXY, dx, dy});
        work = translate_xy(work, dx, dy);
    }
    void push_dilate(double lambda) {
        chain.push_back({IsometryKind::Dilate, lambda, 0.0});
        work = dilate(work, lambda);
    }
    void push_rotate(double angle) {
        chain.push_back({IsometryKind::RotateZ, angle, 0.0});
        work = rotate_z(work, angle);
    }
    void push_invert() {
        chain.push_back({IsometryKind::InvertUnitSphere, 0.0, 0.0});
        work = invert_unit_sphere(work);
    }

    // Rotates the first point off the vertical axis into {y = 0, x > 0}.
    void orient_first_off_axis() {
        for (auto& mp : work.points) {
            const double h = std::hypot(mp.pos.x, mp.pos.y);
            if (h > 1e-12 * mp.pos.z) {
                push_rotate(-std::atan2(mp.pos.y, mp.pos.x));
                mp.pos.y = 0.0;
                mp.pos.x = std::abs(mp.pos.x);
                break;
            }
        }
    }
};

} // namespace

NormalizeResult normalize_config(const MonopoleConfig& cfg) {
    const std::size_t n = cfg.size();
    ChainBuilder cb;
    cb.work = cfg;
    if (n == 0) return NormalizeResult{cb.work, cb.chain};

    if (n != 2) {
        // Carry p1 to (0, 0, 1); the remaining freedom (a rotation about the
        // axis) is fixed by orienting the first off-axis point.
        const HPoint p1 = cfg.points[0].pos;
        cb.push_translate(-p1.x, -p1.y);
        cb.push_dilate(1.0 / p1.z);
        cb.work.points[0].pos = HPoint{0.0, 0.0, 1.0};
        cb.orient_first_off_axis();
        return NormalizeResult{cb.work, cb.chain};
    }

    // Exactly two points: carry their geodesic to the vertical axis and place
    // them at the symmetric heights e^{+d/2} (first point) and e^{-d/2}.
    const HPoint P = cfg.points[0].pos;
    const HPoint Q = cfg.points[1].pos;
    const double d = dist_h(P, Q);
    if (!(d > 0.0))
        throw std::invalid_argument("normalize_config: the two points coincide");

    const double hx = Q.x - P.x, hy = Q.y - P.y;
    const double hsep = std::hypot(hx, hy);
    if (hsep > 1e-14 * (P.z + Q.z)) {
        // The geodesic through P and Q is a semicircle orthogonal to the
        // boundary, contained in the vertical plane through both points.
        // Parametrize the horizontal line through their footprints by arclength
        // u from P's foot; the circle's center (u0, 0) and radius r follow from
        // requiring both points on it.
        const double ux = hx / hsep, uy = hy / hsep;
        const double u0 = (hsep * hsep + Q.z * Q.z - P.z * P.z) / (2.0 * hsep);
        const double r = std::hypot(u0, P.z);
        // Ideal endpoints of the geodesic on the boundary line.  Send e1 to the
        // origin, invert (e1 goes to infinity), and pull the image of e2 back
        // to the origin; the geodesic becomes the vertical axis.
        const double e1 = u0 - r, e2 = u0 + r;
        cb.push_translate(-(P.x + e1 * ux), -(P.y + e1 * uy));
        cb.push_invert();
        const double w = 1.0 / (e2 - e1);
        cb.push_translate(-w * ux, -w * uy);
    } else {
        // Already vertically aligned: translate the common foot to the origin.
        cb.push_translate(-0.5 * (P.x + Q.x), -0.5 * (P.y + Q.y));
    }

    // Snap onto the axis exactly (removes roundoff dust from the inversion).
    cb.work.points[0].pos.x = cb.work.points[0].pos.y = 0.0;
    cb.work.points[1].pos.x = cb.work.points[1].pos.y = 0.0;

    // First point on top, then dilate to the symmetric heights.
    if (cb.work.points[0].pos.z < cb.work.points[1].pos.z) cb.push_invert();
    const double zi = cb.work.points[0].pos.z, zj = cb.work.points[1].pos.z;
    cb.push_dilate(1.0 / std::sqrt(zi * zj));
    cb.work.points[0].pos = HPoint{0.0, 0.0, std::exp(0.5 * d)};
    cb.work.points[1].pos = HPoint{0.0, 0.0, std::exp(-0.5 * d)};
    return NormalizeResult{cb.work, cb.chain};
}

// ---------------------------------------------------------------------------
// self-checks
// ---------------------------------------------------------------------------

double check_rholemma(double rho) {
    if (!(rho > 0.0)) throw std::domain_error("check_rholemma: rho must be positive");
    // Left: distance-Laplacian route, -2 + 2 coth(rho) = 2 e^{-rho} / sinh(rho)
    // (the subtraction is carried out analytically so no significance is lost
    // at either end of the range).
    const double left = 2.0 * std::exp(-rho) / std::sinh(rho);
    // Right: Green-function route, 4 e^{-2 rho} (1 + green(rho)) with
    // 1 + green = -1/expm1(-2 rho).
    const double right = 4.0 * std::exp(-2.0 * rho) / (-std::expm1(-2.0 * rho));
    return std::abs(left - right) / std::max({std::abs(left), std::abs(right), 1e-300});
}

double check_rholemma_max(std::span<const double> rho_grid) {
    double worst = 0.0;
    for (double rho : rho_grid) worst = std::max(worst, check_rholemma(rho));
    return worst;
}

double hyp_laplacian_fd(const std::function<double(const HPoint&)>& field,
                        const HPoint& p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("hyp_laplacian_fd: h must be positive");
    const double f0 = field(p);
    const double fxp = field(HPoint{p.x + h, p.y, p.z});
    const double fxm = field(HPoint{p.x - h, p.y, p.z});
    const double fyp = field(HPoint{p.x, p.y + h, p.z});
    const double fym = field(HPoint{p.x, p.y - h, p.z});
    const double fzp = field(HPoint{p.x, p.y, p.z + h});
    const double fzm = field(HPoint{p.x, p.y, p.z - h});
    const double lap_euc =
        (fxp + fxm + fyp + fym + fzp + fzm - 6.0 * f0) / (h * h);
    const double dz = (fzp - fzm) / (2.0 * h);
    return p.z * p.z * lap_euc - p.z * dz;
}

double directional_derivative_fd(const std::function<double(const HPoint&)>& field,
                                 const HPoint& p, const TangentVec& dir, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("directional_derivative_fd: h must be positive");
    const HPoint pp{p.x + h * dir.vx, p.y + h * dir.vy, p.z + h * dir.vz};
    const HPoint pm{p.x - h * dir.vx, p.y - h * dir.vy, p.z - h * dir.vz};
    return (field(pp) - field(pm)) / (2.0 * h);
}

} // namespace monopole
