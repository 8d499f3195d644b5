// conformal.cpp — test conformal factors and their closed-form calculus.

#include "monopole/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monopole {

TestConformal TestConformal::neg_dist(const HPoint& center) {
    TestConformal tc;
    tc.family = TestFamily::NegDist;
    tc.center = center;
    return tc;
}

TestConformal TestConformal::log_u(const HPoint& center) {
    TestConformal tc;
    tc.family = TestFamily::LogU;
    tc.center = center;
    return tc;
}

TestConformal TestConformal::avg_neg_dist(const MonopoleConfig& cfg) {
    if (cfg.empty())
        throw std::invalid_argument("avg_neg_dist: configuration must be non-empty");
    TestConformal tc;
    tc.family = TestFamily::AvgNegDist;
    tc.center = cfg.points.front().pos;
    tc.anchors.reserve(cfg.size());
    for (const auto& mp : cfg.points) tc.anchors.push_back(mp.pos);
    return tc;
}

const char* family_name(TestFamily f) {
    switch (f) {
        case TestFamily::NegDist: return "neg_dist";
        case TestFamily::AvgNegDist: return "avg_neg_dist";
        case TestFamily::LogU: return "log_u";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// stable helpers
// ---------------------------------------------------------------------------

double rho_from_coshm1(double cm1) {
    if (cm1 < 0.0) cm1 = 0.0;
    return std::log1p(cm1 + std::sqrt(cm1 * (cm1 + 2.0)));
}

double exp_m2rho_from_coshm1(double cm1) {
    if (cm1 < 0.0) cm1 = 0.0;
    const double e = 1.0 + cm1 + std::sqrt(cm1 * (cm1 + 2.0));  // e^{rho}
    return 1.0 / (e * e);
}

double cothm1_from_coshm1(double cm1) {
    return 2.0 * green_from_coshm1(cm1);
}

// ---------------------------------------------------------------------------
// pointwise calculus
// ---------------------------------------------------------------------------

namespace {

double require_positive_cm1(const HPoint& p, const HPoint& anchor) {
    const double cm1 = cosh_dist_m1(p, anchor);
    if (!(cm1 > 0.0))
        throw std::domain_error("test factor evaluated at one of its distance anchors");
    return cm1;
}

// |grad f|^2 for the averaged family, via the pairwise inner products
//   <grad rho_i, grad rho_j> = (cosh rho_i cosh rho_j - cosh d_ij)
//                              / (sinh rho_i sinh rho_j).
double avg_grad_sq(const std::vector<HPoint>& anchors, const HPoint& p) {
    const std::size_t n = anchors.size();
    std::vector<double> ch(n), sh(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double cm1 = require_positive_cm1(p, anchors[i]);
        ch[i] = 1.0 + cm1;
        sh[i] = std::sqrt(cm1 * (cm1 + 2.0));
    }
    double sum = static_cast<double>(n);  // diagonal terms are exactly 1
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double chd = 1.0 + cosh_dist_m1(anchors[i], anchors[j]);
            sum += 2.0 * (ch[i] * ch[j] - chd) / (sh[i] * sh[j]);
        }
    const double g = sum / (static_cast<double>(n) * static_cast<double>(n));
    return std::clamp(g, 0.0, 1.0);
}

} // namespace

double value_f(const TestConformal& tc, const HPoint& p) {
    switch (tc.family) {
        case TestFamily::NegDist:
            return -dist_h(p, tc.center);
        case TestFamily::LogU: {
            const double cm1 = cosh_dist_m1(p, tc.center);
            return -std::log1p(cm1);
        }
        case TestFamily::AvgNegDist: {
            double s = 0.0;
            for (const auto& a : tc.anchors) s += dist_h(p, a);
            return -s / static_cast<double>(tc.anchors.size());
        }
    }
    throw std::logic_error("value_f: unknown family");
}

double laplacian_f(const TestConformal& tc, const HPoint& p) {
    switch (tc.family) {
        case TestFamily::NegDist: {
            const double cm1 = require_positive_cm1(p, tc.center);
            return -2.0 * (1.0 + cothm1_from_coshm1(cm1));
        }
        case TestFamily::LogU: {
            const double c = 1.0 + cosh_dist_m1(p, tc.center);
            return -1.0 / (c * c) - 2.0;
        }
        case TestFamily::AvgNegDist: {
            double s = 0.0;
            for (const auto& a : tc.anchors)
                s += 1.0 + cothm1_from_coshm1(require_positive_cm1(p, a));
            return -2.0 * s / static_cast<double>(tc.anchors.size());
        }
    }
    throw std::logic_error("laplacian_f: unknown family");
}

double grad_sq_f(const TestConformal& tc, const HPoint& p) {
    switch (tc.family) {
        case TestFamily::NegDist:
            require_positive_cm1(p, tc.center);
            return 1.0;
        case TestFamily::LogU: {
            const double cm1 = cosh_dist_m1(p, tc.center);
            const double c = 1.0 + cm1;
            return cm1 * (cm1 + 2.0) / (c * c);  // tanh^2 = sinh^2 / cosh^2
        }
        case TestFamily::AvgNegDist:
            return avg_grad_sq(tc.anchors, p);
    }
    throw std::logic_error("grad_sq_f: unknown family");
}

double x_factor(const TestConformal& tc, const HPoint& p) {
    switch (tc.family) {
        case TestFamily::NegDist: {
            const double cm1 = require_positive_cm1(p, tc.center);
            return 4.0 * green_from_coshm1(cm1);
        }
        case TestFamily::LogU: {
            const double c = 1.0 + cosh_dist_m1(p, tc.center);
            return 2.0 / (c * c);
        }
        case TestFamily::AvgNegDist: {
            const double n = static_cast<double>(tc.anchors.size());
            double s = 0.0;
            for (const auto& a : tc.anchors)
                s += green_from_coshm1(require_positive_cm1(p, a));
            return (4.0 / n) * s + (1.0 - avg_grad_sq(tc.anchors, p));
        }
    }
    throw std::logic_error("x_factor: unknown family");
}

double numerator_density(const TestConformal& tc, const HPoint& p) {
    return 6.0 * std::exp(2.0 * value_f(tc, p)) * x_factor(tc, p);
}

// ---------------------------------------------------------------------------
// scalar curvature
// ---------------------------------------------------------------------------

double scalar_curvature_hyp(const MonopoleConfig& cfg, const TestConformal& tc,
                            const HPoint& p) {
    const double v = potential_v(cfg, p);
    return 6.0 * x_factor(tc, p) * std::exp(-2.0 * value_f(tc, p)) / v;
}

double scalar_curvature_flat_gauge(const MonopoleConfig& cfg, const HPoint& p) {
    return 12.0 / potential_v(cfg, p);
}

// ---------------------------------------------------------------------------
// spherical compactifier
// ---------------------------------------------------------------------------

double Compactifier::value(const HPoint& p) const {
    return 2.0 / (1.0 + p.x * p.x + p.y * p.y + p.z * p.z);
}

double Compactifier::value_via_sech(const HPoint& p) const {
    const double c = 1.0 + cosh_dist_m1(p, p0);
    return 1.0 / (c * p.z);
}

double check_ueqn(std::span<const HPoint> grid) {
    // With u = 2 / (1 + |p|^2) and r2 = |p|^2, the derivative routes are
    //   du/dxi        = -xi u^2
    //   d2u/dxi^2     = -u^2 + 2 xi^2 u^3
    //   Delta_euc u   = -3 u^2 + 2 r2 u^3
    //   z^{-1} du/dz  = -u^2,
    // evaluated term by term so the cancellation against -2 u^3 is genuine.
    double worst = 0.0;
    for (const auto& p : grid) {
        if (!(p.z > 0.0)) throw std::domain_error("check_ueqn: grid point with z <= 0");
        const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
        const double u = 2.0 / (1.0 + r2);
        const double u2 = u * u, u3 = u2 * u;
        const double lap = -3.0 * u2 + 2.0 * r2 * u3;
        const double zterm = -u2;
        worst = std::max(worst, std::abs(lap + zterm + 2.0 * u3));
    }
    return worst;
}

double check_ueqn_fd(std::span<const HPoint> grid, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("check_ueqn_fd: h must be positive");
    const Compactifier u;
    double worst = 0.0;
    for (const auto& p : grid) {
        if (!(p.z > h)) throw std::domain_error("check_ueqn_fd: grid point too close to z = 0");
        const double f0 = u.value(p);
        const double fxp = u.value(HPoint{p.x + h, p.y, p.z});
        const double fxm = u.value(HPoint{p.x - h, p.y, p.z});
        const double fyp = u.value(HPoint{p.x, p.y + h, p.z});
        const double fym = u.value(HPoint{p.x, p.y - h, p.z});
        const double fzp = u.value(HPoint{p.x, p.y, p.z + h});
        const double fzm = u.value(HPoint{p.x, p.y, p.z - h});
        const double lap = (fxp + fxm + fyp + fym + fzp + fzm - 6.0 * f0) / (h * h);
        const double dz = (fzp - fzm) / (2.0 * h);
        worst = std::max(worst, std::abs(lap + dz / p.z + 2.0 * f0 * f0 * f0));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// negative-mass metric coefficients
// ---------------------------------------------------------------------------

OLnCoefficients oln_coefficients(int n) {
    if (n < 1) throw std::invalid_argument("oln_coefficients: n must be >= 1");
    OLnCoefficients c;
    c.n = n;
    c.A = static_cast<double>(n) - 2.0;
    c.B = 1.0 - static_cast<double>(n);
    constexpr double kPi = 3.14159265358979323846;
    c.mass = -4.0 * kPi * kPi * (static_cast<double>(n) - 2.0);
    return c;
}

OLnProfile oln_profile(int n, double rhat) {
    if (n < 1) throw std::invalid_argument("oln_profile: n must be >= 1");
    if (rhat < 0.0) throw std::invalid_argument("oln_profile: rhat must be >= 0");
    const double nn = static_cast<double>(n);
    const double r2 = rhat * rhat;
    OLnProfile out;
    out.radial = (1.0 + r2) / (nn + r2);
    out.sphere = 1.0 + r2;
    out.fiber = r2 * (nn + r2) / (nn * nn * (1.0 + r2));
    return out;
}

} // namespace monopole
