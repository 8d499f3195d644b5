// quadrature.cpp — adaptive hyperbolic-space integration engine.

#include "monopole/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace monopole::quad {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Gauss-Legendre rules (computed once per order by Newton iteration)
// ---------------------------------------------------------------------------

struct Rule {
    std::vector<double> x;  // nodes on [0, 1]
    std::vector<double> w;  // weights summing to 1
};

Rule build_rule(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // initial guess for the i-th root of P_n on (-1, 1), descending
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n(x) and P_{n-1}(x) by recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[i] = 0.5 * (x + 1.0);
        r.w[i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

const Rule& rule(int n) {
    static std::mutex mtx;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// misc helpers
// ---------------------------------------------------------------------------

double sq(double v) { return v * v; }

// kernel * sinh^2(s) folds (cancellation-free, bounded)
double fold_none(double s) { return sq(std::sinh(s)); }
double fold_green_own(double s) { return -0.25 * std::expm1(-2.0 * s); }
double fold_green_mean(double s, double d, double green_d) {
    return s <= d ? green_d * sq(std::sinh(s)) : -0.25 * std::expm1(-2.0 * s);
}

std::vector<double> sorted_unique(std::vector<double> v, double lo, double hi) {
    std::vector<double> out;
    out.push_back(lo);
    std::sort(v.begin(), v.end());
    for (double t : v)
        if (t > lo + 1e-9 && t < hi - 1e-9 &&
            (out.empty() || t > out.back() + 1e-9))
            out.push_back(t);
    out.push_back(hi);
    return out;
}

struct Vec4Ops {
    static Vec4 combine(double ca, const Vec4& A, double cb, const Vec4& B) {
        return Vec4{ca * A.a + cb * B.a, ca * A.b + cb * B.b,
                    ca * A.c + cb * B.c, ca * A.t + cb * B.t};
    }
    static Vec4 combine3(double c1, const Vec4& u, double c2, const Vec4& v,
                         double c3, const Vec4& w) {
        return Vec4{c1 * u.a + c2 * v.a + c3 * w.a, c1 * u.b + c2 * v.b + c3 * w.b,
                    c1 * u.c + c2 * v.c + c3 * w.c, c1 * u.t + c2 * v.t + c3 * w.t};
    }
};

// tangent of the common axis at anchor `c`, oriented from axis point ia to ib
Vec4 axis_tangent_at(const std::vector<Vec4>& X, std::size_t c, std::size_t ia,
                     std::size_t ib) {
    if (-mink(X[c], X[ib]) - 1.0 > 1e-14) return unit_tangent(X[c], X[ib]);
    Vec4 t = unit_tangent(X[c], X[ia]);
    return Vec4{-t.a, -t.b, -t.c, -t.t};
}

// ---------------------------------------------------------------------------
// 1-d adaptive engine (radial and spherical-mean-reduced terms)
// ---------------------------------------------------------------------------

struct Seg {
    double a, b, val, err;
    bool dead = false;
};

// Integrates g over [lo, hi] starting from the given breakpoints, with an
// embedded GL15/GL7 pair per segment.
void integrate_1d(const std::function<double(double)>& g,
                  const std::vector<double>& breaks, double rtol,
                  long long max_evals, double& value, double& error,
                  long long& evals, bool& converged) {
    const Rule& hi_rule = rule(15);
    const Rule& lo_rule = rule(7);

    std::vector<Seg> segs;
    auto eval_seg = [&](double a, double b) {
        const double h = b - a;
        double vh = 0.0, vl = 0.0;
        for (int i = 0; i < 15; ++i) vh += hi_rule.w[i] * g(a + h * hi_rule.x[i]);
        for (int i = 0; i < 7; ++i) vl += lo_rule.w[i] * g(a + h * lo_rule.x[i]);
        evals += 22;
        return Seg{a, b, vh * h, std::abs(vh - vl) * h};
    };

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> heap;
    double err_sum = 0.0, val_sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        segs.push_back(eval_seg(breaks[i], breaks[i + 1]));
        err_sum += segs.back().err;
        val_sum += segs.back().val;
        heap.emplace(segs.back().err, segs.size() - 1);
    }

    converged = true;
    while (err_sum > std::max(rtol * std::abs(val_sum), 1e-16)) {
        if (heap.empty() || evals >= max_evals) { converged = false; break; }
        const auto [e, idx] = heap.top();
        heap.pop();
        if (segs[idx].dead) continue;
        if (e <= 0.0 || segs[idx].b - segs[idx].a < 1e-13) continue;
        segs[idx].dead = true;
        const double mid = 0.5 * (segs[idx].a + segs[idx].b);
        err_sum -= segs[idx].err;
        val_sum -= segs[idx].val;
        for (double lohi : {0.0, 1.0}) {
            const double a = lohi == 0.0 ? segs[idx].a : mid;
            const double b = lohi == 0.0 ? mid : segs[idx].b;
            segs.push_back(eval_seg(a, b));
            err_sum += segs.back().err;
            val_sum += segs.back().val;
            heap.emplace(segs.back().err, segs.size() - 1);
        }
    }

    std::vector<double> vals;
    error = 0.0;
    for (const auto& s : segs)
        if (!s.dead) {
            vals.push_back(s.val);
            error += s.err;
        }
    value = stable_sum(std::move(vals));
}

// ---------------------------------------------------------------------------
// generic cell-heap adaptive driver (2-d and 3-d cells)
// ---------------------------------------------------------------------------

template <typename Cell, typename EvalFn, typename SplitFn>
void adapt_cells(std::vector<Cell>& cells, EvalFn&& eval, SplitFn&& split,
                 double rtol, long long max_evals, long long& evals,
                 double& value, double& error, bool& converged) {
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> heap;
    double err_sum = 0.0, val_sum = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        eval(cells[i]);
        err_sum += cells[i].err;
        val_sum += cells[i].val;
        heap.emplace(cells[i].err, i);
    }
    converged = true;
    while (err_sum > std::max(rtol * std::abs(val_sum), 1e-16)) {
        if (heap.empty() || evals >= max_evals) { converged = false; break; }
        const auto [e, idx] = heap.top();
        heap.pop();
        if (cells[idx].dead) continue;
        if (e <= 0.0 || cells[idx].too_small()) continue;
        const Cell parent = cells[idx];  // copy: `split` reallocates the vector
        cells[idx].dead = true;
        err_sum -= parent.err;
        val_sum -= parent.val;
        const std::size_t first_child = cells.size();
        split(parent, cells);
        for (std::size_t c = first_child; c < cells.size(); ++c) {
            eval(cells[c]);
            err_sum += cells[c].err;
            val_sum += cells[c].val;
            heap.emplace(cells[c].err, c);
        }
    }
    std::vector<double> vals;
    error = 0.0;
    for (const auto& c : cells)
        if (!c.dead) {
            vals.push_back(c.val);
            error += c.err;
        }
    value = stable_sum(std::move(vals));
}

// ---------------------------------------------------------------------------
// 2-d axisymmetric engine
// ---------------------------------------------------------------------------

struct Cell2 {
    double s0, s1, t0, t1;
    double val = 0.0, err = 0.0;
    bool dead = false;
    bool too_small() const { return (s1 - s0) < 1e-12 && (t1 - t0) < 1e-12; }
};

// theta ladder: geometric near both poles so that far-anchor features of
// angular width ~ e^{-d} always start inside a dedicated cell column.
const std::vector<double>& theta_ladder() {
    static const std::vector<double> t = [] {
        std::vector<double> v{0.0, 1e-12, 1e-9, 1e-6, 1e-4, 1e-2, 0.15, 0.7, 1.6, 2.4};
        for (double d : {1e-2, 1e-4, 1e-6, 1e-9, 1e-12}) v.push_back(kPi - d);
        v.push_back(kPi);
        return v;
    }();
    return t;
}

struct Geom2D {
    std::vector<double> abs_arc;  // |delta_k|
    std::vector<double> sinh_arc; // sinh |delta_k|
    std::vector<bool> positive;   // delta_k >= 0
};

// cm1 to every anchor at polar node (s, theta) about the term center, via the
// regrouped law of cosines; qplus = 1 - cos(theta), qminus = 1 + cos(theta).
void node_cm1_2d(const Geom2D& g, double s, double sinh_s, double qplus,
                 double qminus, std::vector<double>& cm1) {
    for (std::size_t k = 0; k < g.abs_arc.size(); ++k) {
        const double half = 0.5 * (s - g.abs_arc[k]);
        cm1[k] = 2.0 * sq(std::sinh(half)) +
                 sinh_s * g.sinh_arc[k] * (g.positive[k] ? qplus : qminus);
    }
}

// ---------------------------------------------------------------------------
// 3-d engine
// ---------------------------------------------------------------------------

struct Cell3 {
    double s0, s1, t0, t1, p0, p1;
    double val = 0.0, err = 0.0;
    bool dead = false;
    bool too_small() const {
        return (s1 - s0) < 1e-10 && (t1 - t0) < 1e-10 && (p1 - p0) < 1e-10;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// public helpers
// ---------------------------------------------------------------------------

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Auto: return "auto";
        case Scheme::Radial1D: return "radial1d";
        case Scheme::Axisymmetric2D: return "axisym2d";
        case Scheme::Tensor3D: return "tensor3d";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "auto") return Scheme::Auto;
    if (name == "radial1d" || name == "1d") return Scheme::Radial1D;
    if (name == "axisym2d" || name == "2d") return Scheme::Axisymmetric2D;
    if (name == "tensor3d" || name == "3d") return Scheme::Tensor3D;
    throw std::invalid_argument("unknown quadrature scheme: " + name);
}

double stable_sum(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    while (xs.size() > 1) {
        std::vector<double> next;
        next.reserve((xs.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2)
            next.push_back(xs[i] + xs[i + 1]);
        if (xs.size() % 2) next.push_back(xs.back());
        xs.swap(next);
    }
    return xs.front();
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    const Rule& r = rule(n);
    nodes = r.x;
    weights = r.w;
}

bool anchors_collinear(const std::vector<HPoint>& anchors) {
    const std::size_t n = anchors.size();
    if (n <= 2) return true;
    std::vector<Vec4> X(n);
    for (std::size_t i = 0; i < n; ++i) X[i] = embed(anchors[i]);
    std::size_t ia = 0, ib = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double c = -mink(X[i], X[j]);
            if (c > best) { best = c; ia = i; ib = j; }
        }
    if (best - 1.0 < 1e-14) return true;  // everything effectively coincident
    const Vec4 T = unit_tangent(X[ia], X[ib]);
    for (std::size_t k = 0; k < n; ++k) {
        const double alpha = -mink(X[k], X[ia]);
        const double beta = mink(X[k], T);
        const Vec4 perp = Vec4Ops::combine3(1.0, X[k], -alpha, X[ia], -beta, T);
        const double res = mink(perp, perp);
        if (res > 1e-9 * std::max(1.0, alpha * alpha)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// integrate
// ---------------------------------------------------------------------------

IntegralResult integrate(const IntegralSpec& spec, const Options& opt) {
    if (spec.anchors.empty())
        throw std::invalid_argument("integrate: at least one anchor is required");
    if (spec.terms.empty())
        throw std::invalid_argument("integrate: no terms");
    if (!(opt.rho_max > 1.0))
        throw std::invalid_argument("integrate: rho_max must exceed 1");
    if (!(opt.tol > 0.0))
        throw std::invalid_argument("integrate: tol must be positive");

    const std::size_t n = spec.anchors.size();
    std::vector<Vec4> X(n);
    for (std::size_t i = 0; i < n; ++i) X[i] = embed(spec.anchors[i]);

    // pairwise cosh-distances and the extremal pair (axis of the anchor set)
    std::size_t ia = 0, ib = n > 1 ? 1 : 0;
    double best = -1.0;
    std::vector<std::vector<double>> cdist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double cm1 = cosh_dist_m1(spec.anchors[i], spec.anchors[j]);
            cdist[i][j] = cdist[j][i] = cm1;
            if (cm1 > best) { best = cm1; ia = i; ib = j; }
        }
    const bool collinear = anchors_collinear(spec.anchors);
    const bool degenerate_axis = (n == 1) || best < 1e-14;

    IntegralResult out;
    out.scheme_used = Scheme::Radial1D;

    for (const auto& term : spec.terms) {
        if (term.center < 0 || term.center >= static_cast<int>(n) ||
            term.radial_center < 0 || term.radial_center >= static_cast<int>(n))
            throw std::invalid_argument("integrate: term center out of range");
        if (term.green_anchor >= static_cast<int>(n))
            throw std::invalid_argument("integrate: green anchor out of range");

        const bool can_1d =
            term.radial.has_value() &&
            (term.green_anchor < 0 || term.green_anchor == term.radial_center ||
             opt.mean_reduction);

        Scheme route;
        switch (opt.scheme) {
            case Scheme::Auto:
                route = can_1d ? Scheme::Radial1D
                               : (collinear ? Scheme::Axisymmetric2D : Scheme::Tensor3D);
                break;
            case Scheme::Radial1D:
                if (!can_1d)
                    throw std::invalid_argument(
                        "integrate: term '" + term.label + "' is not radial-reducible");
                route = Scheme::Radial1D;
                break;
            case Scheme::Axisymmetric2D:
                if (!collinear)
                    throw std::invalid_argument(
                        "integrate: anchors are not collinear; the axisymmetric "
                        "scheme does not apply");
                if (!term.smooth)
                    throw std::invalid_argument("integrate: term lacks a smooth factor");
                route = Scheme::Axisymmetric2D;
                break;
            case Scheme::Tensor3D:
                if (!term.smooth)
                    throw std::invalid_argument("integrate: term lacks a smooth factor");
                route = Scheme::Tensor3D;
                break;
            default:
                throw std::logic_error("integrate: bad scheme");
        }

        TermResult tr;
        tr.label = term.label;
        tr.scheme_used = route;

        if (route == Scheme::Radial1D) {
            // radial profile about radial_center; optional Green factor folded
            // exactly through the spherical mean.
            const RadialFn& F = *term.radial;
            double green_d = 0.0, d = 0.0;
            int mode = 0;  // 0: no kernel, 1: own-center, 2: mean at distance d
            if (term.green_anchor >= 0) {
                if (term.green_anchor == term.radial_center) {
                    mode = 1;
                } else {
                    mode = 2;
                    const double cm1 = cdist[term.radial_center][term.green_anchor];
                    d = 2.0 * std::asinh(std::sqrt(0.5 * cm1));
                    green_d = green_from_coshm1(cm1);
                }
            }
            auto g = [&](double s) {
                const double fold = mode == 0   ? fold_none(s)
                                    : mode == 1 ? fold_green_own(s)
                                                : fold_green_mean(s, d, green_d);
                return F(s) * fold;
            };
            std::vector<double> marks;
            for (double m : {1.0, 3.0, 8.0, 15.0}) marks.push_back(m);
            if (mode == 2) {
                marks.push_back(d);
                marks.push_back(d > 1.0 ? d - 1.0 : 0.5 * d);
                marks.push_back(d + 1.0);
            }
            double val = 0.0, err = 0.0;
            bool conv = true;
            integrate_1d(g, sorted_unique(std::move(marks), 0.0, opt.rho_max),
                         std::min(opt.tol, 1e-12), opt.max_evals_per_term, val, err,
                         tr.evals, conv);
            const double tail = std::abs(g(opt.rho_max)) * 0.75;
            tr.value = 4.0 * kPi * term.coefficient * val;
            tr.tail = 4.0 * kPi * std::abs(term.coefficient) * tail;
            tr.error = 4.0 * kPi * std::abs(term.coefficient) * (err + tail);
            tr.converged = conv;
        } else if (route == Scheme::Axisymmetric2D) {
            // polar (s, theta) about the term center; azimuth integrated out.
            const std::size_t c = static_cast<std::size_t>(term.center);
            Vec4 T;
            if (degenerate_axis) {
                const HPoint& cp = spec.anchors[c];
                T = unit_tangent(X[c], embed(HPoint{cp.x, cp.y, cp.z * std::exp(1.0)}));
            } else {
                T = axis_tangent_at(X, c, ia, ib);
            }
            Geom2D geo;
            geo.abs_arc.resize(n);
            geo.sinh_arc.resize(n);
            geo.positive.resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double arc = k == c ? 0.0 : arc_coordinate(X[k], X[c], T);
                geo.abs_arc[k] = std::abs(arc);
                geo.sinh_arc[k] = std::sinh(std::abs(arc));
                geo.positive[k] = arc >= 0.0;
            }

            const int ga = term.green_anchor;
            const bool own_green = ga == term.center;
            std::vector<double> cm1(n);
            auto integrand = [&](double s, double theta) {
                const double sinh_s = std::sinh(s);
                const double qplus = 1.0 - std::cos(theta);
                const double qminus = 2.0 - qplus;
                node_cm1_2d(geo, s, sinh_s, qplus, qminus, cm1);
                double v = term.smooth(std::span<const double>(cm1));
                if (ga >= 0) {
                    if (own_green)
                        v *= fold_green_own(s);
                    else
                        v *= green_from_coshm1(std::max(cm1[ga], 1e-300)) * sq(sinh_s);
                } else {
                    v *= sq(sinh_s);
                }
                return v * std::sin(theta);
            };

            // initial mesh: anchor-radius ladder in s, geometric ladder in theta
            std::vector<double> smarks{1.0, 3.0, 8.0, 15.0};
            for (std::size_t k = 0; k < n; ++k) {
                const double a = geo.abs_arc[k];
                if (a > 1e-9) {
                    smarks.push_back(a);
                    smarks.push_back(a > 1.0 ? a - 1.0 : 0.5 * a);
                    smarks.push_back(a + 1.0);
                }
            }
            const std::vector<double> sb =
                sorted_unique(std::move(smarks), 0.0, opt.rho_max);
            const std::vector<double>& tb = theta_ladder();

            std::vector<Cell2> cells;
            for (std::size_t i = 0; i + 1 < sb.size(); ++i)
                for (std::size_t j = 0; j + 1 < tb.size(); ++j)
                    cells.push_back(Cell2{sb[i], sb[i + 1], tb[j], tb[j + 1]});

            const Rule& rl = rule(7);
            const Rule& rh = rule(10);
            auto eval_cell = [&](Cell2& cell) {
                const double hs = cell.s1 - cell.s0, ht = cell.t1 - cell.t0;
                double vh = 0.0;
                for (int i = 0; i < 10; ++i)
                    for (int j = 0; j < 10; ++j)
                        vh += rh.w[i] * rh.w[j] *
                              integrand(cell.s0 + hs * rh.x[i], cell.t0 + ht * rh.x[j]);
                double vl = 0.0;
                for (int i = 0; i < 7; ++i)
                    for (int j = 0; j < 7; ++j)
                        vl += rl.w[i] * rl.w[j] *
                              integrand(cell.s0 + hs * rl.x[i], cell.t0 + ht * rl.x[j]);
                tr.evals += 149;
                cell.val = vh * hs * ht;
                cell.err = std::abs(vh - vl) * hs * ht;
            };
            auto split_cell = [](const Cell2& cell, std::vector<Cell2>& all) {
                const double sm = 0.5 * (cell.s0 + cell.s1);
                const double tm = 0.5 * (cell.t0 + cell.t1);
                all.push_back(Cell2{cell.s0, sm, cell.t0, tm});
                all.push_back(Cell2{sm, cell.s1, cell.t0, tm});
                all.push_back(Cell2{cell.s0, sm, tm, cell.t1});
                all.push_back(Cell2{sm, cell.s1, tm, cell.t1});
            };

            double val = 0.0, err = 0.0;
            bool conv = true;
            adapt_cells(cells, eval_cell, split_cell, opt.tol,
                        opt.max_evals_per_term, tr.evals, val, err, conv);

            // truncation tail from the boundary line mass at s = rho_max
            double line = 0.0;
            for (std::size_t j = 0; j + 1 < tb.size(); ++j) {
                double seg = 0.0;
                for (int i = 0; i < 7; ++i)
                    seg += rl.w[i] *
                           std::abs(integrand(opt.rho_max,
                                              tb[j] + (tb[j + 1] - tb[j]) * rl.x[i]));
                line += seg * (tb[j + 1] - tb[j]);
            }
            tr.evals += 7 * static_cast<long long>(tb.size() - 1);

            tr.value = 2.0 * kPi * term.coefficient * val;
            tr.tail = 2.0 * kPi * std::abs(term.coefficient) * 0.75 * line;
            tr.error = 2.0 * kPi * std::abs(term.coefficient) * (err + 0.75 * line);
            tr.converged = conv;
        } else {
            // full polar coordinates about the term center
            const std::size_t c = static_cast<std::size_t>(term.center);
            const Frame fr = orthonormal_frame(X[c]);
            const int ga = term.green_anchor;
            const bool own_green = ga == term.center;

            std::vector<double> cm1(n);
            auto integrand = [&](double s, double theta, double phi) {
                const double ch = std::cosh(s), sh = std::sinh(s);
                const double st = std::sin(theta), ct = std::cos(theta);
                const Vec4 dir = Vec4Ops::combine3(st * std::cos(phi), fr.e1,
                                                   st * std::sin(phi), fr.e2, ct, fr.e3);
                const Vec4 P = Vec4Ops::combine(ch, X[c], sh, dir);
                for (std::size_t k = 0; k < n; ++k)
                    cm1[k] = k == c ? 2.0 * sq(std::sinh(0.5 * s))
                                    : std::max(0.0, -mink(P, X[k]) - 1.0);
                double v = term.smooth(std::span<const double>(cm1));
                if (ga >= 0) {
                    if (own_green)
                        v *= fold_green_own(s);
                    else
                        v *= green_from_coshm1(std::max(cm1[ga], 1e-300)) * sq(sh);
                } else {
                    v *= sq(sh);
                }
                return v * st;
            };

            std::vector<double> smarks{1.0, 3.0, 8.0, 15.0};
            for (std::size_t k = 0; k < n; ++k) {
                if (k == c) continue;
                const double a =
                    2.0 * std::asinh(std::sqrt(0.5 * cdist[c][k]));
                if (a > 1e-9) {
                    smarks.push_back(a);
                    smarks.push_back(a > 1.0 ? a - 1.0 : 0.5 * a);
                    smarks.push_back(a + 1.0);
                }
            }
            const std::vector<double> sb =
                sorted_unique(std::move(smarks), 0.0, opt.rho_max);
            std::vector<double> tbv{0.0, 0.8, 1.6, 2.4, kPi};
            std::vector<double> pbv;
            for (int i = 0; i <= 6; ++i) pbv.push_back(2.0 * kPi * i / 6.0);

            std::vector<Cell3> cells;
            for (std::size_t i = 0; i + 1 < sb.size(); ++i)
                for (std::size_t j = 0; j + 1 < tbv.size(); ++j)
                    for (std::size_t k = 0; k + 1 < pbv.size(); ++k)
                        cells.push_back(Cell3{sb[i], sb[i + 1], tbv[j], tbv[j + 1],
                                              pbv[k], pbv[k + 1]});

            const Rule& rl = rule(4);
            const Rule& rh = rule(6);
            auto eval_cell = [&](Cell3& cell) {
                const double hs = cell.s1 - cell.s0, ht = cell.t1 - cell.t0,
                             hp = cell.p1 - cell.p0;
                double vh = 0.0;
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j)
                        for (int k = 0; k < 6; ++k)
                            vh += rh.w[i] * rh.w[j] * rh.w[k] *
                                  integrand(cell.s0 + hs * rh.x[i],
                                            cell.t0 + ht * rh.x[j],
                                            cell.p0 + hp * rh.x[k]);
                double vl = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        for (int k = 0; k < 4; ++k)
                            vl += rl.w[i] * rl.w[j] * rl.w[k] *
                                  integrand(cell.s0 + hs * rl.x[i],
                                            cell.t0 + ht * rl.x[j],
                                            cell.p0 + hp * rl.x[k]);
                tr.evals += 216 + 64;
                cell.val = vh * hs * ht * hp;
                cell.err = std::abs(vh - vl) * hs * ht * hp;
            };
            auto split_cell = [](const Cell3& cell, std::vector<Cell3>& all) {
                const double ws = cell.s1 - cell.s0;
                const double smid = 0.5 * (cell.s0 + cell.s1);
                const double tmid = 0.5 * (cell.t0 + cell.t1);
                const double pmid = 0.5 * (cell.p0 + cell.p1);
                const double scale = std::min(3.0, 0.5 + smid);
                const double wt = (cell.t1 - cell.t0) * scale;
                const double wp =
                    (cell.p1 - cell.p0) * scale * std::max(0.05, std::sin(tmid));
                Cell3 a = cell, b = cell;
                a.dead = b.dead = false;
                a.val = a.err = b.val = b.err = 0.0;
                if (ws >= wt && ws >= wp) {
                    a.s1 = smid; b.s0 = smid;
                } else if (wt >= wp) {
                    a.t1 = tmid; b.t0 = tmid;
                } else {
                    a.p1 = pmid; b.p0 = pmid;
                }
                all.push_back(a);
                all.push_back(b);
            };

            double val = 0.0, err = 0.0;
            bool conv = true;
            adapt_cells(cells, eval_cell, split_cell, opt.tol,
                        opt.max_evals_per_term, tr.evals, val, err, conv);

            // boundary-shell tail estimate on the initial angular grid
            double shell = 0.0;
            for (std::size_t j = 0; j + 1 < tbv.size(); ++j)
                for (std::size_t k = 0; k + 1 < pbv.size(); ++k) {
                    const double tm = 0.5 * (tbv[j] + tbv[j + 1]);
                    const double pm = 0.5 * (pbv[k] + pbv[k + 1]);
                    shell += std::abs(integrand(opt.rho_max, tm, pm)) *
                             (tbv[j + 1] - tbv[j]) * (pbv[k + 1] - pbv[k]);
                }
            tr.evals += static_cast<long long>((tbv.size() - 1) * (pbv.size() - 1));

            tr.value = term.coefficient * val;
            tr.tail = std::abs(term.coefficient) * 0.75 * shell;
            tr.error = std::abs(term.coefficient) * (err + 0.75 * shell);
            tr.converged = conv;
        }

        if (static_cast<int>(route) > static_cast<int>(out.scheme_used))
            out.scheme_used = route;
        out.converged = out.converged && tr.converged;
        out.evals += tr.evals;
        out.error += tr.error;
        out.tail += tr.tail;
        out.terms.push_back(std::move(tr));
    }

    std::vector<double> vals;
    vals.reserve(out.terms.size());
    for (const auto& t : out.terms) vals.push_back(t.value);
    out.value = stable_sum(std::move(vals));
    return out;
}

} // namespace monopole::quad
