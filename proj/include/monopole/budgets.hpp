// budgets.hpp — exact characteristic-number budgets for the model spaces that
// appear in monopole degenerations.  All curvature budgets are recorded in
// units of pi^2, as exact rationals.
//
// Bookkeeping conventions (fixed across the toolkit):
//   * eta(m) = (m - 1)(m - 2) / (3 m) is the orbifold defect of a cone point
//     of order m; eta(1) = eta(2) = 0.
//   * A compact one-ended-less space with signature tau, interior cone orders
//     m_1..m_k, and an asymptotic end of order N obeys
//         w2 = 12 [ tau + sum_i eta(m_i) - eta(N) ],
//     with the convention eta(end) = 0 for a compact space or an
//     asymptotically flat (order-1) end.
//   * The complementary budget is
//         sigma2 = 8 [ chi - (1 - 1/N)_end - sum_i (1 - 1/m_i) ] - w2,
//     where the end term appears only for an asymptotically-locally-Euclidean
//     end of order N >= 1 (and vanishes for compact models).
//
// The constructors below specialize these to the five node species used by
// the degeneration predictor; conservation_check records the telescoping
// identity  8 (n^2 - 1)/n + 12 (n^2 + 2)/(3n) = 12 n  that makes the per-node
// budgets of a bubble tree sum to the smooth total.

#pragma once

#include "monopole/rational.hpp"

#include <string>
#include <vector>

namespace monopole {

// Orbifold defect (m - 1)(m - 2) / (3 m); requires m >= 1.
Rat eta(long long m);

struct CharBudget {
    std::string label;                      // e.g. "CompactLeBrun(1,2)"
    Rat chi;                                // orbifold Euler characteristic
    Rat tau;                                // signature
    Rat w2;                                 // Weyl budget, units of pi^2
    Rat sigma2;                             // complementary budget, pi^2
    std::vector<long long> multiplicities;  // interior cone orders (ascending)

    Rat total() const { return w2 + sigma2; }
};

// Compact orbifold built over monopole points of the given multiplicities:
// chi = k + 2, tau = k, w2 = 12 [k + sum eta(m_i)], sigma2 = 4 (4 - N) with
// N = sum m_i.  Requires k >= 1, all m_i >= 1.
CharBudget budget_compact_lebrun(std::vector<long long> mults);

// Multi-center ALE bubble with interior cone orders m_1..m_k and an
// asymptotic end of order N = sum m_i:
// chi = k + 1, tau = k - 1, w2 = 12 [(k - 1) + sum eta(m_i) - eta(N)],
// sigma2 = 8 [chi - (1 - 1/N) - sum (1 - 1/m_i)] - w2.
CharBudget budget_gibbons_hawking(std::vector<long long> mults);

// Two-center unit ALE bubble: identical numbers to budget_gibbons_hawking({1,1})
// (chi = 3, tau = 1, w2 = 12, sigma2 = 8) under its conventional name.
CharBudget budget_eguchi_hanson();

// Asymptotically flat bubble keeping interior cone orders m_1..m_k:
// chi = k + 1, tau = k, w2 = 12 [k + sum eta(m_i)],
// sigma2 = 8 [chi - sum (1 - 1/m_i)] - w2.
CharBudget budget_lebrun_af(std::vector<long long> mults);

// Neck connecting a parent cone point of order m to a bubble.  Carries no
// Weyl budget; bookkeeping row equals the football of order m:
// chi = 2, tau = 0, w2 = 0, sigma2 = 16/m.
CharBudget budget_neck(long long m);

// Football (bad orbifold two-sphere) of order m; same numbers as the neck.
CharBudget budget_football(long long m);

struct ConservationRow {
    long long n = 1;
    Rat gh_unit_w2;    // 8 (n^2 - 1) / n  — n-center unit ALE bubble
    Rat orbifold_w2;   // 12 (n^2 + 2) / (3n) — compact model with one order-n point
    Rat smooth_total;  // 12 n — compact model with n unit points
    bool balanced = false;
};

// Exact check of  8 (n^2 - 1)/n + 12 (n^2 + 2)/(3n) = 12 n.
ConservationRow conservation_check(long long n);

} // namespace monopole
