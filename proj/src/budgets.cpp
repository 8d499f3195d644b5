// budgets.cpp — exact characteristic-number bookkeeping.

#include "monopole/budgets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace monopole {

namespace {

void require_orders(const std::vector<long long>& mults, const char* who) {
    if (mults.empty())
        throw std::invalid_argument(std::string(who) + ": need at least one cone order");
    for (long long m : mults)
        if (m < 1)
            throw std::invalid_argument(std::string(who) + ": cone orders must be >= 1");
}

std::string order_list(const std::vector<long long>& mults) {
    std::string s;
    for (std::size_t i = 0; i < mults.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(mults[i]);
    }
    return s;
}

Rat eta_sum(const std::vector<long long>& mults) {
    Rat s{0};
    for (long long m : mults) s += eta(m);
    return s;
}

// sum_i (1 - 1/m_i)
Rat defect_sum(const std::vector<long long>& mults) {
    Rat s{0};
    for (long long m : mults) s += Rat(m - 1, m);
    return s;
}

} // namespace

Rat eta(long long m) {
    if (m < 1) throw std::invalid_argument("eta: cone order must be >= 1");
    return Rat((m - 1) * (m - 2), 3 * m);
}

CharBudget budget_compact_lebrun(std::vector<long long> mults) {
    require_orders(mults, "budget_compact_lebrun");
    std::sort(mults.begin(), mults.end());
    const long long k = (long long)mults.size();
    const long long n = std::accumulate(mults.begin(), mults.end(), 0LL);

    CharBudget b;
    b.multiplicities = mults;
    b.label = "CompactLeBrun(" + order_list(mults) + ")";
    b.chi = Rat(k + 2);
    b.tau = Rat(k);
    b.w2 = Rat(12) * (Rat(k) + eta_sum(mults));
    b.sigma2 = Rat(4) * Rat(4 - n);
    return b;
}

CharBudget budget_gibbons_hawking(std::vector<long long> mults) {
    require_orders(mults, "budget_gibbons_hawking");
    std::sort(mults.begin(), mults.end());
    const long long k = (long long)mults.size();
    const long long n = std::accumulate(mults.begin(), mults.end(), 0LL);

    CharBudget b;
    b.multiplicities = mults;
    b.label = "GibbonsHawking(" + order_list(mults) + ")";
    b.chi = Rat(k + 1);
    b.tau = Rat(k - 1);
    b.w2 = Rat(12) * (Rat(k - 1) + eta_sum(mults) - eta(n));
    b.sigma2 = Rat(8) * (b.chi - Rat(n - 1, n) - defect_sum(mults)) - b.w2;
    return b;
}

CharBudget budget_eguchi_hanson() {
    CharBudget b = budget_gibbons_hawking({1, 1});
    b.label = "EguchiHanson";
    return b;
}

CharBudget budget_lebrun_af(std::vector<long long> mults) {
    require_orders(mults, "budget_lebrun_af");
    std::sort(mults.begin(), mults.end());
    const long long k = (long long)mults.size();

    CharBudget b;
    b.multiplicities = mults;
    b.label = "LeBrunAF(" + order_list(mults) + ")";
    b.chi = Rat(k + 1);
    b.tau = Rat(k);
    b.w2 = Rat(12) * (Rat(k) + eta_sum(mults));
    b.sigma2 = Rat(8) * (b.chi - defect_sum(mults)) - b.w2;
    return b;
}

CharBudget budget_neck(long long m) {
    if (m < 1) throw std::invalid_argument("budget_neck: order must be >= 1");
    CharBudget b;
    b.multiplicities = {m};
    b.label = "Neck(" + std::to_string(m) + ")";
    b.chi = Rat(2);
    b.tau = Rat(0);
    b.w2 = Rat(0);
    b.sigma2 = Rat(16, m);
    return b;
}

CharBudget budget_football(long long m) {
    CharBudget b = budget_neck(m);
    b.label = "Football(" + std::to_string(m) + ")";
    return b;
}

ConservationRow conservation_check(long long n) {
    if (n < 1) throw std::invalid_argument("conservation_check: n must be >= 1");
    ConservationRow row;
    row.n = n;
    row.gh_unit_w2 = Rat(8 * (n * n - 1), n);
    row.orbifold_w2 = Rat(12 * (n * n + 2), 3 * n);
    row.smooth_total = Rat(12 * n);
    row.balanced = (row.gh_unit_w2 + row.orbifold_w2 == row.smooth_total);
    return row;
}

} // namespace monopole
