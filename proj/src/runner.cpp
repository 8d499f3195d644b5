// runner.cpp — report/CSV builders behind the command-line tool.

#include "monopole/runner.hpp"

#include "monopole/budgets.hpp"
#include "monopole/conformal.hpp"
#include "monopole/degeneration.hpp"
#include "monopole/yamabe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace monopole {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void describe_report(std::ostringstream& out, const EnergyReport& rep) {
    out << "  gauge        : " << gauge_name(rep.gauge) << "\n";
    out << "  family       : " << family_name(rep.family) << "\n";
    out << "  total charge : " << rep.total_charge << "\n";
    out << "  energy       : " << g17(rep.energy) << "  (est. error "
        << g17(rep.energy_error) << ")\n";
    out << "  numerator    : " << g17(rep.numerator) << "  (est. error "
        << g17(rep.numerator_error) << ")\n";
    out << "  volume       : " << g17(rep.volume) << "  (est. error "
        << g17(rep.volume_error) << ")\n";
    out << "  tail bound   : " << g17(rep.tail_bound) << "\n";
    out << "  scheme       : " << quad::scheme_name(rep.scheme_used)
        << "   evals: " << rep.evals << "   converged: " << yes_no(rep.converged)
        << "\n";
    out << "  comparisons:\n";
    for (const auto& c : rep.comparisons)
        out << "    energy " << c.relation << " " << g17(c.value) << "  [" << c.label
            << "] : " << (c.satisfied ? "OK" : "VIOLATED") << "\n";
}

void csv_comparisons(std::ostringstream& csv, const EnergyReport& rep) {
    csv << "quantity,value,error_estimate,bound_label,bound_value,relation,"
           "satisfied\n";
    for (const auto& c : rep.comparisons)
        csv << "energy," << g17(rep.energy) << "," << g17(rep.energy_error) << ","
            << quoted(c.label) << "," << g17(c.value) << "," << c.relation << ","
            << (c.satisfied ? 1 : 0) << "\n";
}

} // namespace

RunOutput run_energy(const RunConfig& rc) {
    HPoint center{0.0, 0.0, 1.0};
    if (!rc.config.empty())
        center = rc.config.points[std::size_t(rc.center_index)].pos;

    EnergyReport rep;
    if (rc.gauge == Gauge::HyperbolicGauge) {
        TestConformal tc = TestConformal::neg_dist(center);
        switch (rc.family) {
            case TestFamily::NegDist: tc = TestConformal::neg_dist(center); break;
            case TestFamily::LogU: tc = TestConformal::log_u(center); break;
            case TestFamily::AvgNegDist:
                tc = TestConformal::avg_neg_dist(rc.config);
                break;
        }
        rep = energy_hyp_gauge(rc.config, tc, rc.quad);
    } else {
        rep = energy_flat_gauge(rc.config, center, rc.quad);
    }

    std::ostringstream out;
    out << "energy report\n";
    describe_report(out, rep);

    std::ostringstream csv;
    csv_comparisons(csv, rep);
    return {out.str(), csv.str()};
}

RunOutput run_bounds(const std::vector<long long>& mults) {
    for (std::size_t i = 0; i < mults.size(); ++i)
        if (mults[i] < 1)
            throw std::invalid_argument("bounds: multiplicity " +
                                        std::to_string(i) + " must be >= 1");
    const long long n = std::accumulate(mults.begin(), mults.end(), 0LL);
    const long long maxm =
        mults.empty() ? 1 : *std::max_element(mults.begin(), mults.end());

    std::vector<std::pair<std::string, double>> rows;
    rows.emplace_back("round sphere ceiling (empty, flat gauge)", bound_round_s4());
    rows.emplace_back("one-point ceiling", bound_cp2());
    if (n >= 1)
        rows.emplace_back("multi-fold ceiling (N=" + std::to_string(n) + ")",
                          bound_multi_fold(n));
    rows.emplace_back("round cone-factor value (empty, hyperbolic gauge)",
                      bound_round_negdist());
    rows.emplace_back("two-point floor", bound_two_point_floor());
    rows.emplace_back("football ceiling (m=" + std::to_string(maxm) + ")",
                      bound_orbifold(maxm));
    if (n <= 3)
        rows.emplace_back("self-dual floor (N=" + std::to_string(n) + ")",
                          bound_selfdual_lower(n));

    std::ostringstream out;
    out << "closed-form bounds (multiplicities:";
    if (mults.empty()) out << " none";
    for (long long m : mults) out << " " << m;
    out << ", total charge " << n << ")\n";
    for (const auto& [label, value] : rows)
        out << "  " << g17(value) << "  " << label << "\n";
    if (!mults.empty()) {
        const OrbifoldExistence verdict = orbifold_existence_test(mults);
        out << "  orbifold existence: " << orbifold_existence_name(verdict)
            << "  (criterion: 9 max_mult < 4 (N + 2))\n";
    }

    std::ostringstream csv;
    csv << "label,value,error_estimate\n";
    for (const auto& [label, value] : rows)
        csv << quoted(label) << "," << g17(value) << "," << g17(0.0) << "\n";
    return {out.str(), csv.str()};
}

RunOutput run_integrals(const quad::Options& opt) {
    const auto rows = closed_form_integrals(opt);

    std::ostringstream out;
    out << "closed-form integral audit\n";
    for (const auto& r : rows)
        out << "  " << r.label << "\n    computed " << g17(r.computed) << "  exact "
            << g17(r.exact) << "  rel err " << g17(r.rel_err) << "  converged "
            << yes_no(r.converged) << "\n";

    std::ostringstream csv;
    csv << "label,computed,exact,rel_err,error_estimate,evals,converged\n";
    for (const auto& r : rows)
        csv << quoted(r.label) << "," << g17(r.computed) << "," << g17(r.exact)
            << "," << g17(r.rel_err) << "," << g17(r.error_estimate) << ","
            << r.evals << "," << (r.converged ? 1 : 0) << "\n";
    return {out.str(), csv.str()};
}

RunOutput run_ode_scan(int n, double lo, double hi, int count,
                       const OdeOptions& opt) {
    const ScanResult sr = scan(n, log_spaced_grid(lo, hi, count), opt);

    std::ostringstream out;
    out << "profile-equation scan (n = " << n << ", " << count
        << " log-spaced lambda in [" << g17(lo) << ", " << g17(hi) << "])\n";
    out << "  verdict      : " << scan_verdict_name(sr.verdict) << "\n";
    if (sr.admissible_found)
        out << "  admissible   : lambda = " << g17(sr.lambda_admissible) << "\n";
    out << "  lambda_star  : " << g17(sr.lambda_star)
        << "  (survival peak)\n";
    out << "  best drift   : " << g17(sr.best_drift) << "\n";
    out << "  class flips  :";
    if (sr.flips.empty()) out << " none";
    for (double f : sr.flips) out << " " << g17(f);
    out << "\n  shots        : " << sr.shots << "\n";

    std::ostringstream csv;
    csv << "lambda,class,r_zero,tail_drift\n";
    for (const auto& row : sr.rows)
        csv << g17(row.lambda) << "," << ode_class_name(row.cls) << ","
            << g17(row.r_zero) << "," << g17(row.tail_drift) << "\n";
    return {out.str(), csv.str()};
}

RunOutput run_budgets(long long max_n) {
    if (max_n < 1)
        throw std::invalid_argument("budgets: max_n must be >= 1");

    std::ostringstream out;
    out << "characteristic-number budgets (units of pi^2, exact)\n";
    out << "  conservation per total charge n:  8(n^2-1)/n + 12(n^2+2)/(3n) = 12n\n";
    for (long long n = 1; n <= max_n; ++n) {
        const ConservationRow row = conservation_check(n);
        out << "    n=" << n << ":  " << row.gh_unit_w2.str() << " + "
            << row.orbifold_w2.str() << " = " << row.smooth_total.str() << "  ["
            << (row.balanced ? "balanced" : "VIOLATED") << "]\n";
    }
    out << "  orbifold defects eta(m) = (m-1)(m-2)/(3m):\n    ";
    for (long long m = 1; m <= max_n; ++m)
        out << "eta(" << m << ")=" << eta(m).str() << (m < max_n ? "  " : "\n");
    out << "  reference nodes:\n";
    for (const CharBudget& b :
         {budget_eguchi_hanson(), budget_gibbons_hawking({1, 2}),
          budget_lebrun_af({2}), budget_neck(2), budget_compact_lebrun({3})})
        out << "    " << b.label << ": chi=" << b.chi.str() << " tau=" << b.tau.str()
            << " w2=" << b.w2.str() << " sigma2=" << b.sigma2.str() << "\n";

    std::ostringstream csv;
    csv << "n,gh_unit_w2,orbifold_w2,smooth_total,balanced\n";
    for (long long n = 1; n <= max_n; ++n) {
        const ConservationRow row = conservation_check(n);
        csv << n << "," << row.gh_unit_w2.str() << "," << row.orbifold_w2.str()
            << "," << row.smooth_total.str() << "," << (row.balanced ? 1 : 0)
            << "\n";
    }
    return {out.str(), csv.str()};
}

RunOutput run_tree(const DegenerationScenario& scenario) {
    const BubbleTree tree = predict_tree(scenario);
    const EnergyCheck check = tree_energy_check(tree);

    std::ostringstream out;
    out << "predicted degeneration tree (total charge " << tree.total_charge
        << ")\n";
    out << render_tree(tree);
    out << "energy ledger (w2, units of pi^2):\n";
    for (const auto& row : check.rows)
        out << "  " << row.w2.str() << "  " << row.label << "\n";
    out << "  sum " << check.sum.str() << " vs expected " << check.expected.str()
        << "  [" << (check.balanced ? "balanced" : "VIOLATED") << "]\n";

    std::ostringstream csv;
    csv << "node,w2,w2_double\n";
    for (const auto& row : check.rows)
        csv << quoted(row.label) << "," << row.w2.str() << ","
            << g17(row.w2.to_double()) << "\n";
    csv << "TOTAL," << check.sum.str() << "," << g17(check.sum.to_double())
        << "\n";
    csv << "EXPECTED," << check.expected.str() << ","
        << g17(check.expected.to_double()) << "\n";
    return {out.str(), csv.str()};
}

int sweep_thread_count() {
    const char* env = std::getenv("MONOPOLE_THREADS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return 1;
    return int(std::min(v, 64L));
}

RunOutput run_sweep(const std::vector<double>& d_values, Gauge gauge,
                    const quad::Options& opt) {
    if (d_values.empty())
        throw std::invalid_argument("sweep: need at least one separation");
    for (std::size_t i = 0; i < d_values.size(); ++i)
        if (!(d_values[i] > 0.0) || !std::isfinite(d_values[i]))
            throw std::invalid_argument("sweep: separation " + std::to_string(i) +
                                        " must be positive");

    // Each row is independent; dynamic index dispatch plus in-order assembly
    // keeps the output identical for every thread count.
    std::vector<TwoPointSweepRow> rows(d_values.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= d_values.size() || failed.load()) return;
            try {
                rows[i] = two_point_sweep({d_values[i]}, gauge, opt).at(0);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };
    const int threads = std::min<int>(sweep_thread_count(), int(d_values.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(first_error);

    bool all_ceiling = true;
    bool all_floor = true;
    double min_beta = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        all_ceiling = all_ceiling && (row.report.energy < row.ceiling);
        if (row.has_floor)
            all_floor = all_floor && (row.report.energy > row.floor_bound);
        min_beta = std::min(min_beta, row.beta);
    }

    std::ostringstream out;
    out << "two-point separation sweep (" << rows.size() << " samples, gauge "
        << gauge_name(gauge) << ", " << sweep_thread_count() << " thread(s))\n";
    out << "  every energy below its ceiling : " << yes_no(all_ceiling) << "\n";
    if (gauge == Gauge::HyperbolicGauge)
        out << "  every energy above the floor   : " << yes_no(all_floor) << "\n";
    out << "  smallest gap to ceiling        : " << g17(min_beta) << "\n";

    std::ostringstream csv;
    csv << "d,energy,error_estimate,ceiling,beta,floor,evals,converged\n";
    for (const auto& row : rows) {
        csv << g17(row.d) << "," << g17(row.report.energy) << ","
            << g17(row.report.energy_error) << "," << g17(row.ceiling) << ","
            << g17(row.beta) << ",";
        if (row.has_floor) csv << g17(row.floor_bound);
        csv << "," << row.report.evals << "," << (row.report.converged ? 1 : 0)
            << "\n";
    }
    return {out.str(), csv.str()};
}

} // namespace monopole
