// runner.hpp — command implementations shared by the command-line tool and
// the smoke tests.  Each command produces a human-readable report and a CSV
// table; all CSV numbers are printed with 17 significant digits and the
// output is bit-identical across runs and thread counts.

#pragma once

#include "monopole/ode.hpp"
#include "monopole/runconfig.hpp"

#include <string>
#include <vector>

namespace monopole {

struct RunOutput {
    std::string report;  // human-readable summary
    std::string csv;     // machine-readable table
};

// Energy of one configuration in the requested gauge and test family.
RunOutput run_energy(const RunConfig& rc);

// Closed-form bound table for a configuration with the given multiplicities,
// including the orbifold-existence verdict.
RunOutput run_bounds(const std::vector<long long>& mults);

// Quadrature audit: the closed-form integral table.
RunOutput run_integrals(const quad::Options& opt);

// Profile-equation scan over a log-spaced lambda grid.
RunOutput run_ode_scan(int n, double lo, double hi, int count,
                       const OdeOptions& opt = OdeOptions{});

// Exact characteristic-number tables for n = 1..max_n.
RunOutput run_budgets(long long max_n);

// Degeneration prediction with its exact energy audit.
RunOutput run_tree(const DegenerationScenario& scenario);

// Two-point separation sweep in the given gauge.
RunOutput run_sweep(const std::vector<double>& d_values, Gauge gauge,
                    const quad::Options& opt);

// Worker count for run_sweep: MONOPOLE_THREADS when set to a positive
// integer (clamped to 64), otherwise 1.  Rows are assembled in input order,
// so the output does not depend on the thread count.
int sweep_thread_count();

} // namespace monopole
