// monopole_cli.cpp — command-line front end for the monopole metrics toolkit.
//
//   monopole energy    --config cfg.json [--tol --rho-max --scheme --out csv]
//   monopole bounds    --mults 1,2,2 [--out csv]
//   monopole integrals [--tol --rho-max --scheme --out csv]
//   monopole ode-scan  --n 1 [--lo 0.1 --hi 100 --count 60] [--out csv]
//   monopole budgets   [--max-n 8] [--out csv]
//   monopole tree      --scenario sc.json [--out csv]
//   monopole sweep     [--d-min 0.05 --d-max 10 --count 20]
//                      [--gauge hyperbolic|scalar_flat] [--tol --rho-max
//                      --scheme --out csv]
//
// Reports go to stdout; --out writes the machine-readable CSV.  The sweep
// honors the MONOPOLE_THREADS environment variable (output is identical for
// every thread count).

#include "monopole/runconfig.hpp"
#include "monopole/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void deliver(const monopole::RunOutput& out, const std::string& out_path) {
    std::cout << out.report;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << out.csv;
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace monopole;

    CLI::App app{"hyperbolic monopole metrics: energies, bounds, budgets, trees"};
    app.require_subcommand(1);

    std::string config_path, scenario_path, out_path;
    std::string scheme = "auto";
    std::string gauge_arg = "hyperbolic";
    double tol = quad::Options{}.tol;
    double rho_max = quad::Options{}.rho_max;
    double lo = 0.1, hi = 100.0;
    double d_min = 0.05, d_max = 10.0;
    int n = 1, count = 60, sweep_count = 20;
    long long max_n = 8;
    std::vector<long long> mults;

    const auto add_quad_flags = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "quadrature tolerance");
        cmd->add_option("--rho-max", rho_max, "quadrature truncation radius");
        cmd->add_option("--scheme", scheme,
                        "quadrature scheme: auto|radial1d|axisym2d|tensor3d");
    };
    const auto add_out_flag = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the CSV table to this file");
    };

    CLI::App* energy = app.add_subcommand("energy", "energy of one configuration");
    energy->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    add_quad_flags(energy);
    add_out_flag(energy);

    CLI::App* bounds = app.add_subcommand("bounds", "closed-form bound table");
    bounds->add_option("--mults", mults, "point multiplicities")
        ->delimiter(',');
    add_out_flag(bounds);

    CLI::App* integrals =
        app.add_subcommand("integrals", "closed-form integral audit");
    add_quad_flags(integrals);
    add_out_flag(integrals);

    CLI::App* ode = app.add_subcommand("ode-scan", "profile-equation lambda scan");
    ode->add_option("--n", n, "cone order (>= 1)")->required();
    ode->add_option("--lo", lo, "grid lower endpoint");
    ode->add_option("--hi", hi, "grid upper endpoint");
    ode->add_option("--count", count, "number of log-spaced grid points");
    add_out_flag(ode);

    CLI::App* budgets =
        app.add_subcommand("budgets", "exact characteristic-number tables");
    budgets->add_option("--max-n", max_n, "largest total charge tabulated");
    add_out_flag(budgets);

    CLI::App* tree = app.add_subcommand("tree", "degeneration tree prediction");
    tree->add_option("--scenario", scenario_path, "scenario (JSON)")->required();
    add_out_flag(tree);

    CLI::App* sweep = app.add_subcommand("sweep", "two-point separation sweep");
    sweep->add_option("--d-min", d_min, "smallest separation");
    sweep->add_option("--d-max", d_max, "largest separation");
    sweep->add_option("--count", sweep_count, "number of log-spaced separations");
    sweep->add_option("--gauge", gauge_arg, "hyperbolic | scalar_flat");
    add_quad_flags(sweep);
    add_out_flag(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(energy)) {
            RunConfig rc = parse_config(slurp(config_path));
            if (energy->count("--tol")) rc.quad.tol = tol;
            if (energy->count("--rho-max")) rc.quad.rho_max = rho_max;
            if (energy->count("--scheme"))
                rc.quad.scheme = quad::scheme_from_name(scheme);
            deliver(run_energy(rc), out_path);
        } else if (app.got_subcommand(bounds)) {
            deliver(run_bounds(mults), out_path);
        } else if (app.got_subcommand(integrals)) {
            quad::Options opt;
            opt.tol = tol;
            opt.rho_max = rho_max;
            opt.scheme = quad::scheme_from_name(scheme);
            deliver(run_integrals(opt), out_path);
        } else if (app.got_subcommand(ode)) {
            deliver(run_ode_scan(n, lo, hi, count), out_path);
        } else if (app.got_subcommand(budgets)) {
            deliver(run_budgets(max_n), out_path);
        } else if (app.got_subcommand(tree)) {
            deliver(run_tree(parse_scenario(slurp(scenario_path))), out_path);
        } else if (app.got_subcommand(sweep)) {
            quad::Options opt;
            opt.tol = tol;
            opt.rho_max = rho_max;
            opt.scheme = quad::scheme_from_name(scheme);
            Gauge gauge = Gauge::HyperbolicGauge;
            if (gauge_arg == "scalar_flat" || gauge_arg == "flat")
                gauge = Gauge::ScalarFlatGauge;
            else if (gauge_arg != "hyperbolic")
                throw std::invalid_argument("unknown gauge: " + gauge_arg);
            deliver(run_sweep(log_spaced_grid(d_min, d_max, sweep_count), gauge, opt),
                    out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
