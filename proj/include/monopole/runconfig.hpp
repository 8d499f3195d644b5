// runconfig.hpp — JSON run configurations and degeneration scenarios.
//
// A run configuration names a monopole configuration, the conformal test
// family and gauge to evaluate, and the quadrature envelope:
//
//   {
//     "points": [ {"x": 0.0, "y": 0.0, "z": 1.0, "charge": 1}, ... ],
//     "two_point_d": 1.5,          // alternative to "points": expands to the
//                                  // symmetric pair (0,0,e^{+d/2}), (0,0,e^{-d/2})
//     "family": "neg_dist",        // neg_dist | avg_neg_dist | log_u
//     "gauge": "hyperbolic",       // hyperbolic | scalar_flat
//     "center_index": 0,           // anchor point for neg_dist / log_u
//     "quadrature": { "tol": 1e-7, "rho_max": 30.0, "scheme": "auto",
//                     "mean_reduction": true, "max_evals_per_term": 40000000 }
//   }
//
// Parsing is strict: unknown keys, wrong types, nonpositive heights,
// non-integer charges, and duplicate points are all rejected with messages
// naming the offending field or entry index.  serialize_config followed by
// parse_config reproduces the configuration exactly (bit-for-bit doubles).
//
// A degeneration scenario is a list of snapshots of the same points:
//
//   { "samples": [ {"points": [ ... ]}, {"points": [ ... ]}, ... ] }

#pragma once

#include "monopole/conformal.hpp"
#include "monopole/degeneration.hpp"
#include "monopole/hgeom.hpp"
#include "monopole/quadrature.hpp"
#include "monopole/yamabe.hpp"

#include <string>

namespace monopole {

struct RunConfig {
    MonopoleConfig config;
    TestFamily family = TestFamily::NegDist;
    Gauge gauge = Gauge::HyperbolicGauge;
    int center_index = 0;  // anchor for neg_dist / log_u
    quad::Options quad;
};

bool operator==(const RunConfig& a, const RunConfig& b);
bool operator!=(const RunConfig& a, const RunConfig& b);

// Throws std::invalid_argument with a field-qualified message on any schema
// violation.
RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& rc);

DegenerationScenario parse_scenario(const std::string& json_text);
std::string serialize_scenario(const DegenerationScenario& scenario);

} // namespace monopole
