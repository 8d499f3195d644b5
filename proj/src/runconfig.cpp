// runconfig.cpp — strict JSON parsing and exact serialization of run
// configurations and degeneration scenarios.

#include "monopole/runconfig.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace monopole {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail("unknown key \"" + it.key() + "\" in " + where);
    }
}

double need_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where + " is missing \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key + " must be a number");
    return v.get<double>();
}

double opt_number(const json& obj, const char* key, double dflt,
                  const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key + " must be a number");
    return v.get<double>();
}

long long opt_integer(const json& obj, const char* key, long long dflt,
                      const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(where + "." + key + " must be an integer");
    return v.get<long long>();
}

std::string opt_string(const json& obj, const char* key, const std::string& dflt,
                       const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(where + "." + key + " must be a string");
    return v.get<std::string>();
}

bool opt_bool(const json& obj, const char* key, bool dflt,
              const std::string& where) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(where + "." + key + " must be a boolean");
    return v.get<bool>();
}

MonopoleConfig parse_points(const json& arr, const std::string& where) {
    if (!arr.is_array()) fail(where + " must be an array");
    MonopoleConfig cfg;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ew = where + "[" + std::to_string(i) + "]";
        const json& e = arr[i];
        if (!e.is_object()) fail(ew + " must be an object");
        check_keys(e, {"x", "y", "z", "charge"}, ew);
        MonopolePoint p;
        p.pos.x = need_number(e, "x", ew);
        p.pos.y = need_number(e, "y", ew);
        p.pos.z = need_number(e, "z", ew);
        if (!(p.pos.z > 0.0) || !std::isfinite(p.pos.z))
            fail(ew + ".z must be positive (upper half-space height)");
        if (!std::isfinite(p.pos.x) || !std::isfinite(p.pos.y))
            fail(ew + " has a non-finite coordinate");
        p.charge = opt_integer(e, "charge", 1, ew);
        if (p.charge < 1) fail(ew + ".charge must be a positive integer");
        cfg.points.push_back(p);
    }
    for (std::size_t a = 0; a < cfg.points.size(); ++a)
        for (std::size_t b = a + 1; b < cfg.points.size(); ++b)
            if (dist_h(cfg.points[a].pos, cfg.points[b].pos) < 1e-10)
                fail(where + "[" + std::to_string(b) + "] duplicates " + where +
                     "[" + std::to_string(a) + "]");
    return cfg;
}

json points_to_json(const MonopoleConfig& cfg) {
    json arr = json::array();
    for (const auto& p : cfg.points) {
        json e;
        e["x"] = p.pos.x;
        e["y"] = p.pos.y;
        e["z"] = p.pos.z;
        e["charge"] = p.charge;
        arr.push_back(std::move(e));
    }
    return arr;
}

TestFamily family_from_name(const std::string& name) {
    if (name == "neg_dist") return TestFamily::NegDist;
    if (name == "avg_neg_dist") return TestFamily::AvgNegDist;
    if (name == "log_u") return TestFamily::LogU;
    fail("family must be one of neg_dist, avg_neg_dist, log_u (got \"" + name +
         "\")");
}

Gauge gauge_from_name(const std::string& name) {
    if (name == "hyperbolic") return Gauge::HyperbolicGauge;
    if (name == "scalar_flat" || name == "flat") return Gauge::ScalarFlatGauge;
    fail("gauge must be hyperbolic or scalar_flat (got \"" + name + "\")");
}

json parse_root(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("not valid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("top level must be an object");
    return root;
}

} // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
    if (a.config.points.size() != b.config.points.size()) return false;
    for (std::size_t i = 0; i < a.config.points.size(); ++i) {
        const auto& pa = a.config.points[i];
        const auto& pb = b.config.points[i];
        if (pa.pos.x != pb.pos.x || pa.pos.y != pb.pos.y || pa.pos.z != pb.pos.z ||
            pa.charge != pb.charge)
            return false;
    }
    return a.family == b.family && a.gauge == b.gauge &&
           a.center_index == b.center_index && a.quad.tol == b.quad.tol &&
           a.quad.rho_max == b.quad.rho_max && a.quad.scheme == b.quad.scheme &&
           a.quad.mean_reduction == b.quad.mean_reduction &&
           a.quad.max_evals_per_term == b.quad.max_evals_per_term;
}

bool operator!=(const RunConfig& a, const RunConfig& b) { return !(a == b); }

RunConfig parse_config(const std::string& json_text) {
    const json root = parse_root(json_text);
    check_keys(root,
               {"points", "two_point_d", "family", "gauge", "center_index",
                "quadrature"},
               "the top level");

    RunConfig rc;
    const bool has_points = root.contains("points");
    const bool has_two_point = root.contains("two_point_d");
    if (has_points && has_two_point)
        fail("give either points or two_point_d, not both");
    if (has_points) {
        rc.config = parse_points(root.at("points"), "points");
    } else if (has_two_point) {
        const json& v = root.at("two_point_d");
        if (!v.is_number()) fail("two_point_d must be a number");
        const double d = v.get<double>();
        if (!(d > 0.0) || !std::isfinite(d)) fail("two_point_d must be positive");
        rc.config.points = {
            MonopolePoint{HPoint{0.0, 0.0, std::exp(0.5 * d)}, 1},
            MonopolePoint{HPoint{0.0, 0.0, std::exp(-0.5 * d)}, 1}};
    } else {
        fail("the top level is missing \"points\" (or \"two_point_d\")");
    }

    rc.family = family_from_name(
        opt_string(root, "family", "neg_dist", "the top level"));
    rc.gauge =
        gauge_from_name(opt_string(root, "gauge", "hyperbolic", "the top level"));

    const long long ci = opt_integer(root, "center_index", 0, "the top level");
    if (ci < 0 || (std::size_t)ci >= std::max<std::size_t>(rc.config.points.size(), 1))
        fail("center_index " + std::to_string(ci) + " is out of range for " +
             std::to_string(rc.config.points.size()) + " points");
    rc.center_index = int(ci);

    if (root.contains("quadrature")) {
        const json& q = root.at("quadrature");
        if (!q.is_object()) fail("quadrature must be an object");
        check_keys(q, {"tol", "rho_max", "scheme", "mean_reduction",
                       "max_evals_per_term"},
                   "quadrature");
        rc.quad.tol = opt_number(q, "tol", rc.quad.tol, "quadrature");
        if (!(rc.quad.tol > 0.0)) fail("quadrature.tol must be positive");
        rc.quad.rho_max = opt_number(q, "rho_max", rc.quad.rho_max, "quadrature");
        if (!(rc.quad.rho_max > 0.0)) fail("quadrature.rho_max must be positive");
        const std::string sname =
            opt_string(q, "scheme", quad::scheme_name(rc.quad.scheme), "quadrature");
        try {
            rc.quad.scheme = quad::scheme_from_name(sname);
        } catch (const std::invalid_argument&) {
            fail("quadrature.scheme \"" + sname +
                 "\" is not one of auto, radial1d, axisym2d, tensor3d");
        }
        rc.quad.mean_reduction =
            opt_bool(q, "mean_reduction", rc.quad.mean_reduction, "quadrature");
        rc.quad.max_evals_per_term = opt_integer(
            q, "max_evals_per_term", rc.quad.max_evals_per_term, "quadrature");
        if (rc.quad.max_evals_per_term < 1)
            fail("quadrature.max_evals_per_term must be positive");
    }
    return rc;
}

std::string serialize_config(const RunConfig& rc) {
    json root;
    root["points"] = points_to_json(rc.config);
    root["family"] = family_name(rc.family);
    root["gauge"] = gauge_name(rc.gauge);
    root["center_index"] = rc.center_index;
    json q;
    q["tol"] = rc.quad.tol;
    q["rho_max"] = rc.quad.rho_max;
    q["scheme"] = quad::scheme_name(rc.quad.scheme);
    q["mean_reduction"] = rc.quad.mean_reduction;
    q["max_evals_per_term"] = rc.quad.max_evals_per_term;
    root["quadrature"] = std::move(q);
    return root.dump(2) + "\n";
}

DegenerationScenario parse_scenario(const std::string& json_text) {
    const json root = parse_root(json_text);
    check_keys(root, {"samples"}, "the top level");
    if (!root.contains("samples")) fail("the top level is missing \"samples\"");
    const json& samples = root.at("samples");
    if (!samples.is_array()) fail("samples must be an array");

    DegenerationScenario sc;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const std::string sw = "samples[" + std::to_string(j) + "]";
        const json& s = samples[j];
        if (!s.is_object()) fail(sw + " must be an object");
        check_keys(s, {"points"}, sw);
        if (!s.contains("points")) fail(sw + " is missing \"points\"");
        sc.samples.push_back(parse_points(s.at("points"), sw + ".points"));
    }
    return sc;
}

std::string serialize_scenario(const DegenerationScenario& scenario) {
    json root;
    json samples = json::array();
    for (const auto& cfg : scenario.samples) {
        json s;
        s["points"] = points_to_json(cfg);
        samples.push_back(std::move(s));
    }
    root["samples"] = std::move(samples);
    return root.dump(2) + "\n";
}

} // namespace monopole
