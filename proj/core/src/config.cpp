#include <degenwave/config.hpp>
#include <degenwave/mesh.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

namespace degenwave {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

double require_number(const json& j, const char* key) {
    if (!j.at(key).is_number()) fail(std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

int require_int(const json& j, const char* key) {
    if (!j.at(key).is_number_integer())
        fail(std::string(key) + " must be an integer");
    return j.at(key).get<int>();
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void probe_output_dir(const std::string& dir) {
    if (dir.empty()) fail("output_dir must be a nonempty path");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail("output_dir '" + dir + "' cannot be created: " + ec.message());
    const auto probe = std::filesystem::path(dir) /
                       (".write_probe_" + std::to_string(::getpid()));
    {
        std::ofstream out(probe);
        out << "probe";
        if (!out) fail("output_dir '" + dir + "' is not writable");
    }
    std::filesystem::remove(probe, ec);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) fail("document must be a JSON object");

    static const char* known[] = {
        "mu_a",      "mu_b",          "gamma", "n_per_string", "grading",
        "dt",        "T",             "omega_min", "omega_max",
        "omega_samples", "seed",      "output_dir", "initial_data"};
    for (const auto& item : doc.items()) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return item.key() == k; }) ==
            std::end(known))
            fail("unknown key '" + item.key() + "'");
    }
    if (!doc.contains("mu_a")) fail("mu_a is required");
    if (!doc.contains("mu_b")) fail("mu_b is required");

    RunConfig cfg;
    cfg.mu_a = require_number(doc, "mu_a");
    cfg.mu_b = require_number(doc, "mu_b");
    if (cfg.mu_a < 0.0 || cfg.mu_a >= 1.0) {
        if (cfg.mu_a >= 1.0)
            fail("mu_a = " + format_value(cfg.mu_a) +
                 " outside [0,1): strong degeneracy at the junction is "
                 "unsupported (the junction traces it needs do not exist)");
        fail("mu_a = " + format_value(cfg.mu_a) + " outside [0,1)");
    }
    if (cfg.mu_b < 0.0 || cfg.mu_b >= 2.0)
        fail("mu_b = " + format_value(cfg.mu_b) + " outside [0,2)");

    if (doc.contains("gamma")) cfg.gamma = require_number(doc, "gamma");
    if (!(cfg.gamma > 0.0)) fail("gamma must be > 0");

    if (doc.contains("n_per_string")) cfg.n_per_string = require_int(doc, "n_per_string");
    if (cfg.n_per_string < 2) fail("n_per_string must be >= 2");

    if (doc.contains("grading")) cfg.grading = require_number(doc, "grading");
    if (cfg.grading != 0.0 && cfg.grading < 1.0)
        fail("grading must be 0 (auto) or >= 1");

    if (doc.contains("T")) cfg.T = require_number(doc, "T");
    if (!(cfg.T > 0.0)) fail("T must be > 0");

    if (doc.contains("omega_min")) cfg.omega_min = require_number(doc, "omega_min");
    if (!(cfg.omega_min > 0.0)) fail("omega_min must be > 0");
    if (doc.contains("omega_max")) cfg.omega_max = require_number(doc, "omega_max");
    if (cfg.omega_max != 0.0 && cfg.omega_max <= cfg.omega_min)
        fail("omega_max must be 0 (auto) or > omega_min");
    if (doc.contains("omega_samples"))
        cfg.omega_samples = require_int(doc, "omega_samples");
    if (cfg.omega_samples < 1) fail("omega_samples must be >= 1");

    if (doc.contains("seed")) {
        const auto& s = doc.at("seed");
        if (!s.is_number_integer() ||
            (!s.is_number_unsigned() && s.get<long long>() < 0))
            fail("seed must be a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }

    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) fail("output_dir must be a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }
    probe_output_dir(cfg.output_dir);

    if (doc.contains("initial_data")) {
        if (!doc.at("initial_data").is_string())
            fail("initial_data must be a string");
        cfg.initial_data = doc.at("initial_data").get<std::string>();
    }
    if (cfg.initial_data != "zero" && cfg.initial_data != "smooth" &&
        cfg.initial_data != "generic")
        fail("initial_data must be one of zero, smooth, generic");

    if (doc.contains("dt")) cfg.dt = require_number(doc, "dt");
    if (cfg.dt < 0.0) fail("dt must be > 0 (0 = choose automatically)");
    if (cfg.dt == 0.0) {
        const CoupledMesh mesh = build_coupled_mesh(
            cfg.mu_a, cfg.mu_b, cfg.n_per_string, cfg.grading, cfg.grading);
        cfg.dt = 0.5 * std::min(mesh.left.h_min(), mesh.right.h_min());
    }

    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["mu_a"] = cfg.mu_a;
    j["mu_b"] = cfg.mu_b;
    j["gamma"] = cfg.gamma;
    j["n_per_string"] = cfg.n_per_string;
    j["grading"] = cfg.grading;
    j["dt"] = cfg.dt;
    j["T"] = cfg.T;
    j["omega_min"] = cfg.omega_min;
    j["omega_max"] = cfg.omega_max;
    j["omega_samples"] = cfg.omega_samples;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    j["initial_data"] = cfg.initial_data;
    return j.dump(2) + "\n";
}

}  // namespace degenwave
