#pragma once

#include <cstdint>
#include <string>

namespace degenwave {

// One experiment: which coupled system to build and what to run on it.
// Parsed from a JSON object; mu_a and mu_b are required, everything else
// has a default.  A zero in grading, dt or omega_max means "choose
// automatically" (per-string default grading, 0.5 * h_min, resolved band).
struct RunConfig {
    double mu_a = 0.0;      // junction-side exponent, [0, 1)
    double mu_b = 0.0;      // far-end exponent of the left string, [0, 2)
    double gamma = 1.0;     // boundary stiffness at x = 1, > 0
    int n_per_string = 256;
    double grading = 0.0;   // both strings; 0 = auto, else >= 1
    double dt = 0.0;        // filled with 0.5 * h_min when 0
    double T = 200.0;
    double omega_min = 0.1;
    double omega_max = 0.0;  // 0 = resolved band of the mesh
    int omega_samples = 200;
    std::uint64_t seed = 0;  // reserved for randomized property tests
    std::string output_dir = ".";
    // initial state for time-domain runs: "zero", "smooth" (canonical
    // stationary right-hand side), or "generic" (rough source probe with
    // broad modal content, still in the generator's domain)
    std::string initial_data = "smooth";
};

// Strict parse of a JSON object: unknown keys and wrong types are errors,
// numeric ranges are enforced, output_dir is created and probed for
// writability, and dt is filled in from the implied mesh when absent.
// All failures throw std::invalid_argument with a single-line message.
RunConfig parse_config(const std::string& text);

// Canonical JSON form; parse_config(serialize_config(cfg)) reproduces cfg
// exactly (doubles round-trip through shortest decimal form).
std::string serialize_config(const RunConfig& cfg);

}  // namespace degenwave
