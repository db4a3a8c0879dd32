#pragma once

#include <degenwave/assembly.hpp>
#include <degenwave/config.hpp>
#include <degenwave/statics.hpp>

#include <string>
#include <vector>

namespace degenwave {

enum class Subcommand { Simulate, Spectrum, Resolvent, StaticCheck, Report };

// maps "simulate", "spectrum", "resolvent", "static-check", "report";
// anything else throws std::invalid_argument
Subcommand subcommand_from_name(const std::string& name);

struct ExperimentSetup {
    CoupledMesh mesh;
    DegeneracyProfile a;
    DegeneracyProfile b;
    OperatorMatrices m;
};

ExperimentSetup build_setup(const RunConfig& cfg);

// mixed smooth right-hand side used by static-check and the "smooth"
// initial state: constant velocity on the right, matching ramp or constant
// on the left, step sources on both strings
StaticData canonical_static_data(Variant v);

// rough source for the "generic" initial state: cellwise-constant samples
// of min(|x - x*|^{-1/2}, 1/sqrt(0.02)) with x* = 0.3 on the right and
// x* = -0.6 on the left, zero velocities.  Solving against it spreads the
// state across many modes while keeping it in the generator's domain.
StaticData rough_source_data(const CoupledMesh& mesh);

// Executes one subcommand on the configured system and writes its artifact
// into cfg.output_dir as {subcommand}_{mu_a}_{mu_b}.csv (JSON for report).
// Numeric CSV columns carry 17 significant digits; identical configs
// produce byte-identical files.  Returns the paths written.  All failures
// surface as exceptions with single-line messages.
std::vector<std::string> run_subcommand(Subcommand cmd, const RunConfig& cfg);

}  // namespace degenwave
