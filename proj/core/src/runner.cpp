#include <degenwave/runner.hpp>

#include <degenwave/analysis.hpp>
#include <degenwave/spectral.hpp>
#include <degenwave/timestep.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace degenwave {

namespace {

std::string format_mu(double mu) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", mu);
    return buf;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

const char* subcommand_name(Subcommand cmd) {
    switch (cmd) {
        case Subcommand::Simulate: return "simulate";
        case Subcommand::Spectrum: return "spectrum";
        case Subcommand::Resolvent: return "resolvent";
        case Subcommand::StaticCheck: return "static-check";
        default: return "report";
    }
}

std::string artifact_path(Subcommand cmd, const RunConfig& cfg) {
    const char* ext = cmd == Subcommand::Report ? ".json" : ".csv";
    const std::string name = std::string(subcommand_name(cmd)) + "_" +
                             format_mu(cfg.mu_a) + "_" + format_mu(cfg.mu_b) +
                             ext;
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

std::ofstream open_artifact(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

void finish_artifact(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::pair<StateVector, double> initial_state(const ExperimentSetup& setup,
                                             const RunConfig& cfg) {
    if (cfg.initial_data == "zero")
        return {StateVector::zero(setup.m.dof_map.total()), 0.0};
    const StaticData F = cfg.initial_data == "smooth"
                             ? canonical_static_data(setup.m.variant)
                             : rough_source_data(setup.mesh);
    return prepare_smooth_initial_data(setup.m, F);
}

void run_simulate(const RunConfig& cfg, std::ofstream& out) {
    const ExperimentSetup setup = build_setup(cfg);
    const auto [s0, graph] = initial_state(setup, cfg);
    (void)graph;
    const EnergySeries series = simulate(setup.m, s0, cfg.dt, cfg.T);
    out << "t,E,cumulative_dissipation\n";
    for (std::size_t k = 0; k < series.times.size(); ++k)
        out << format_full(series.times[k]) << ','
            << format_full(series.energies[k]) << ','
            << format_full(series.boundary_dissipation[k]) << '\n';
}

void run_spectrum(const RunConfig& cfg, std::ofstream& out) {
    const ExperimentSetup setup = build_setup(cfg);
    const SpectrumReport report = spectrum(setup.m);
    out << "re,im\n";
    for (const auto& lambda : report.eigenvalues)
        out << format_full(lambda.real()) << ',' << format_full(lambda.imag())
            << '\n';
}

double sweep_ceiling(const OperatorMatrices& m, const RunConfig& cfg) {
    return cfg.omega_max > 0.0 ? cfg.omega_max : resolved_band_limit(m);
}

void run_resolvent(const RunConfig& cfg, std::ofstream& out) {
    const ExperimentSetup setup = build_setup(cfg);
    const auto samples = resolvent_sweep(setup.m, cfg.omega_min,
                                         sweep_ceiling(setup.m, cfg),
                                         cfg.omega_samples);
    out << "omega,resolvent_norm\n";
    for (const auto& s : samples)
        out << format_full(s.omega) << ',' << format_full(s.norm) << '\n';
}

void run_static_check(const RunConfig& cfg, std::ofstream& out) {
    const ExperimentSetup setup = build_setup(cfg);
    const StaticData F = canonical_static_data(setup.m.variant);
    const StateVector U = solve_static(setup.m, F);

    out << "x,numeric,analytic,error\n";
    auto emit = [&](double x, int dof) {
        const double numeric = dof < 0 ? 0.0 : U.p(dof);
        const double analytic = analytic_static_solution(
            setup.a, setup.b, setup.m.gamma, setup.m.variant, F, x);
        out << format_full(x) << ',' << format_full(numeric) << ','
            << format_full(analytic) << ','
            << format_full(std::abs(numeric - analytic)) << '\n';
    };
    const auto& dm = setup.m.dof_map;
    for (int j = 0; j <= setup.mesh.left.cells(); ++j)
        emit(setup.mesh.left.nodes[static_cast<std::size_t>(j)],
             dm.left_dof(j));
    for (int j = 1; j <= setup.mesh.right.cells(); ++j)
        emit(setup.mesh.right.nodes[static_cast<std::size_t>(j)],
             dm.right_dof(j));
}

void run_report(const RunConfig& cfg, std::ofstream& out) {
    const ExperimentSetup setup = build_setup(cfg);

    const auto [s0, graph] = initial_state(setup, cfg);
    const EnergySeries series = simulate(setup.m, s0, cfg.dt, cfg.T);
    const DecayReport decay = decay_report(series, cfg.mu_a, graph);

    const auto samples = resolvent_sweep(setup.m, cfg.omega_min,
                                         sweep_ceiling(setup.m, cfg),
                                         cfg.omega_samples);
    const ResolventGrowthReport growth = resolvent_report(samples, cfg.mu_a);

    Verdict verdict = Verdict::Pass;
    if (decay.verdict == Verdict::Fail || growth.verdict == Verdict::Fail)
        verdict = Verdict::Fail;
    else if (decay.verdict == Verdict::NoFit ||
             growth.verdict == Verdict::NoFit)
        verdict = Verdict::NoFit;

    nlohmann::ordered_json j;
    j["mu_a"] = cfg.mu_a;
    j["mu_b"] = cfg.mu_b;
    j["variant"] =
        setup.m.variant == Variant::WeakLeft ? "WeakLeft" : "StrongLeft";
    j["delta_predicted"] = growth.delta_predicted;
    j["delta_fitted"] = growth.fit.exponent;
    j["theta_predicted"] = 0.5 * (2.0 - cfg.mu_a);
    j["energy_exponent_fitted"] = decay.fit.exponent;
    j["r_squared"] = decay.fit.r_squared;
    j["verdict"] = to_string(verdict);
    out << j.dump(2) << '\n';
}

}  // namespace

Subcommand subcommand_from_name(const std::string& name) {
    if (name == "simulate") return Subcommand::Simulate;
    if (name == "spectrum") return Subcommand::Spectrum;
    if (name == "resolvent") return Subcommand::Resolvent;
    if (name == "static-check") return Subcommand::StaticCheck;
    if (name == "report") return Subcommand::Report;
    throw std::invalid_argument("unknown subcommand '" + name + "'");
}

ExperimentSetup build_setup(const RunConfig& cfg) {
    const DegeneracyProfile a(0.0, 1.0, cfg.mu_a);
    const DegeneracyProfile b(-1.0, 0.0, cfg.mu_b);
    CoupledMesh mesh = build_coupled_mesh(cfg.mu_a, cfg.mu_b, cfg.n_per_string,
                                          cfg.grading, cfg.grading);
    OperatorMatrices m =
        assemble(mesh, a, b, cfg.gamma, variant_for(cfg.mu_b));
    return ExperimentSetup{std::move(mesh), a, b, std::move(m)};
}

StaticData canonical_static_data(Variant v) {
    return StaticData{
        PiecewisePoly::constant(0.0, 1.0, 0.3, 0.0),
        PiecewisePoly::step({0.0, 0.5, 1.0}, {1.0, -0.5}, 0.0),
        v == Variant::WeakLeft
            ? PiecewisePoly::interpolant({-1.0, 0.0}, {0.0, 0.3}, -1.0)
            : PiecewisePoly::constant(-1.0, 0.0, 0.3, -1.0),
        PiecewisePoly::step({-1.0, -0.3, 0.0}, {-1.0, 0.7}, -1.0)};
}

StaticData rough_source_data(const CoupledMesh& mesh) {
    const double cap = 1.0 / std::sqrt(0.02);
    auto sample = [&](const std::vector<double>& nodes, double star) {
        std::vector<double> values(nodes.size() - 1);
        for (std::size_t c = 0; c + 1 < nodes.size(); ++c) {
            const double mid = 0.5 * (nodes[c] + nodes[c + 1]);
            const double r = std::abs(mid - star);
            values[c] = std::min(1.0 / std::sqrt(r), cap);
        }
        return values;
    };
    return StaticData{
        PiecewisePoly::zero(0.0, 1.0, 0.0),
        PiecewisePoly::step(mesh.right.nodes, sample(mesh.right.nodes, 0.3),
                            0.0),
        PiecewisePoly::zero(-1.0, 0.0, -1.0),
        PiecewisePoly::step(mesh.left.nodes, sample(mesh.left.nodes, -0.6),
                            -1.0)};
}

std::vector<std::string> run_subcommand(Subcommand cmd, const RunConfig& cfg) {
    const std::string path = artifact_path(cmd, cfg);
    std::ofstream out = open_artifact(path);
    switch (cmd) {
        case Subcommand::Simulate: run_simulate(cfg, out); break;
        case Subcommand::Spectrum: run_spectrum(cfg, out); break;
        case Subcommand::Resolvent: run_resolvent(cfg, out); break;
        case Subcommand::StaticCheck: run_static_check(cfg, out); break;
        case Subcommand::Report: run_report(cfg, out); break;
    }
    finish_artifact(out, path);
    return {path};
}

}  // namespace degenwave
