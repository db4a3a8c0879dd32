// Acceptance gate. Each criterion prints exactly one PASS/FAIL line with
// its measured numbers; the exit code is the number of failures. Stated
// runtime bounds are enforced where the criterion gives one.
#include <degenwave/analysis.hpp>
#include <degenwave/runner.hpp>
#include <degenwave/spectral.hpp>
#include <degenwave/statics.hpp>
#include <degenwave/timestep.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace degenwave;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct Line {
    bool ok = false;
    std::string detail;
};

struct Setup {
    DegeneracyProfile a, b;
    OperatorMatrices m;
};

Setup make(double mu_a, double mu_b, int n, double gl = 0.0, double gr = 0.0,
           double gamma = 1.0) {
    const Variant variant = variant_for(mu_b);
    DegeneracyProfile a(0.0, 1.0, mu_a), b(-1.0, 0.0, mu_b);
    auto mesh = build_coupled_mesh(mu_a, mu_b, n, gl, gr);
    auto m = assemble(mesh, a, b, gamma, variant);
    return {a, b, std::move(m)};
}

// generic static data exercising the junction flux and interior kinks;
// admissible for both variants when built for WeakLeft
StaticData mixed_data(Variant variant) {
    StaticData F = StaticData::zero();
    F.f1 = PiecewisePoly::constant(0.0, 1.0, 0.3, 0.0);
    F.f2 = PiecewisePoly::step({0.0, 0.5, 1.0}, {1.0, -0.5}, 0.0);
    F.g1 = variant == Variant::WeakLeft
               ? PiecewisePoly::linear(-1.0, 0.0, 0.0, 0.3, -1.0)
               : PiecewisePoly::constant(-1.0, 0.0, 0.3, -1.0);
    F.g2 = PiecewisePoly::step({-1.0, -0.3, 0.0}, {-1.0, 0.7}, -1.0);
    return F;
}

StateVector random_state(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    StateVector s = StateVector::zero(n);
    for (int i = 0; i < n; ++i) {
        s.p(i) = dist(rng);
        s.q(i) = dist(rng);
    }
    return s;
}

constexpr double kMuAGrid[] = {0.0, 0.25, 0.5, 0.75};
constexpr double kMuBGrid[] = {0.0, 0.5, 1.0, 1.5};

// 1. Static oracle equivalence: frozen closed-form values for the constant
// coefficient case, then first-order energy convergence across the grid.
Line criterion1() {
    const auto t0 = Clock::now();

    auto oracle = make(0.0, 0.0, 256);
    auto F0 = StaticData::zero();
    F0.f2 = PiecewisePoly::constant(0.0, 1.0, 1.0, 0.0);
    const auto U0 = solve_static(oracle.m, F0);
    const double uj = U0.p(oracle.m.dof_map.junction());
    const double flux = junction_flux_left(oracle.m, oracle.b, U0.p);
    const double err_j = std::abs(uj + 0.5);
    const double err_f = std::abs(flux + 0.5);

    double worst_order = 1e300;
    for (double mu_a : kMuAGrid) {
        for (double mu_b : kMuBGrid) {
            const auto F = mixed_data(variant_for(mu_b));
            // 1.5x the critical grading avoids the log factor the critical
            // exponent carries; the left cap keeps nodes separable at -1
            const double gl =
                std::min(1.5 * grading_for_energy_rate(mu_b), 6.0);
            const double gr =
                std::min(1.5 * grading_for_energy_rate(mu_a), 12.0);
            double err[3];
            int i = 0;
            for (int n : {64, 128, 256}) {
                auto s = make(mu_a, mu_b, n, gl, gr);
                const auto U = solve_static(s.m, F);
                err[i++] = static_energy_error(s.m, s.a, s.b, F, U);
            }
            // least-squares observed order over one refinement pair each
            const double order = 0.5 * std::log2(err[0] / err[2]);
            worst_order = std::min(worst_order, order);
        }
    }

    const double secs = seconds_since(t0);
    const bool ok = err_j <= 1e-3 && err_f <= 1e-3 && worst_order >= 0.9 &&
                    secs < 10.0;
    return {ok, strf("junction err=%.2e flux err=%.2e (tol 1e-3), worst "
                     "observed order=%.3f (gate 0.9), %.1fs (bound 10s)",
                     err_j, err_f, worst_order, secs)};
}

// 2. Dissipativity identity: Re<A U, U> = -damp |v(1)|^2 for random states,
// at rounding accuracy relative to the state's own scale.
Line criterion2() {
    const auto t0 = Clock::now();
    std::mt19937 rng(20250814u);
    double worst = 0.0;
    int checks = 0;
    for (double mu_a : kMuAGrid) {
        for (double mu_b : kMuBGrid) {
            auto s = make(mu_a, mu_b, 64);
            const int n = s.m.dof_map.total();
            const int bnode = s.m.dof_map.boundary();
            for (int trial = 0; trial < 100; ++trial) {
                const auto st = random_state(n, rng);
                const auto As = apply_generator(s.m, st);
                const double lhs = energy_inner(s.m, As, st);
                const double expected = -s.m.damp * st.q(bnode) * st.q(bnode);
                const double scale = st.q(bnode) * st.q(bnode) +
                                     energy_norm(s.m, As) * energy_norm(s.m, st);
                worst = std::max(worst, std::abs(lhs - expected) / scale);
                ++checks;
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool ok = worst <= 1e-10;
    return {ok, strf("%d random states, worst |residual|/scale=%.2e "
                     "(tol 1e-10), %.1fs",
                     checks, worst, secs)};
}

// 3. Discrete energy balance over T = 100.
Line criterion3() {
    const struct {
        double mu_a, mu_b;
    } cases[] = {{0.25, 0.5}, {0.5, 1.0}, {0.75, 1.5}};
    double worst = 0.0, worst_secs = 0.0;
    for (const auto& c : cases) {
        const auto t0 = Clock::now();
        auto s = make(c.mu_a, c.mu_b, 128);
        const auto F = canonical_static_data(s.m.variant);
        const auto [u0, graph] = prepare_smooth_initial_data(s.m, F);
        (void)graph;
        const auto series = simulate(s.m, u0, 0.01, 100.0);
        const double e0 = series.energies.front();
        const double defect = std::abs(e0 - series.energies.back() -
                                       series.boundary_dissipation.back());
        worst = std::max(worst, defect / e0);
        worst_secs = std::max(worst_secs, seconds_since(t0));
    }
    const bool ok = worst <= 1e-8 && worst_secs < 30.0;
    return {ok, strf("3 configs, worst |E(0)-E(T)-sum diss|/E(0)=%.2e "
                     "(tol 1e-8), slowest %.1fs (bound 30s)",
                     worst, worst_secs)};
}

// 4. Spectrum location: every mode strictly damped (positive boundary
// trace), and no eigenvalue closer than 1e-6 to the axis inside the
// resolved band.
Line criterion4() {
    const struct {
        double mu_a, mu_b;
    } cases[] = {{0.0, 0.0}, {0.25, 0.5}, {0.5, 1.0}, {0.75, 1.5}};
    double min_trace = 1e300, min_band_re = 1e300, worst_secs = 0.0;
    for (const auto& c : cases) {
        const auto t0 = Clock::now();
        auto s = make(c.mu_a, c.mu_b, 256);
        const auto rep = spectrum(s.m);
        const double band = resolved_band_limit(s.m);
        min_trace = std::min(min_trace, rep.min_boundary_trace);
        for (const auto& ev : rep.eigenvalues)
            if (std::abs(ev.imag()) <= band)
                min_band_re = std::min(min_band_re, std::abs(ev.real()));
        worst_secs = std::max(worst_secs, seconds_since(t0));
    }
    const bool ok = min_trace > 0.0 && min_band_re >= 1e-6 &&
                    worst_secs < 60.0;
    return {ok, strf("4 configs at n=256, min boundary trace=%.1e (>0 "
                     "certifies Re<0), min in-band |Re|=%.2e (tol 1e-6), "
                     "slowest %.1fs (bound 60s)",
                     min_trace, min_band_re, worst_secs)};
}

// shared between criteria 6 and 7
struct DecayOutcome {
    bool ran = false;
    double exponent[3][2] = {};  // [mu_a index][mesh index]
};
DecayOutcome g_decay;

constexpr double kMuADecay[] = {0.25, 0.5, 0.75};
constexpr int kDecayMeshes[] = {256, 512};

// 5. Resolvent growth exponent, sampled at the eigenfrequencies of the
// coarse operator so both meshes see the same peak set.
Line criterion5() {
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (double mu_a : kMuADecay) {
        auto coarse = make(mu_a, 0.5, 256);
        auto fine = make(mu_a, 0.5, 512);
        const double band = resolved_band_limit(coarse.m);
        const auto rep = spectrum(coarse.m);
        std::vector<double> omegas;
        for (const auto& ev : rep.eigenvalues) {
            const double w = ev.imag();
            if (w < 2.0 || w > band) continue;
            if (!omegas.empty() && w - omegas.back() < 1e-6) continue;
            omegas.push_back(w);
        }
        std::vector<ResolventSample> s256, s512;
        for (double w : omegas) {
            const auto a = resolvent_norm(coarse.m, w);
            const auto b = resolvent_norm(fine.m, w);
            if (!a.converged || !b.converged) continue;
            s256.push_back(a);
            s512.push_back(b);
        }
        const auto r256 = resolvent_report(s256, mu_a);
        const auto r512 = resolvent_report(s512, mu_a);
        const double drift =
            std::abs(r256.fit.exponent - r512.fit.exponent);
        const bool pass = r256.verdict == Verdict::Pass &&
                          r512.verdict == Verdict::Pass && drift < 0.1;
        ok = ok && pass;
        detail += strf("%smu_a=%.2f slopes %.3f/%.3f (cap %.3f) drift %.3f",
                       detail.empty() ? "" : "; ", mu_a, r256.fit.exponent,
                       r512.fit.exponent, r256.delta_predicted + 0.2, drift);
    }
    detail += strf(", %.0fs", seconds_since(t0));
    return {ok, detail};
}

// 6. Pre-asymptotic energy decay for data prepared through the stationary
// solve (finite graph norm).
Line criterion6() {
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
        const double mu_a = kMuADecay[i];
        for (int k = 0; k < 2; ++k) {
            auto s = make(mu_a, 0.5, kDecayMeshes[k]);
            const auto [u0, graph] = prepare_smooth_initial_data(
                s.m, rough_source_data(s.m.mesh));
            const auto series = simulate(s.m, u0, 0.01, 200.0);
            const auto rep = decay_report(series, mu_a, graph);
            g_decay.exponent[i][k] = rep.fit.exponent;
            ok = ok && rep.verdict == Verdict::Pass;
            if (k == 0)
                detail += strf("%smu_a=%.2f exp %.3f/",
                               detail.empty() ? "" : "; ", mu_a,
                               rep.fit.exponent);
            else
                detail += strf("%.3f (gate %.3f, window [%.1f,%.1f])",
                               rep.fit.exponent, -(2.0 - mu_a) + 0.3,
                               rep.fit.window.first, rep.fit.window.second);
        }
    }
    g_decay.ran = true;
    detail += strf(", %.0fs", seconds_since(t0));
    return {ok, detail};
}

// 7. Two-route consistency: 2/|energy exponent| against delta = 2/(2-mu_a).
Line criterion7() {
    if (!g_decay.ran)
        return {false, "decay exponents unavailable (criterion 6 errored)"};
    std::string detail;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
        const double mu_a = kMuADecay[i];
        const double delta = 2.0 / (2.0 - mu_a);
        double worst = 0.0;
        for (int k = 0; k < 2; ++k) {
            const double e = g_decay.exponent[i][k];
            if (e == 0.0) {
                ok = false;
                continue;
            }
            worst = std::max(worst,
                             std::abs(2.0 / std::abs(e) - delta) / delta);
        }
        ok = ok && worst <= 0.25;
        detail += strf("%smu_a=%.2f rel gap %.1f%%",
                       detail.empty() ? "" : "; ", mu_a, 100.0 * worst);
    }
    detail += " (tol 25%)";
    return {ok, detail};
}

// exact \int alpha |v'|^2 for the nodal interpolant of v
double weighted_slope_energy(const DegeneracyProfile& alpha,
                             const StringMesh& mesh,
                             const std::vector<double>& v) {
    double total = 0.0;
    for (int c = 0; c < mesh.cells(); ++c) {
        const double h = mesh.h(c);
        const double s = (v[static_cast<std::size_t>(c) + 1] -
                          v[static_cast<std::size_t>(c)]) /
                         h;
        total += s * s * weighted_cell_integral(alpha, mesh.nodes[c],
                                                mesh.nodes[c + 1]);
    }
    return total;
}

double l2_sq_minus_constant(const StringMesh& mesh,
                            const std::vector<double>& v, double shift) {
    const auto poly = PiecewisePoly::interpolant(mesh.nodes, v, mesh.x0())
                          .plus_constant(-shift);
    return poly.squared().integral();
}

// 8. Weighted Poincare inequalities with the exact constants.
Line criterion8() {
    const auto t0 = Clock::now();
    std::mt19937 rng(20250814u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double string_ends[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};
    int checks = 0, violations = 0;
    double worst_ratio = 0.0;
    for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 1.9}) {
        for (const auto& ends : string_ends) {
            const DegeneracyProfile alpha(ends[0], ends[1], mu);
            const StringMesh meshes[3] = {
                build_graded_mesh(ends[0], ends[1], 16, 1.0),
                build_graded_mesh(ends[0], ends[1], 64, auto_grading(mu)),
                build_graded_mesh(ends[0], ends[1], 33, 2.0),
            };
            const double len = ends[1] - ends[0];
            const double c_mean = len * len / ((2.0 - mu) * alpha.scale());
            const double c_full = alpha.poincare_constant();
            for (const auto& mesh : meshes) {
                std::vector<double> v(mesh.nodes.size());
                for (int trial = 0; trial < 100; ++trial) {
                    for (auto& x : v) x = dist(rng);

                    const double rhs = weighted_slope_energy(alpha, mesh, v);
                    const double lhs_mean =
                        l2_sq_minus_constant(mesh, v, v.back());
                    if (lhs_mean > c_mean * rhs * (1.0 + 1e-10) + 1e-14)
                        ++violations;
                    if (rhs > 0.0)
                        worst_ratio =
                            std::max(worst_ratio, lhs_mean / (c_mean * rhs));

                    auto w = v;
                    w.back() = 0.0;
                    const double rhs_zero =
                        weighted_slope_energy(alpha, mesh, w);
                    const double lhs_zero = l2_sq_minus_constant(mesh, w, 0.0);
                    if (lhs_zero > c_full * rhs_zero * (1.0 + 1e-10) + 1e-14)
                        ++violations;
                    if (rhs_zero > 0.0)
                        worst_ratio = std::max(
                            worst_ratio, lhs_zero / (c_full * rhs_zero));
                    ++checks;
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool ok = violations == 0;
    return {ok, strf("%d random functions x 2 bounds, %d violations, "
                     "sharpest lhs/(C rhs)=%.3f, %.1fs",
                     checks, violations, worst_ratio, secs)};
}

// 9. Continuity across the variant split: the same data and mesh family at
// mu_b = 0.999 (pinned end) and 1.0 (natural end). The discrete gap shrinks
// like 1/log(n) because the continuum boundary layer at the pinned end
// lives below any resolvable scale; the witness is a bounded, monotonically
// shrinking gap plus paired spectra.
Line criterion9() {
    const auto t0 = Clock::now();
    const double mu_a = 0.5, grading = 3.0, band = 8.0;
    const auto F = canonical_static_data(Variant::WeakLeft);
    std::vector<double> jgap, wrel;
    bool finite = true, counts_match = true;
    for (int n : {64, 128, 256}) {
        auto weak = make(mu_a, 0.999, n, grading, grading);
        auto strong = make(mu_a, 1.0, n, grading, grading);
        const auto uw = solve_static(weak.m, F);
        const auto us = solve_static(strong.m, F);
        finite = finite && uw.p.allFinite() && us.p.allFinite();
        jgap.push_back(std::abs(uw.p(weak.m.dof_map.junction()) -
                                us.p(strong.m.dof_map.junction())));

        const auto rw = spectrum(weak.m);
        const auto rs = spectrum(strong.m);
        std::vector<std::complex<double>> ibw, ibs;
        for (const auto& ev : rw.eigenvalues)
            if (ev.imag() > 0.05 && ev.imag() <= band) ibw.push_back(ev);
        for (const auto& ev : rs.eigenvalues)
            if (ev.imag() > 0.05 && ev.imag() <= band) ibs.push_back(ev);
        counts_match = counts_match && ibw.size() == ibs.size();
        double worst = 0.0;
        for (std::size_t i = 0; i < std::min(ibw.size(), ibs.size()); ++i)
            worst = std::max(worst,
                             std::abs(ibw[i] - ibs[i]) / std::abs(ibs[i]));
        wrel.push_back(worst);
    }
    bool shrinking = true;
    for (std::size_t i = 1; i < jgap.size(); ++i)
        shrinking = shrinking && jgap[i] <= jgap[i - 1] + 1e-12 &&
                    wrel[i] <= wrel[i - 1] + 1e-12;
    const bool bounded = *std::max_element(jgap.begin(), jgap.end()) <= 0.5 &&
                         *std::max_element(wrel.begin(), wrel.end()) <= 0.25;
    const bool ok = finite && counts_match && shrinking && bounded;
    return {ok, strf("junction gap %.3f->%.3f->%.3f, worst paired spectral "
                     "gap %.3f->%.3f->%.3f over n=64/128/256 (bounded, "
                     "shrinking), %.0fs",
                     jgap[0], jgap[1], jgap[2], wrel[0], wrel[1], wrel[2],
                     seconds_since(t0))};
}

}  // namespace

int main() {
    Line (*criteria[])() = {criterion1, criterion2, criterion3,
                            criterion4, criterion5, criterion6,
                            criterion7, criterion8, criterion9};
    int failures = 0;
    for (int i = 0; i < 9; ++i) {
        Line r;
        try {
            r = criteria[i]();
        } catch (const std::exception& e) {
            r = {false, strf("exception: %s", e.what())};
        }
        std::printf("criterion %d: %s  %s\n", i + 1, r.ok ? "PASS" : "FAIL",
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
