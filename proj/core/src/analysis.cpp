#include <degenwave/analysis.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace degenwave {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        default: return "NO_FIT";
    }
}

FitResult fit_power_law(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        std::pair<double, double> window) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_power_law: length mismatch");

    std::vector<double> lx, ly;
    double x_lo = 0.0, x_hi = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < window.first || xs[i] > window.second) continue;
        if (xs[i] <= 0.0 || ys[i] <= 0.0)
            throw std::domain_error(
                "fit_power_law: nonpositive value inside fit window");
        if (lx.empty()) {
            x_lo = x_hi = xs[i];
        } else {
            x_lo = std::min(x_lo, xs[i]);
            x_hi = std::max(x_hi, xs[i]);
        }
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    if (lx.size() < 8)
        throw std::domain_error(
            "fit_power_law: fewer than 8 samples in the window");

    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw std::domain_error("fit_power_law: degenerate abscissa");

    FitResult fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
        ss_res += r * r;
    }
    // constant data leaves syy at rounding level; the ratio is then noise
    const double syy_floor = n * std::pow(1e-15 * (1.0 + std::abs(my)), 2);
    fit.r_squared =
        syy <= syy_floor ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    fit.window = {x_lo, x_hi};
    return fit;
}

DecayReport decay_report(const EnergySeries& series, double mu_a,
                         double graph_norm) {
    DecayReport report;
    report.target_exponent = -(2.0 - mu_a);
    report.graph_norm = graph_norm;

    if (series.times.size() != series.energies.size())
        throw std::invalid_argument("decay_report: ragged series");
    if (series.energies.empty() || series.energies.front() <= 0.0) {
        report.verdict = Verdict::NoFit;
        report.annotation = "degenerate series (zero initial energy)";
        return report;
    }

    const double e0 = series.energies.front();
    const double t0 = 5.0;
    const double t_end = series.times.back();
    if (t_end <= t0)
        throw std::runtime_error(
            "decay_report: series too short, needs t beyond 5");

    // floor rule: stop where E reaches rounding debris
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor_cut = 1e3 * (eps * eps * e0);
    double t1 = t_end;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        if (series.energies[i] <= floor_cut) {
            t1 = series.times[i];
            break;
        }
    }

    // tail rule: bin log E at 8 nodes per decade of t, then cut at the
    // first sustained concavity (two consecutive negative second
    // differences on a descending stretch). The exponential tail dives
    // concave in log-log; modal beating alternates sign and wants finer
    // bins than this, so it cannot produce two matching nodes in a row.
    const double ls = std::log(t0), le = std::log(std::min(t1, t_end));
    if (le > ls) {
        const int nodes =
            std::max(8, static_cast<int>(std::lround(
                            (le - ls) / std::log(10.0) * 8.0)) + 1);
        std::vector<double> sum(static_cast<std::size_t>(nodes), 0.0);
        std::vector<int> cnt(static_cast<std::size_t>(nodes), 0);
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            const double t = series.times[i], e = series.energies[i];
            if (t < t0 || t > t1 || e <= 0.0) continue;
            int k = static_cast<int>((std::log(t) - ls) / (le - ls) *
                                     (nodes - 1) + 0.5);
            k = std::max(0, std::min(nodes - 1, k));
            sum[static_cast<std::size_t>(k)] += std::log(e);
            cnt[static_cast<std::size_t>(k)] += 1;
        }
        std::vector<double> s_grid, v_grid;
        for (int k = 0; k < nodes; ++k)
            if (cnt[static_cast<std::size_t>(k)] > 0) {
                s_grid.push_back(ls + (le - ls) * k / (nodes - 1));
                v_grid.push_back(sum[static_cast<std::size_t>(k)] /
                                 cnt[static_cast<std::size_t>(k)]);
            }
        for (std::size_t k = 1; k + 2 < v_grid.size(); ++k) {
            const double d2a =
                v_grid[k + 1] - 2.0 * v_grid[k] + v_grid[k - 1];
            const double d2b =
                v_grid[k + 2] - 2.0 * v_grid[k + 1] + v_grid[k];
            if (d2a < -0.05 && d2b < -0.05 && v_grid[k] <= v_grid[k - 1] &&
                v_grid[k + 1] <= v_grid[k]) {
                t1 = std::min(t1, std::exp(s_grid[k]));
                break;
            }
        }
    }

    if (t1 <= t0)
        throw std::runtime_error(
            "decay_report: pre-asymptotic window collapsed (tail before t=5); "
            "refine the mesh to stretch the polynomial regime");

    // the fit uses the raw samples; drop the rounding floor
    std::vector<double> ts, es;
    for (std::size_t i = 0; i < series.times.size(); ++i)
        if (series.energies[i] > 0.0) {
            ts.push_back(series.times[i]);
            es.push_back(series.energies[i]);
        }
    report.fit = fit_power_law(ts, es, {t0, t1});

    const double slack = 0.3;
    if (report.fit.exponent <= report.target_exponent + slack) {
        report.verdict = Verdict::Pass;
        if (report.fit.exponent < report.target_exponent - slack)
            report.annotation =
                "decays faster than the predicted bound (possibly non-sharp)";
    } else {
        report.verdict = Verdict::Fail;
    }
    return report;
}

ResolventGrowthReport resolvent_report(
    const std::vector<ResolventSample>& samples, double mu_a) {
    ResolventGrowthReport report;
    report.delta_predicted = 2.0 / (2.0 - mu_a);

    std::vector<double> xs, ys;
    for (const auto& s : samples)
        if (std::isfinite(s.norm) && s.norm > 0.0 && !s.near_singular) {
            xs.push_back(s.omega);
            ys.push_back(s.norm);
        }
    if (xs.size() < 8)
        throw std::domain_error(
            "resolvent_report: fewer than 8 usable samples");

    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    report.fit = fit_power_law(xs, ys, {*lo, *hi});

    const double slack = 0.2;
    if (report.fit.exponent <= report.delta_predicted + slack) {
        report.verdict = Verdict::Pass;
        if (report.fit.exponent < report.delta_predicted - slack)
            report.annotation =
                "grows slower than the predicted bound (possibly non-sharp)";
    } else {
        report.verdict = Verdict::Fail;
    }
    return report;
}

}  // namespace degenwave
