#pragma once

#include <degenwave/spectral.hpp>
#include <degenwave/timestep.hpp>

#include <string>
#include <utility>
#include <vector>

namespace degenwave {

struct FitResult {
    double exponent = 0.0;
    double intercept = 0.0;  // log y ~ intercept + exponent * log x
    double r_squared = 0.0;
    std::pair<double, double> window{0.0, 0.0};  // clipped to the data used
};

enum class Verdict { Pass, Fail, NoFit };
const char* to_string(Verdict v);

// ordinary least squares of log y on log x over window.first <= x <=
// window.second; needs >= 8 points in the window, all values positive.
// Constant y fits exactly: exponent 0, r_squared 1.
FitResult fit_power_law(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        std::pair<double, double> window);

struct DecayReport {
    FitResult fit;
    double target_exponent = 0.0;  // -(2 - mu_a) for the energy
    double graph_norm = 0.0;       // echoed normalization of the initial data
    Verdict verdict = Verdict::NoFit;
    std::string annotation;
};

// Fits E(t) on the pre-asymptotic window [5, t1] where t1 is the earlier of
//   - the first time E drops below 1e3 * (eps^2 E(0)), and
//   - the onset of the exponential tail of the finite-dimensional
//     truncation: log E binned at 8 nodes per decade of t, cut where two
//     consecutive second differences fall below -0.05 on a descending
//     stretch. The tail dives concave in log-log; modal beating alternates
//     sign faster than the node spacing, so a sustained pair singles out
//     the tail.
// The window rule is deterministic, so reports reproduce bit-for-bit.
// Upper-bound semantics: fitted exponent <= target + 0.3 passes; decay
// faster than target - 0.3 passes with a "possibly non-sharp" annotation.
// A collapsed window (tail reached before t = 5) is an error advising mesh
// refinement. Zero data gives Verdict::NoFit.
DecayReport decay_report(const EnergySeries& series, double mu_a,
                         double graph_norm);

struct ResolventGrowthReport {
    FitResult fit;
    double delta_predicted = 0.0;  // 2/(2 - mu_a)
    Verdict verdict = Verdict::NoFit;
    std::string annotation;
};

// Fits log ||(i omega - A)^{-1}|| against log omega over every finite sample
// given (callers choose the band; peak-targeted samples give the envelope).
// slope <= delta + 0.2 passes; slope < delta - 0.2 annotates non-sharpness.
ResolventGrowthReport resolvent_report(
    const std::vector<ResolventSample>& samples, double mu_a);

}  // namespace degenwave
