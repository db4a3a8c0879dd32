#pragma once

#include "degenwave/piecewise.hpp"

namespace degenwave {

// Power-law coefficient alpha(x) = scale * ((x - x0)/(ell - x0))^mu on
// [x0, ell].  x0 is the degeneracy point: alpha(x0) = 0 when mu > 0.
// mu = 0 is the constant coefficient (no degeneracy).
class DegeneracyProfile {
public:
    DegeneracyProfile(double x0, double ell, double mu, double scale = 1.0);

    double x0() const { return x0_; }
    double ell() const { return ell_; }
    double mu() const { return mu_; }
    double scale() const { return scale_; }

    double eval(double x) const;        // exact at both endpoints
    double derivative(double x) const;  // x must be > x0 when mu < 1

    // sup over interior samples of (x-x0)|alpha'|/alpha; identically mu for
    // power laws.  Samples cluster geometrically toward x0, x0 excluded.
    double degeneracy_measure(int n_samples) const;

    // eval(x) minus the power-law minorant through (ell, scale); >= 0 up to
    // rounding (identically 0 here, kept as the general-contract hook)
    double lower_bound_margin(double x) const;

    // constant in the weighted Poincare bound \int v^2 <= C \int alpha v'^2
    double poincare_constant() const;

    bool inverse_integrable() const { return mu_ < 1.0; }

    // exact \int_a^b f(s) / alpha(s) ds for f in the shifted basis at x0.
    // Diverges (throws) if f(x0) != 0 while mu >= 1 and a == x0.
    double integral_against_inverse(const PiecewisePoly& f, double a, double b) const;

private:
    double x0_, ell_, mu_, scale_;
};

}  // namespace degenwave
