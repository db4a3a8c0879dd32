#include "degenwave/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace degenwave {

DegeneracyProfile::DegeneracyProfile(double x0, double ell, double mu, double scale)
    : x0_(x0), ell_(ell), mu_(mu), scale_(scale) {
    if (!(x0 < ell)) throw std::invalid_argument("DegeneracyProfile: x0 must be < ell");
    if (!(mu >= 0.0 && mu < 2.0))
        throw std::invalid_argument("DegeneracyProfile: mu must lie in [0, 2)");
    if (!(scale > 0.0)) throw std::invalid_argument("DegeneracyProfile: scale must be > 0");
}

double DegeneracyProfile::eval(double x) const {
    if (x < x0_ || x > ell_)
        throw std::domain_error("DegeneracyProfile::eval: x outside [x0, ell]");
    return scale_ * std::pow((x - x0_) / (ell_ - x0_), mu_);
}

double DegeneracyProfile::derivative(double x) const {
    if (x < x0_ || x > ell_)
        throw std::domain_error("DegeneracyProfile::derivative: x outside [x0, ell]");
    if (mu_ == 0.0) return 0.0;
    const double len = ell_ - x0_;
    return scale_ * mu_ / len * std::pow((x - x0_) / len, mu_ - 1.0);
}

double DegeneracyProfile::degeneracy_measure(int n_samples) const {
    if (n_samples < 2)
        throw std::invalid_argument("degeneracy_measure: need at least 2 samples");
    // geometric grid x0 + len * r^j biased toward the degeneracy point
    const double len = ell_ - x0_;
    double sup = 0.0;
    for (int j = 0; j < n_samples; ++j) {
        const double t = std::pow(0.5, 40.0 * j / (n_samples - 1));
        const double x = x0_ + len * t;
        const double ratio = (x - x0_) * std::abs(derivative(x)) / eval(x);
        sup = std::max(sup, ratio);
    }
    return sup;
}

double DegeneracyProfile::lower_bound_margin(double x) const {
    return eval(x) - scale_ * std::pow((x - x0_) / (ell_ - x0_), mu_);
}

double DegeneracyProfile::poincare_constant() const {
    const double len = ell_ - x0_;
    const double first = len * len / ((2.0 - mu_) * scale_);
    const double second = 4.0 * std::pow(len, mu_) / scale_;
    return std::max(first, second);
}

double DegeneracyProfile::integral_against_inverse(const PiecewisePoly& f,
                                                   double a, double b) const {
    if (f.ref() != x0_)
        throw std::invalid_argument("integral_against_inverse: basis ref must be x0");
    // 1/alpha(s) = (ell-x0)^mu / scale * (s-x0)^{-mu}
    const double factor = std::pow(ell_ - x0_, mu_) / scale_;
    return factor * f.weighted_integral(mu_, a, b);
}

}  // namespace degenwave
