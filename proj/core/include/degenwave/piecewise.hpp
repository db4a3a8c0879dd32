#pragma once

#include <vector>

namespace degenwave {

// Piecewise polynomial on [lo, hi] written in powers of (x - ref).
//
// The shifted basis is what makes weighted integrals against the
// inverse coefficient (s - ref)^{-mu} closed-form: every term is a pure
// power of (s - ref), so antiderivatives are again powers (or a log when
// the exponent lands on -1).  All integration in the library goes
// through this class; there is no numerical quadrature anywhere.
class PiecewisePoly {
public:
    // breakpoints strictly increasing, coeffs has one row per piece,
    // row k holds coefficients of (x-ref)^0, (x-ref)^1, ...
    PiecewisePoly(std::vector<double> breakpoints,
                  std::vector<std::vector<double>> coeffs,
                  double ref);

    static PiecewisePoly constant(double lo, double hi, double value, double ref);
    static PiecewisePoly linear(double lo, double hi, double value_lo,
                                double value_hi, double ref);
    // piecewise constant: values[k] on (breakpoints[k], breakpoints[k+1])
    static PiecewisePoly step(std::vector<double> breakpoints,
                              std::vector<double> values, double ref);
    // continuous nodal interpolant through (nodes[k], values[k])
    static PiecewisePoly interpolant(const std::vector<double>& nodes,
                                     const std::vector<double>& values,
                                     double ref);
    static PiecewisePoly zero(double lo, double hi, double ref);

    double lo() const { return breaks_.front(); }
    double hi() const { return breaks_.back(); }
    double ref() const { return ref_; }
    int pieces() const { return static_cast<int>(coeffs_.size()); }
    int degree() const;
    const std::vector<double>& breakpoints() const { return breaks_; }

    double eval(double x) const;  // x must lie in [lo, hi]

    // exact integral over [a, b] subset of the domain, a <= b
    double integral(double a, double b) const;
    double integral() const { return integral(lo(), hi()); }

    // exact \int_a^b f(s) L(s) ds with L linear, L(a)=va, L(b)=vb
    double integral_times_linear(double a, double b, double va, double vb) const;

    // exact \int_a^b f(s) (s-ref)^{-mu} ds.  Requires a >= ref.  If a == ref
    // every nonzero coefficient c_k must satisfy k + 1 - mu > 0, otherwise
    // the integral diverges and we throw std::domain_error.
    double weighted_integral(double mu, double a, double b) const;

    // F(x) = \int_anchor^x f, continuous, F(anchor) = 0
    PiecewisePoly antiderivative(double anchor) const;

    PiecewisePoly operator+(const PiecewisePoly& other) const;
    PiecewisePoly operator-(const PiecewisePoly& other) const;
    PiecewisePoly operator*(const PiecewisePoly& other) const;
    PiecewisePoly scaled(double factor) const;
    PiecewisePoly plus_constant(double value) const;
    PiecewisePoly squared() const { return (*this) * (*this); }

private:
    std::vector<double> breaks_;
    std::vector<std::vector<double>> coeffs_;
    double ref_;

    int piece_index(double x) const;
    PiecewisePoly combine(const PiecewisePoly& other, double sign) const;
};

// (u1^p - u0^p)/p for 0 <= u0 <= u1, continuous in p through p = 0 where it
// equals log(u1/u0).  Stable for tiny |p| via expm1.
double powdiff(double u0, double u1, double p);

}  // namespace degenwave
