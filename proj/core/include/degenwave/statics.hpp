#pragma once

#include "degenwave/assembly.hpp"
#include "degenwave/piecewise.hpp"

namespace degenwave {

// Right-hand side F = (f1, f2, g1, g2) of the stationary problem: f1/g1 are
// the velocity components (must satisfy f1(0) = g1(0), and g1(-1) = 0 for
// WeakLeft), f2/g2 the sources (au')' = f2, (bw')' = g2.  Restricted to
// piecewise polynomials so the closed-form solution stays exact.
struct StaticData {
    PiecewisePoly f1;  // on [0,1], basis ref 0
    PiecewisePoly f2;  // on [0,1], basis ref 0
    PiecewisePoly g1;  // on [-1,0], basis ref -1
    PiecewisePoly g2;  // on [-1,0], basis ref -1

    static StaticData zero();
};

// Solves the discrete stationary problem: q = nodal interpolant of (g1, f1),
// (K + gamma e_b e_b^T) p = load(F).  Backward error <= 1e-10.
StateVector solve_static(const OperatorMatrices& m, const StaticData& F);

// load vector of the weak form: load_i = -\int f2 phi_i - \int g2 phi_i
// - f1(1) [i = boundary]
Eigen::VectorXd static_load(const OperatorMatrices& m, const StaticData& F);

// junction flux c = (b w')(0) of the closed-form solution
double analytic_junction_flux(const DegeneracyProfile& a, const DegeneracyProfile& b,
                              double gamma, Variant variant, const StaticData& F);

// pointwise displacement of the closed-form solution: u(x) for x >= 0,
// w(x) for x < 0
double analytic_static_solution(const DegeneracyProfile& a, const DegeneracyProfile& b,
                                double gamma, Variant variant, const StaticData& F,
                                double x);

// exact energy-norm distance between the discrete solution U and the
// closed-form solution (slopes integrated against the true weighted flux,
// velocities against the true f1/g1); independent of the solver under test
double static_energy_error(const OperatorMatrices& m, const DegeneracyProfile& a,
                           const DegeneracyProfile& b, const StaticData& F,
                           const StateVector& numeric);

// largest nodal displacement error against the closed form
double static_max_node_error(const OperatorMatrices& m, const DegeneracyProfile& a,
                             const DegeneracyProfile& b, const StaticData& F,
                             const StateVector& numeric);

}  // namespace degenwave
