#pragma once

#include <degenwave/assembly.hpp>
#include <degenwave/statics.hpp>

#include <Eigen/SparseCholesky>

#include <utility>
#include <vector>

namespace degenwave {

struct EnergySeries {
    std::vector<double> times;
    std::vector<double> energies;
    // running midpoint-rule total of damp * |velocity at x = 1|^2
    std::vector<double> boundary_dissipation;
};

// Trapezoidal (Crank-Nicolson) integrator for dU/dt = A U. The update is
// reduced to one SPD solve per step:
//   (M + dt^2/4 S + dt/2 D) q+ = (M - dt^2/4 S - dt/2 D) q - dt S p
//   p+ = p + dt/2 (q + q+)
// with S the stiffness including the gamma boundary term and D the damping
// rank-one at x = 1. The scheme obeys
//   E(s+) - E(s) = -dt * damp * |q_mid(boundary)|^2,  q_mid = (q + q+)/2,
// exactly, so numerical and physical dissipation never mix.
//
// dt may be negative (runs the scheme backward); simulate requires dt > 0.
class TrapezoidalStepper {
  public:
    TrapezoidalStepper(const OperatorMatrices& m, double dt);

    StateVector step(const StateVector& s) const;
    double dt() const { return dt_; }

    // damp * |q_mid(boundary)|^2 for the transition s -> s_next
    double boundary_dissipation_rate(const StateVector& s,
                                     const StateVector& s_next) const;

  private:
    const OperatorMatrices* m_;
    double dt_;
    Eigen::SparseMatrix<double> lhs_;
    Eigen::SparseMatrix<double> rhs_q_;
    Eigen::SparseMatrix<double> stiff_;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> solver_;
};

// convenience wrapper; repeated stepping should reuse a TrapezoidalStepper
StateVector step_trapezoidal(const OperatorMatrices& m, const StateVector& s,
                             double dt);

// Steps from s0 to T, recording E and the cumulative boundary dissipation at
// every step. Enforces the discrete balance
//   |E(0) - E(T) - sum dt*damp*q_mid(b)^2| <= 1e-8 E(0)
// and monotone energies; a NaN state aborts with a diagnostic.
EnergySeries simulate(const OperatorMatrices& m, const StateVector& s0,
                      double dt, double T);

// Initial data for decay studies: U0 = A^{-1} F lies in the discrete domain
// of the generator by construction. Returns U0 and the graph norm
// ||U0||_E + ||A U0||_E that the decay bound is measured against.
std::pair<StateVector, double> prepare_smooth_initial_data(
    const OperatorMatrices& m, const StaticData& F);

}  // namespace degenwave
