#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <iosfwd>
#include <memory>

#include "degenwave/mesh.hpp"

namespace degenwave {

// Left-end treatment of the w string.  Weak degeneracy (mu_b < 1) pins
// w(-1) = 0 and the corresponding DOF is eliminated; strong degeneracy
// (mu_b >= 1) imposes the natural condition lim (b w')(-1) = 0, which in
// the weak form is "do nothing", so the DOF stays.
enum class Variant { WeakLeft, StrongLeft };

inline Variant variant_for(double mu_b) {
    return mu_b < 1.0 ? Variant::WeakLeft : Variant::StrongLeft;
}

// Displacement DOFs ordered left to right along [-1, 1].  The junction
// x = 0 is a single shared DOF; x = 1 is always the last DOF.
struct DofMap {
    int n_left = 0;
    int n_right = 0;
    bool left_dirichlet = true;

    int total() const { return n_left + n_right + (left_dirichlet ? 0 : 1); }
    int junction() const { return left_dirichlet ? n_left - 1 : n_left; }
    int boundary() const { return total() - 1; }
    // DOF of left-string node j (0 = x=-1); -1 if eliminated
    int left_dof(int j) const { return left_dirichlet ? j - 1 : j; }
    // DOF of right-string node j (0 = junction)
    int right_dof(int j) const { return junction() + j; }
    double dof_position(const CoupledMesh& mesh, int dof) const;
};

struct StateVector {
    Eigen::VectorXd p;  // displacements (w left of junction, u right)
    Eigen::VectorXd q;  // velocities (y, v)

    static StateVector zero(int n) {
        return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    }
};

// Discrete generator data: M dq/dt = -(K + gamma e_b e_b^T) p - damp e_b e_b^T q,
// dp/dt = q, with e_b the unit vector of the node x = 1.
struct OperatorMatrices {
    Eigen::SparseMatrix<double> M;  // mass, SPD, tridiagonal
    Eigen::SparseMatrix<double> K;  // weighted stiffness, PSD, tridiagonal
    double gamma = 1.0;             // boundary stiffness coefficient (a(1) = 1)
    double damp = 1.0;              // boundary damping coefficient; 0 disables
    Variant variant = Variant::WeakLeft;
    DofMap dof_map;
    CoupledMesh mesh;

    // K + gamma e_b e_b^T; SPD for both variants
    Eigen::SparseMatrix<double> stiffness_with_boundary() const;
    const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>& mass_solver() const;

private:
    mutable std::shared_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> mass_llt_;
};

OperatorMatrices assemble(const CoupledMesh& mesh, const DegeneracyProfile& a,
                          const DegeneracyProfile& b, double gamma, Variant variant,
                          bool lumped_mass = false);

// (dp, dq) = (q, M^{-1}(-(K + gamma e e^T) p - damp e e^T q))
StateVector apply_generator(const OperatorMatrices& m, const StateVector& s);

// full energy inner product <s1, s2>: q1' M q2 + p1' K p2 + gamma p1(1) p2(1)
double energy_inner(const OperatorMatrices& m, const StateVector& s1,
                    const StateVector& s2);

// E = (1/2) <s, s>; the dissipation law is dE/dt = -damp |q(1)|^2
double energy(const OperatorMatrices& m, const StateVector& s);

inline double energy_norm(const OperatorMatrices& m, const StateVector& s) {
    return std::sqrt(std::max(0.0, energy_inner(m, s, s)));
}

// discrete fluxes alpha u' from the cells adjacent to the junction
double junction_flux_right(const OperatorMatrices& m, const DegeneracyProfile& a,
                           const Eigen::VectorXd& p);
double junction_flux_left(const OperatorMatrices& m, const DegeneracyProfile& b,
                          const Eigen::VectorXd& p);

// one-sided discrete slope u'(1) from the last right cell
double boundary_slope(const OperatorMatrices& m, const Eigen::VectorXd& p);

// coordinate-format text export: "row col value" per line, 17 significant digits
void write_coordinate(std::ostream& os, const Eigen::SparseMatrix<double>& A);

}  // namespace degenwave
