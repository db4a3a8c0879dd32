#pragma once

#include <degenwave/assembly.hpp>

#include <complex>
#include <vector>

namespace degenwave {

struct ResolventSample {
    double omega = 0.0;
    // energy-operator norm of (i omega - A)^{-1} = 1/sigma_min
    double norm = 0.0;
    bool near_singular = false;
    bool converged = true;
};

struct SpectrumReport {
    // sorted by imaginary part; real parts are re-evaluated from the
    // dissipation form at the computed eigenvectors (see spectrum below)
    std::vector<std::complex<double>> eigenvalues;
    // raw dense-solver output in the same order, kept for diagnostics:
    // its real parts carry O(||A~|| * eps) noise on strongly graded meshes
    std::vector<std::complex<double>> raw_eigenvalues;
    // |d^H z_q| / ||z|| per mode, same order. Re lambda = -damp * trace^2,
    // so trace > 0 certifies Re < 0 even for trapped modes whose squared
    // trace underflows (those report a certified real part of -0.0)
    std::vector<double> boundary_trace;
    double max_real_part = 0.0;      // max certified real part
    double min_boundary_trace = 0.0;
};

// Everything here works in energy coordinates: with the Gram factorization
// S = Ls Ls^T, M = Lm Lm^T the state z = (Ls^T p, Lm^T q) turns the energy
// norm into the Euclidean one and the generator into
//   A~ = [ 0   W^T ]        W = Lm^{-1} Ls,  d = Lm^{-1} e_b,
//        [-W  -damp d d^T]
// a skew part plus a negative semidefinite rank-one. Operator norms of the
// semigroup generator are then plain spectral norms.

// Dense eigensolve of A~. The real part of each reported eigenvalue is the
// Rayleigh quotient of A~ at the computed eigenvector, evaluated through the
// rank-one structure as -damp |d^H z_q|^2 / ||z||^2; that expression is
// nonpositive by construction, so dissipativity of the report is exact and
// not an artifact of solver rounding.
// dense_cap bounds the first-order system size 2 * total_dofs.
SpectrumReport spectrum(const OperatorMatrices& m, int dense_cap = 4000);

// 1/sigma_min(i omega - A~) with relative accuracy ~1e-6, via power
// iteration on (B^H B)^{-1} using one sparse factorization of
//   T_omega = S - omega^2 M + i omega damp e_b e_b^T
// per call (B and B^H solves share it). Falls back to a dense SVD when the
// iteration stalls and the system is small enough; otherwise the sample is
// returned with converged = false.
ResolventSample resolvent_norm(const OperatorMatrices& m, double omega);

// Logarithmically spaced samples over [omega_min, omega_max], truncated with
// a warning at mesh_frequency_cap. Parallel over omega (DEGENWAVE_THREADS
// caps the worker count); results are merged by index so the output is
// deterministic.
std::vector<ResolventSample> resolvent_sweep(const OperatorMatrices& m,
                                             double omega_min,
                                             double omega_max, int samples);

// (i omega - A~)^{-1} rhs and the adjoint solve, in energy coordinates;
// these are the structured solves behind resolvent_norm, exposed so they
// can be spot-checked against the dense generator
Eigen::VectorXcd resolvent_apply(const OperatorMatrices& m, double omega,
                                 const Eigen::VectorXcd& rhs);
Eigen::VectorXcd resolvent_apply_adjoint(const OperatorMatrices& m,
                                         double omega,
                                         const Eigen::VectorXcd& rhs);

// dense A~ for diagnostics and small-scale cross-checks
Eigen::MatrixXd dense_energy_generator(const OperatorMatrices& m);

// pi / (10 h_min): hard sweep ceiling tied to the smallest cell
double mesh_frequency_cap(const OperatorMatrices& m);

// Conservative limit of the band the mesh actually resolves:
// min over cells of pi/10 * local wave speed / h, speed = sqrt(mean alpha).
// Far coarser than mesh_frequency_cap on graded meshes; asymptotics should
// only be fitted below this.
double resolved_band_limit(const OperatorMatrices& m);

}  // namespace degenwave
