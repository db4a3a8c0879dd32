#pragma once

#include <vector>

#include "degenwave/coeff.hpp"

namespace degenwave {

// Graded 1-D mesh: nodes[j] = x0 + (ell-x0)*(j/n)^grading, so cells shrink
// toward x0 where the coefficient degenerates.
struct StringMesh {
    std::vector<double> nodes;
    double grading = 1.0;

    double x0() const { return nodes.front(); }
    double ell() const { return nodes.back(); }
    int cells() const { return static_cast<int>(nodes.size()) - 1; }
    double h(int cell) const {
        return nodes[static_cast<std::size_t>(cell) + 1] -
               nodes[static_cast<std::size_t>(cell)];
    }
    double h_min() const;
};

// Two strings joined at x = 0: left lives on [-1,0] (degenerate at -1),
// right on [0,1] (degenerate at 0).
struct CoupledMesh {
    StringMesh left;
    StringMesh right;
};

StringMesh build_graded_mesh(double x0, double ell, int n, double grading);

// default grading, capped so cell widths stay representable for mu close to 1
double auto_grading(double mu);

// stronger grading that restores O(h) convergence in the weighted energy
// norm for static layers u' ~ (x-x0)^{-mu} (weak) or (x-x0)^{1-mu} (strong);
// the default grading only yields O(h^{1/2}) there
double grading_for_energy_rate(double mu);

CoupledMesh build_coupled_mesh(double mu_a, double mu_b, int n_per_string,
                               double grading_left = 0.0, double grading_right = 0.0);

// exact \int_{xl}^{xr} alpha(x) dx
double weighted_cell_integral(const DegeneracyProfile& profile, double xl, double xr);

}  // namespace degenwave
