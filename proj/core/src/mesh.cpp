#include "degenwave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace degenwave {

double StringMesh::h_min() const {
    double m = nodes[1] - nodes[0];
    for (std::size_t j = 1; j + 1 < nodes.size(); ++j)
        m = std::min(m, nodes[j + 1] - nodes[j]);
    return m;
}

StringMesh build_graded_mesh(double x0, double ell, int n, double grading) {
    if (n < 2) throw std::invalid_argument("build_graded_mesh: need n >= 2");
    if (!(grading >= 1.0))
        throw std::invalid_argument("build_graded_mesh: grading must be >= 1");
    if (!(x0 < ell)) throw std::invalid_argument("build_graded_mesh: x0 must be < ell");
    StringMesh mesh;
    mesh.grading = grading;
    mesh.nodes.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
        mesh.nodes[static_cast<std::size_t>(j)] =
            x0 + (ell - x0) * std::pow(static_cast<double>(j) / n, grading);
    mesh.nodes.front() = x0;
    mesh.nodes.back() = ell;
    for (std::size_t j = 0; j + 1 < mesh.nodes.size(); ++j)
        if (!(mesh.nodes[j] < mesh.nodes[j + 1]))
            throw std::invalid_argument(
                "build_graded_mesh: grading too strong, cells collapse in double precision");
    return mesh;
}

double auto_grading(double mu) {
    if (mu >= 1.0) return 2.0;
    // uncapped 1/(1-mu) would underflow the first cell for mu near 1
    // (mu = 0.999 asks for g = 1000)
    return std::min(std::max(1.0, 1.0 / (1.0 - mu)), 6.0);
}

double grading_for_energy_rate(double mu) {
    // interior cells need g*(1-mu) = 2 (weak) or g*(2-mu) = 2 (strong) to
    // balance h^3 (x-x0)^{-mu-2} and h^3 (x-x0)^{-mu} error densities
    const double g = mu < 1.0 ? 2.0 / (1.0 - mu) : 2.0 / (2.0 - mu);
    return std::min(std::max(1.0, g), 12.0);
}

CoupledMesh build_coupled_mesh(double mu_a, double mu_b, int n_per_string,
                               double grading_left, double grading_right) {
    if (grading_left <= 0.0) grading_left = auto_grading(mu_b);
    if (grading_right <= 0.0) grading_right = auto_grading(mu_a);
    CoupledMesh mesh;
    mesh.left = build_graded_mesh(-1.0, 0.0, n_per_string, grading_left);
    mesh.right = build_graded_mesh(0.0, 1.0, n_per_string, grading_right);
    return mesh;
}

double weighted_cell_integral(const DegeneracyProfile& profile, double xl, double xr) {
    if (!(xl < xr)) throw std::domain_error("weighted_cell_integral: need xl < xr");
    if (xl < profile.x0() || xr > profile.ell())
        throw std::domain_error("weighted_cell_integral: cell outside profile interval");
    const double len = profile.ell() - profile.x0();
    const double mu = profile.mu();
    return profile.scale() / std::pow(len, mu) *
           powdiff(xl - profile.x0(), xr - profile.x0(), 1.0 + mu);
}

}  // namespace degenwave
