#include "degenwave/assembly.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace degenwave {

double DofMap::dof_position(const CoupledMesh& mesh, int dof) const {
    if (dof < 0 || dof >= total()) throw std::domain_error("DofMap: dof out of range");
    const int j0 = left_dirichlet ? dof + 1 : dof;
    if (j0 <= n_left) return mesh.left.nodes[static_cast<std::size_t>(j0)];
    return mesh.right.nodes[static_cast<std::size_t>(dof - junction())];
}

Eigen::SparseMatrix<double> OperatorMatrices::stiffness_with_boundary() const {
    Eigen::SparseMatrix<double> S = K;
    const int b = dof_map.boundary();
    S.coeffRef(b, b) += gamma;
    S.makeCompressed();
    return S;
}

const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>&
OperatorMatrices::mass_solver() const {
    if (!mass_llt_) {
        auto llt = std::make_shared<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
        llt->compute(M);
        if (llt->info() != Eigen::Success)
            throw std::runtime_error("OperatorMatrices: mass matrix factorization failed");
        mass_llt_ = std::move(llt);
    }
    return *mass_llt_;
}

namespace {

void add_cell(std::vector<Eigen::Triplet<double>>& mass_t,
              std::vector<Eigen::Triplet<double>>& stiff_t,
              const DegeneracyProfile& alpha, double xl, double xr,
              int dof_l, int dof_r, bool lumped) {
    const double h = xr - xl;
    const double k = weighted_cell_integral(alpha, xl, xr) / (h * h);
    const double m_diag = lumped ? h / 2.0 : h / 3.0;
    const double m_off = lumped ? 0.0 : h / 6.0;
    const int d[2] = {dof_l, dof_r};
    const double kloc[2][2] = {{k, -k}, {-k, k}};
    const double mloc[2][2] = {{m_diag, m_off}, {m_off, m_diag}};
    for (int i = 0; i < 2; ++i) {
        if (d[i] < 0) continue;
        for (int j = 0; j < 2; ++j) {
            if (d[j] < 0) continue;
            stiff_t.emplace_back(d[i], d[j], kloc[i][j]);
            if (mloc[i][j] != 0.0) mass_t.emplace_back(d[i], d[j], mloc[i][j]);
        }
    }
}

}  // namespace

OperatorMatrices assemble(const CoupledMesh& mesh, const DegeneracyProfile& a,
                          const DegeneracyProfile& b, double gamma, Variant variant,
                          bool lumped_mass) {
    if (!(gamma > 0.0)) throw std::invalid_argument("assemble: gamma must be > 0");
    if (a.mu() >= 1.0)
        throw std::invalid_argument(
            "assemble: mu_a >= 1 unsupported (strongly degenerate junction blocks the feedback)");
    if (variant == Variant::WeakLeft && b.mu() >= 1.0)
        throw std::invalid_argument("assemble: WeakLeft requires mu_b < 1");
    if (variant == Variant::StrongLeft && b.mu() < 1.0)
        throw std::invalid_argument("assemble: StrongLeft requires mu_b >= 1");
    if (mesh.left.x0() != b.x0() || mesh.left.ell() != b.ell() ||
        mesh.right.x0() != a.x0() || mesh.right.ell() != a.ell())
        throw std::invalid_argument("assemble: mesh intervals do not match profiles");
    if (mesh.left.ell() != mesh.right.x0())
        throw std::invalid_argument("assemble: strings do not share a junction");

    OperatorMatrices m;
    m.gamma = gamma;
    m.variant = variant;
    m.mesh = mesh;
    m.dof_map = DofMap{mesh.left.cells(), mesh.right.cells(),
                       variant == Variant::WeakLeft};

    const int n = m.dof_map.total();
    std::vector<Eigen::Triplet<double>> mass_t, stiff_t;
    mass_t.reserve(static_cast<std::size_t>(4 * n));
    stiff_t.reserve(static_cast<std::size_t>(4 * n));

    for (int c = 0; c < mesh.left.cells(); ++c)
        add_cell(mass_t, stiff_t, b, mesh.left.nodes[static_cast<std::size_t>(c)],
                 mesh.left.nodes[static_cast<std::size_t>(c) + 1],
                 m.dof_map.left_dof(c), m.dof_map.left_dof(c + 1), lumped_mass);
    for (int c = 0; c < mesh.right.cells(); ++c)
        add_cell(mass_t, stiff_t, a, mesh.right.nodes[static_cast<std::size_t>(c)],
                 mesh.right.nodes[static_cast<std::size_t>(c) + 1],
                 m.dof_map.right_dof(c), m.dof_map.right_dof(c + 1), lumped_mass);

    m.M.resize(n, n);
    m.M.setFromTriplets(mass_t.begin(), mass_t.end());
    m.M.makeCompressed();
    m.K.resize(n, n);
    m.K.setFromTriplets(stiff_t.begin(), stiff_t.end());
    m.K.makeCompressed();
    m.mass_solver();  // fail fast and make later concurrent reads safe
    return m;
}

StateVector apply_generator(const OperatorMatrices& m, const StateVector& s) {
    const int n = m.dof_map.total();
    if (s.p.size() != n || s.q.size() != n)
        throw std::invalid_argument("apply_generator: state size mismatch");
    const int bnode = m.dof_map.boundary();
    Eigen::VectorXd rhs = -(m.K * s.p);
    rhs(bnode) -= m.gamma * s.p(bnode) + m.damp * s.q(bnode);
    StateVector out;
    out.p = s.q;
    out.q = m.mass_solver().solve(rhs);
    return out;
}

double energy_inner(const OperatorMatrices& m, const StateVector& s1,
                    const StateVector& s2) {
    const int bnode = m.dof_map.boundary();
    return s1.q.dot(m.M * s2.q) + s1.p.dot(m.K * s2.p) +
           m.gamma * s1.p(bnode) * s2.p(bnode);
}

double energy(const OperatorMatrices& m, const StateVector& s) {
    return 0.5 * energy_inner(m, s, s);
}

double junction_flux_right(const OperatorMatrices& m, const DegeneracyProfile& a,
                           const Eigen::VectorXd& p) {
    const double xl = m.mesh.right.nodes[0];
    const double xr = m.mesh.right.nodes[1];
    const double h = xr - xl;
    const double mean_a = weighted_cell_integral(a, xl, xr) / h;
    const int j = m.dof_map.junction();
    return mean_a * (p(j + 1) - p(j)) / h;
}

double junction_flux_left(const OperatorMatrices& m, const DegeneracyProfile& b,
                          const Eigen::VectorXd& p) {
    const auto& nodes = m.mesh.left.nodes;
    const double xl = nodes[nodes.size() - 2];
    const double xr = nodes[nodes.size() - 1];
    const double h = xr - xl;
    const double mean_b = weighted_cell_integral(b, xl, xr) / h;
    const int j = m.dof_map.junction();
    const int prev = j - 1;
    const double p_prev = prev >= 0 ? p(prev) : 0.0;  // Dirichlet ghost for n_left = 1
    return mean_b * (p(j) - p_prev) / h;
}

double boundary_slope(const OperatorMatrices& m, const Eigen::VectorXd& p) {
    const auto& nodes = m.mesh.right.nodes;
    const double h = nodes[nodes.size() - 1] - nodes[nodes.size() - 2];
    const int bnode = m.dof_map.boundary();
    return (p(bnode) - p(bnode - 1)) / h;
}

void write_coordinate(std::ostream& os, const Eigen::SparseMatrix<double>& A) {
    char buf[64];
    for (int k = 0; k < A.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
            std::snprintf(buf, sizeof(buf), "%d %d %.16e\n",
                          static_cast<int>(it.row()), static_cast<int>(it.col()),
                          it.value());
            os << buf;
        }
}

}  // namespace degenwave
