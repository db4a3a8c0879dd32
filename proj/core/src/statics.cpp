#include "degenwave/statics.hpp"

#include <cmath>
#include <stdexcept>

namespace degenwave {

namespace {

constexpr double kJunctionTol = 1e-12;

// closed-form ingredients shared by flux, displacement and error routines
struct ClosedForm {
    double c;    // junction flux (b w')(0) = (a u')(0)
    double u0;   // u(0) = w(0)
    PiecewisePoly F2;  // \int_0^s f2, ref 0
    PiecewisePoly left_flux;  // b w' as a polynomial: c - \int_s^0 g2 (weak)
                              // or \int_{-1}^s g2 (strong), ref -1
    Variant variant;
};

ClosedForm closed_form(const DegeneracyProfile& a, const DegeneracyProfile& b,
                       double gamma, Variant variant, const StaticData& F) {
    if (!(gamma > 0.0)) throw std::invalid_argument("analytic solution: gamma must be > 0");
    if (a.mu() >= 1.0)
        throw std::invalid_argument("analytic solution: mu_a >= 1 unsupported");
    if (variant == Variant::WeakLeft && b.mu() >= 1.0)
        throw std::invalid_argument("analytic solution: WeakLeft requires mu_b < 1");
    if (variant == Variant::StrongLeft && b.mu() < 1.0)
        throw std::invalid_argument("analytic solution: StrongLeft requires mu_b >= 1");

    const double a_total = F.f2.integral();
    const double f1_at_1 = F.f1.eval(1.0);
    PiecewisePoly F2 = F.f2.antiderivative(0.0);
    const auto one_right = PiecewisePoly::constant(a.x0(), a.ell(), 1.0, a.x0());
    const double inv_a = a.integral_against_inverse(one_right, a.x0(), a.ell());
    const double J_f = a.integral_against_inverse(F2, a.x0(), a.ell());

    if (variant == Variant::WeakLeft) {
        // w' carries c - \int_s^0 g2 over b; u' carries c + \int_0^s f2 over a
        PiecewisePoly G2 = F.g2.antiderivative(0.0).scaled(-1.0);
        const auto one_left = PiecewisePoly::constant(b.x0(), b.ell(), 1.0, b.x0());
        const double inv_b = b.integral_against_inverse(one_left, b.x0(), b.ell());
        const double J_g = b.integral_against_inverse(G2, b.x0(), b.ell());
        const double denom = 1.0 + gamma * inv_b + gamma * inv_a;
        const double c =
            (gamma * J_g - f1_at_1 - a_total - gamma * J_f) / denom;
        const double u0 = c * inv_b - J_g;
        return {c, u0, std::move(F2), G2.scaled(-1.0).plus_constant(c), variant};
    }

    // strong: zero flux at -1 forces b w' = \int_{-1}^s g2
    PiecewisePoly H2 = F.g2.antiderivative(-1.0);
    const double c = H2.eval(0.0);
    const double u0 = -(a_total + f1_at_1) / gamma - J_f - (1.0 / gamma + inv_a) * c;
    return {c, u0, std::move(F2), std::move(H2), variant};
}

double eval_closed(const ClosedForm& cf, const DegeneracyProfile& a,
                   const DegeneracyProfile& b, double x) {
    if (x < -1.0 || x > 1.0)
        throw std::domain_error("analytic solution: x outside [-1, 1]");
    if (x >= 0.0) {
        const auto one = PiecewisePoly::constant(a.x0(), a.ell(), 1.0, a.x0());
        return cf.u0 + cf.c * a.integral_against_inverse(one, a.x0(), x) +
               a.integral_against_inverse(cf.F2, a.x0(), x);
    }
    if (cf.variant == Variant::WeakLeft)
        return b.integral_against_inverse(cf.left_flux, b.x0(), x);
    return cf.u0 - b.integral_against_inverse(cf.left_flux, x, b.ell());
}

void check_velocity_compatibility(const OperatorMatrices& m, const StaticData& F) {
    const double vscale =
        1.0 + std::abs(F.f1.eval(0.0)) + std::abs(F.g1.eval(0.0));
    if (std::abs(F.f1.eval(0.0) - F.g1.eval(0.0)) > kJunctionTol * vscale)
        throw std::invalid_argument("static data: f1(0) != g1(0), junction continuity violated");
    if (m.variant == Variant::WeakLeft &&
        std::abs(F.g1.eval(-1.0)) > kJunctionTol * vscale)
        throw std::invalid_argument("static data: WeakLeft requires g1(-1) = 0");
}

}  // namespace

StaticData StaticData::zero() {
    return {PiecewisePoly::zero(0.0, 1.0, 0.0), PiecewisePoly::zero(0.0, 1.0, 0.0),
            PiecewisePoly::zero(-1.0, 0.0, -1.0), PiecewisePoly::zero(-1.0, 0.0, -1.0)};
}

Eigen::VectorXd static_load(const OperatorMatrices& m, const StaticData& F) {
    const auto& dm = m.dof_map;
    Eigen::VectorXd load = Eigen::VectorXd::Zero(dm.total());
    const auto& ln = m.mesh.left.nodes;
    for (int c = 0; c < m.mesh.left.cells(); ++c) {
        const double xl = ln[static_cast<std::size_t>(c)];
        const double xr = ln[static_cast<std::size_t>(c) + 1];
        const int dl = dm.left_dof(c), dr = dm.left_dof(c + 1);
        if (dl >= 0) load(dl) -= F.g2.integral_times_linear(xl, xr, 1.0, 0.0);
        load(dr) -= F.g2.integral_times_linear(xl, xr, 0.0, 1.0);
    }
    const auto& rn = m.mesh.right.nodes;
    for (int c = 0; c < m.mesh.right.cells(); ++c) {
        const double xl = rn[static_cast<std::size_t>(c)];
        const double xr = rn[static_cast<std::size_t>(c) + 1];
        load(dm.right_dof(c)) -= F.f2.integral_times_linear(xl, xr, 1.0, 0.0);
        load(dm.right_dof(c + 1)) -= F.f2.integral_times_linear(xl, xr, 0.0, 1.0);
    }
    load(dm.boundary()) -= F.f1.eval(1.0);
    return load;
}

StateVector solve_static(const OperatorMatrices& m, const StaticData& F) {
    check_velocity_compatibility(m, F);
    const auto& dm = m.dof_map;
    const Eigen::VectorXd load = static_load(m, F);

    const Eigen::SparseMatrix<double> S = m.stiffness_with_boundary();
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(S);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_static: stiffness factorization failed");

    Eigen::VectorXd p = llt.solve(load);
    const double load_norm = load.norm();
    for (int pass = 0; pass < 5; ++pass) {
        const Eigen::VectorXd r = load - S * p;
        if (r.norm() <= 1e-13 * load_norm) break;
        p += llt.solve(r);
    }
    // backward error: the plain residual stalls at rounding level of
    // ||S|| ||p|| on large graded meshes even when the solve is exact
    const double s_inf =
        (S.cwiseAbs() * Eigen::VectorXd::Ones(S.cols())).maxCoeff();
    const double scale = load_norm + s_inf * p.norm();
    if (load_norm > 0.0 && (load - S * p).norm() > 1e-10 * scale)
        throw std::runtime_error("solve_static: residual above tolerance");

    StateVector out;
    out.p = std::move(p);
    out.q.resize(dm.total());
    for (int i = 0; i < dm.total(); ++i) {
        const double x = dm.dof_position(m.mesh, i);
        out.q(i) = i < dm.junction() ? F.g1.eval(x)
                 : i == dm.junction() ? F.f1.eval(0.0)
                                      : F.f1.eval(x);
    }
    return out;
}

double analytic_junction_flux(const DegeneracyProfile& a, const DegeneracyProfile& b,
                              double gamma, Variant variant, const StaticData& F) {
    return closed_form(a, b, gamma, variant, F).c;
}

double analytic_static_solution(const DegeneracyProfile& a, const DegeneracyProfile& b,
                                double gamma, Variant variant, const StaticData& F,
                                double x) {
    const ClosedForm cf = closed_form(a, b, gamma, variant, F);
    return eval_closed(cf, a, b, x);
}

double static_energy_error(const OperatorMatrices& m, const DegeneracyProfile& a,
                           const DegeneracyProfile& b, const StaticData& F,
                           const StateVector& numeric) {
    const ClosedForm cf = closed_form(a, b, m.gamma, m.variant, F);
    const auto& dm = m.dof_map;
    double total = 0.0;

    // left string slopes against the exact weighted flux b w' = left_flux
    const auto& ln = m.mesh.left.nodes;
    for (int c = 0; c < m.mesh.left.cells(); ++c) {
        const double xl = ln[static_cast<std::size_t>(c)];
        const double xr = ln[static_cast<std::size_t>(c) + 1];
        const double h = xr - xl;
        const int dl = dm.left_dof(c), dr = dm.left_dof(c + 1);
        const double pl = dl >= 0 ? numeric.p(dl) : 0.0;
        const double slope = (numeric.p(dr) - pl) / h;
        total += slope * slope * weighted_cell_integral(b, xl, xr) -
                 2.0 * slope * cf.left_flux.integral(xl, xr) +
                 b.integral_against_inverse(cf.left_flux.squared(), xl, xr);
    }

    // right string slopes against a u' = c + F2
    const PiecewisePoly right_flux = cf.F2.plus_constant(cf.c);
    const PiecewisePoly right_flux_sq = right_flux.squared();
    const auto& rn = m.mesh.right.nodes;
    for (int c = 0; c < m.mesh.right.cells(); ++c) {
        const double xl = rn[static_cast<std::size_t>(c)];
        const double xr = rn[static_cast<std::size_t>(c) + 1];
        const double h = xr - xl;
        const double slope =
            (numeric.p(dm.right_dof(c + 1)) - numeric.p(dm.right_dof(c))) / h;
        total += slope * slope * weighted_cell_integral(a, xl, xr) -
                 2.0 * slope * right_flux.integral(xl, xr) +
                 a.integral_against_inverse(right_flux_sq, xl, xr);
    }

    const double u1 = eval_closed(cf, a, b, 1.0);
    const double db = numeric.p(dm.boundary()) - u1;
    total += m.gamma * db * db;

    // velocity part: L2 distance between the nodal interpolant and f1/g1
    std::vector<double> lv(ln.size());
    for (std::size_t j = 0; j < ln.size(); ++j) {
        const int d = dm.left_dof(static_cast<int>(j));
        lv[j] = d >= 0 ? numeric.q(d) : 0.0;
    }
    const auto left_diff = PiecewisePoly::interpolant(ln, lv, -1.0) - F.g1;
    total += left_diff.squared().integral();

    std::vector<double> rv(rn.size());
    for (std::size_t j = 0; j < rn.size(); ++j)
        rv[j] = numeric.q(dm.right_dof(static_cast<int>(j)));
    const auto right_diff = PiecewisePoly::interpolant(rn, rv, 0.0) - F.f1;
    total += right_diff.squared().integral();

    return std::sqrt(std::max(0.0, total));
}

double static_max_node_error(const OperatorMatrices& m, const DegeneracyProfile& a,
                             const DegeneracyProfile& b, const StaticData& F,
                             const StateVector& numeric) {
    const ClosedForm cf = closed_form(a, b, m.gamma, m.variant, F);
    double worst = 0.0;
    for (int i = 0; i < m.dof_map.total(); ++i) {
        const double x = m.dof_map.dof_position(m.mesh, i);
        worst = std::max(worst, std::abs(numeric.p(i) - eval_closed(cf, a, b, x)));
    }
    return worst;
}

}  // namespace degenwave
