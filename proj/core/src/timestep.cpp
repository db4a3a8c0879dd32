#include <degenwave/timestep.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace degenwave {

TrapezoidalStepper::TrapezoidalStepper(const OperatorMatrices& m, double dt)
    : m_(&m), dt_(dt) {
    if (dt == 0.0)
        throw std::invalid_argument("TrapezoidalStepper: dt must be nonzero");
    stiff_ = m.stiffness_with_boundary();
    const int b = m.dof_map.boundary();

    lhs_ = m.M + (dt * dt / 4.0) * stiff_;
    lhs_.coeffRef(b, b) += 0.5 * dt * m.damp;
    rhs_q_ = m.M - (dt * dt / 4.0) * stiff_;
    rhs_q_.coeffRef(b, b) -= 0.5 * dt * m.damp;

    solver_.compute(lhs_);
    if (solver_.info() != Eigen::Success)
        throw std::runtime_error("TrapezoidalStepper: factorization failed");
}

StateVector TrapezoidalStepper::step(const StateVector& s) const {
    const Eigen::VectorXd rhs = rhs_q_ * s.q - dt_ * (stiff_ * s.p);
    const double rhs_norm = rhs.norm();

    Eigen::VectorXd q1 = solver_.solve(rhs);
    for (int pass = 0; pass < 3; ++pass) {
        const Eigen::VectorXd r = rhs - lhs_ * q1;
        if (r.norm() <= 1e-13 * rhs_norm) break;
        q1 += solver_.solve(r);
    }
    if (rhs_norm > 0.0 && (rhs - lhs_ * q1).norm() > 1e-12 * rhs_norm)
        throw std::runtime_error("TrapezoidalStepper: step residual above tolerance");

    StateVector out;
    out.q = std::move(q1);
    out.p = s.p + (0.5 * dt_) * (s.q + out.q);
    return out;
}

double TrapezoidalStepper::boundary_dissipation_rate(
    const StateVector& s, const StateVector& s_next) const {
    const int b = m_->dof_map.boundary();
    const double q_mid = 0.5 * (s.q(b) + s_next.q(b));
    return m_->damp * q_mid * q_mid;
}

StateVector step_trapezoidal(const OperatorMatrices& m, const StateVector& s,
                             double dt) {
    return TrapezoidalStepper(m, dt).step(s);
}

EnergySeries simulate(const OperatorMatrices& m, const StateVector& s0,
                      double dt, double T) {
    if (dt <= 0.0 || T <= 0.0)
        throw std::invalid_argument("simulate: dt and T must be positive");
    const long n_steps =
        std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));

    const TrapezoidalStepper stepper(m, dt);

    EnergySeries out;
    out.times.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.energies.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.boundary_dissipation.reserve(static_cast<std::size_t>(n_steps) + 1);

    const double e0 = energy(m, s0);
    out.times.push_back(0.0);
    out.energies.push_back(e0);
    out.boundary_dissipation.push_back(0.0);

    StateVector s = s0;
    double dissipated = 0.0;
    for (long k = 1; k <= n_steps; ++k) {
        StateVector next = stepper.step(s);
        dissipated += dt * stepper.boundary_dissipation_rate(s, next);
        s = std::move(next);

        const double e = energy(m, s);
        if (!std::isfinite(e))
            throw std::runtime_error(
                "simulate: state became non-finite at t = " +
                std::to_string(static_cast<double>(k) * dt) +
                " (step " + std::to_string(k) +
                "); reduce dt or weaken the mesh grading");
        const double e_prev = out.energies.back();
        if (e > e_prev + 1e-9 * (e0 + e_prev))
            throw std::runtime_error(
                "simulate: energy increased beyond slack at step " +
                std::to_string(k));

        out.times.push_back(static_cast<double>(k) * dt);
        out.energies.push_back(e);
        out.boundary_dissipation.push_back(dissipated);
    }

    if (e0 > 0.0 &&
        std::abs(e0 - out.energies.back() - dissipated) > 1e-8 * e0)
        throw std::runtime_error("simulate: discrete energy balance violated");
    return out;
}

std::pair<StateVector, double> prepare_smooth_initial_data(
    const OperatorMatrices& m, const StaticData& F) {
    StateVector u0 = solve_static(m, F);
    const StateVector au0 = apply_generator(m, u0);
    const double graph = energy_norm(m, u0) + energy_norm(m, au0);
    return {std::move(u0), graph};
}

}  // namespace degenwave
