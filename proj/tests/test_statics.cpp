#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "degenwave/statics.hpp"

using namespace degenwave;

namespace {

StaticData unit_right_source() {
    auto F = StaticData::zero();
    F.f2 = PiecewisePoly::constant(0.0, 1.0, 1.0, 0.0);
    return F;
}

// generic mixed data; velocities continuous at the junction and compatible
// with the left boundary condition of the given variant
StaticData mixed_data(Variant variant) {
    StaticData F = StaticData::zero();
    F.f1 = PiecewisePoly::constant(0.0, 1.0, 0.3, 0.0);
    F.f2 = PiecewisePoly::step({0.0, 0.5, 1.0}, {1.0, -0.5}, 0.0);
    F.g1 = variant == Variant::WeakLeft
               ? PiecewisePoly::linear(-1.0, 0.0, 0.0, 0.3, -1.0)
               : PiecewisePoly::constant(-1.0, 0.0, 0.3, -1.0);
    F.g2 = PiecewisePoly::step({-1.0, -0.3, 0.0}, {-1.0, 0.7}, -1.0);
    return F;
}

struct Setup {
    DegeneracyProfile a, b;
    OperatorMatrices m;
};

Setup make(double mu_a, double mu_b, int n, double gamma = 1.0,
           bool rate_grading = false) {
    const Variant variant = variant_for(mu_b);
    DegeneracyProfile a(0.0, 1.0, mu_a), b(-1.0, 0.0, mu_b);
    auto mesh = rate_grading
                    ? build_coupled_mesh(mu_a, mu_b, n, grading_for_energy_rate(mu_b),
                                         grading_for_energy_rate(mu_a))
                    : build_coupled_mesh(mu_a, mu_b, n);
    auto m = assemble(mesh, a, b, gamma, variant);
    return {a, b, std::move(m)};
}

}  // namespace

TEST_CASE("closed form: constant right source, constant coefficients") {
    // u'' = 1 on (0,1), w'' = 0, w(-1) = 0, gamma = 1:
    // flux c = -1/2, u(0) = w(0) = -1/2, u = -1/2 - x/2 + x^2/2, w = -(x+1)/2
    const DegeneracyProfile a(0.0, 1.0, 0.0), b(-1.0, 0.0, 0.0);
    const auto F = unit_right_source();
    CHECK(analytic_junction_flux(a, b, 1.0, Variant::WeakLeft, F) ==
          doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(analytic_static_solution(a, b, 1.0, Variant::WeakLeft, F, 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(analytic_static_solution(a, b, 1.0, Variant::WeakLeft, F, 1.0) ==
          doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(analytic_static_solution(a, b, 1.0, Variant::WeakLeft, F, 0.5) ==
          doctest::Approx(-0.625).epsilon(1e-14));
    CHECK(analytic_static_solution(a, b, 1.0, Variant::WeakLeft, F, -0.5) ==
          doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(analytic_static_solution(a, b, 1.0, Variant::WeakLeft, F, -1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("closed form: strong variant flux equals the total left source") {
    const DegeneracyProfile a(0.0, 1.0, 0.25), b(-1.0, 0.0, 1.5);
    auto F = StaticData::zero();
    F.g2 = PiecewisePoly::constant(-1.0, 0.0, 1.0, -1.0);
    CHECK(analytic_junction_flux(a, b, 1.0, Variant::StrongLeft, F) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // u(0) = -(1/gamma + 1/(1-mu_a)) * c = -(1 + 4/3); u(1) = u0 + c/(1-mu_a)
    CHECK(analytic_static_solution(a, b, 1.0, Variant::StrongLeft, F, 0.0) ==
          doctest::Approx(-7.0 / 3.0).epsilon(1e-14));
    CHECK(analytic_static_solution(a, b, 1.0, Variant::StrongLeft, F, 1.0) ==
          doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("closed form: boundary-velocity-only data gives a constant state") {
    const DegeneracyProfile a(0.0, 1.0, 0.5), b(-1.0, 0.0, 1.2);
    auto F = StaticData::zero();
    F.f1 = PiecewisePoly::constant(0.0, 1.0, 0.7, 0.0);
    F.g1 = PiecewisePoly::constant(-1.0, 0.0, 0.7, -1.0);
    const double gamma = 2.0;
    CHECK(analytic_junction_flux(a, b, gamma, Variant::StrongLeft, F) ==
          doctest::Approx(0.0));
    for (double x : {-1.0, -0.4, 0.0, 0.3, 1.0})
        CHECK(analytic_static_solution(a, b, gamma, Variant::StrongLeft, F, x) ==
              doctest::Approx(-0.35).epsilon(1e-14));
}

TEST_CASE("closed form validates configuration") {
    const DegeneracyProfile a(0.0, 1.0, 0.5), b(-1.0, 0.0, 1.5);
    const auto F = StaticData::zero();
    CHECK_THROWS_AS(analytic_static_solution(a, b, 1.0, Variant::WeakLeft, F, 0.5),
                    std::invalid_argument);
    const DegeneracyProfile bw(-1.0, 0.0, 0.5);
    CHECK_THROWS_AS(analytic_static_solution(a, bw, 1.0, Variant::StrongLeft, F, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(analytic_static_solution(a, bw, 1.0, Variant::WeakLeft, F, 1.5),
                    std::domain_error);
}

TEST_CASE("discrete solve reproduces the frozen constant-coefficient case") {
    auto setup = make(0.0, 0.0, 256);
    const auto F = unit_right_source();
    const auto U = solve_static(setup.m, F);
    const int j = setup.m.dof_map.junction();
    CHECK(std::abs(U.p(j) - (-0.5)) < 1e-3);
    CHECK(std::abs(junction_flux_left(setup.m, setup.b, U.p) - (-0.5)) < 1e-3);
    // the right one-sided flux carries the h/2 * u'' midpoint offset
    CHECK(std::abs(junction_flux_right(setup.m, setup.a, U.p) - (-0.5)) < 2.5e-3);
    CHECK(static_max_node_error(setup.m, setup.a, setup.b, F, U) < 1e-3);
}

TEST_CASE("zero data solves to the zero state exactly") {
    auto setup = make(0.5, 1.5, 32);
    const auto U = solve_static(setup.m, StaticData::zero());
    CHECK(U.p.norm() == 0.0);
    CHECK(U.q.norm() == 0.0);
}

TEST_CASE("piecewise-linear exact solutions are reproduced to rounding") {
    // boundary-velocity-only data: the solution is constant/linear, inside
    // the element space, so both error measures sit at rounding level
    for (double mu_b : {0.0, 1.5}) {
        auto setup = make(0.0, mu_b, 24, 1.0);
        auto F = StaticData::zero();
        F.f1 = PiecewisePoly::constant(0.0, 1.0, 0.7, 0.0);
        F.g1 = variant_for(mu_b) == Variant::WeakLeft
                   ? PiecewisePoly::linear(-1.0, 0.0, 0.0, 0.7, -1.0)
                   : PiecewisePoly::constant(-1.0, 0.0, 0.7, -1.0);
        const auto U = solve_static(setup.m, F);
        CHECK(static_max_node_error(setup.m, setup.a, setup.b, F, U) < 1e-12);
        // only rounding remains, amplified by slopes over the tiny graded
        // cells when recovered from nodal values
        CHECK(static_energy_error(setup.m, setup.a, setup.b, F, U) < 1e-7);
    }
}

TEST_CASE("applying the generator to the static solution recovers the data") {
    for (double mu_b : {0.5, 1.5}) {
        auto setup = make(0.5, mu_b, 48);
        const auto F = mixed_data(variant_for(mu_b));
        const auto U = solve_static(setup.m, F);
        const auto AU = apply_generator(setup.m, U);

        CHECK((AU.p - U.q).norm() == 0.0);  // first slot is the velocity

        // second slot: M qdot must equal the plain source load (no boundary
        // term: the damping contribution cancels against f1(1))
        const auto& dm = setup.m.dof_map;
        Eigen::VectorXd expected = -static_load(setup.m, F);
        expected(dm.boundary()) -= F.f1.eval(1.0);
        const Eigen::VectorXd got = setup.m.M * AU.q;
        CHECK((got - expected).norm() <= 1e-9 * (1.0 + expected.norm()));
    }
}

TEST_CASE("energy-norm error shrinks under refinement at first order") {
    for (double mu_b : {0.5, 1.5}) {
        const double mu_a = 0.5;
        double prev = 0.0;
        for (int n : {32, 64, 128}) {
            // first-order energy convergence needs the stronger grading
            auto setup = make(mu_a, mu_b, n, 1.0, true);
            const auto F = mixed_data(variant_for(mu_b));
            const auto U = solve_static(setup.m, F);
            const double err = static_energy_error(setup.m, setup.a, setup.b, F, U);
            CHECK(err > 0.0);
            if (prev > 0.0) {
                const double order = std::log2(prev / err);
                CHECK(order > 0.85);
            }
            prev = err;
        }
    }
}

TEST_CASE("boundary condition residual vanishes under refinement") {
    const auto F = mixed_data(Variant::WeakLeft);
    double prev = 0.0;
    for (int n : {64, 256}) {
        auto setup = make(0.25, 0.5, n);
        const auto U = solve_static(setup.m, F);
        const int bnode = setup.m.dof_map.boundary();
        const double res = setup.m.gamma * U.p(bnode) +
                           boundary_slope(setup.m, U.p) + F.f1.eval(1.0);
        if (prev != 0.0) CHECK(std::abs(res) < std::abs(prev));
        prev = res;
    }
    CHECK(std::abs(prev) < 2e-2);
}

TEST_CASE("junction fluxes from both strings agree under refinement") {
    const auto F = mixed_data(Variant::WeakLeft);
    auto coarse = make(0.5, 0.5, 32);
    auto fine = make(0.5, 0.5, 256);
    const auto Uc = solve_static(coarse.m, F);
    const auto Uf = solve_static(fine.m, F);
    const double gap_c = std::abs(junction_flux_right(coarse.m, coarse.a, Uc.p) -
                                  junction_flux_left(coarse.m, coarse.b, Uc.p));
    const double gap_f = std::abs(junction_flux_right(fine.m, fine.a, Uf.p) -
                                  junction_flux_left(fine.m, fine.b, Uf.p));
    CHECK(gap_f < gap_c);
    const double c_exact = analytic_junction_flux(fine.a, fine.b, 1.0,
                                                  Variant::WeakLeft, F);
    CHECK(std::abs(junction_flux_right(fine.m, fine.a, Uf.p) - c_exact) < 5e-3);
}

TEST_CASE("incompatible velocity data is rejected") {
    auto setup = make(0.5, 0.5, 16);
    auto F = StaticData::zero();
    F.f1 = PiecewisePoly::constant(0.0, 1.0, 1.0, 0.0);  // f1(0) = 1 != g1(0) = 0
    CHECK_THROWS_AS(solve_static(setup.m, F), std::invalid_argument);

    auto G = StaticData::zero();
    G.f1 = PiecewisePoly::constant(0.0, 1.0, 0.5, 0.0);
    G.g1 = PiecewisePoly::constant(-1.0, 0.0, 0.5, -1.0);  // g1(-1) != 0, WeakLeft
    CHECK_THROWS_AS(solve_static(setup.m, G), std::invalid_argument);
}
