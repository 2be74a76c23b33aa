#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "otto/dynamics.hpp"
#include "otto/thermo.hpp"

using namespace otto;

namespace {

model::EngineParams ramp_params() {
    model::EngineParams p;
    p.b_l = 1.0; // reference ramp ends at b = 1
    return p;
}

} // namespace

TEST_CASE("linear field ramp") {
    const dynamics::RampSpec s{10.0, 1.0, 5.0};
    CHECK(dynamics::field_ramp(s, 0.0) == 10.0);
    CHECK(dynamics::field_ramp(s, 5.0) == 1.0);
    CHECK(dynamics::field_ramp(s, 2.5) == doctest::Approx(5.5).epsilon(1e-14));
    CHECK_THROWS_AS(dynamics::field_ramp(s, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(dynamics::field_ramp(s, 5.1), std::invalid_argument);
}

TEST_CASE("static Hamiltonian leaves the thermal state invariant") {
    const auto p = ramp_params();
    const la::Density rho0 = thermo::gibbs_joint(p, 10.0);
    const dynamics::RampSpec s{10.0, 10.0, 5.0};
    const auto traj = dynamics::evolve_liouville(rho0, p, s, {2000});
    for (std::size_t i = 0; i < traj.size(); i += 200) {
        CHECK((traj[i].rho.mat() - rho0.mat()).max_abs() < 1e-9);
        CHECK(traj[i].p1 == doctest::Approx(traj[0].p1).epsilon(1e-9));
    }
}

TEST_CASE("slow ramp keeps the occupations nearly frozen") {
    const auto p = ramp_params();
    const la::Density rho0 = thermo::gibbs_joint(p, p.b_h);
    const dynamics::RampSpec s{p.b_h, p.b_l, p.tau};
    const auto traj = dynamics::evolve_liouville(rho0, p, s, {p.steps});

    const double drift = std::abs(traj.back().p1 - traj.front().p1);
    MESSAGE("p1 start ", traj.front().p1, " end ", traj.back().p1, " drift ", drift);
    CHECK(drift <= 0.005); // probability units
    CHECK(traj.back().p1 + traj.back().p2 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("total occupation drift shrinks as the ramp slows") {
    const auto p = ramp_params();
    const la::Density rho0 = thermo::gibbs_joint(p, p.b_h);
    double prev = 1e9;
    for (double tau : {1.0, 5.0, 25.0}) {
        const dynamics::RampSpec s{p.b_h, p.b_l, tau};
        const auto traj = dynamics::evolve_liouville(rho0, p, s, {p.steps});
        const double drift = std::abs(traj.back().p1 - traj.front().p1);
        CHECK(drift < prev);
        prev = drift;
    }
}

TEST_CASE("state stays physical along the ramp") {
    const auto p = ramp_params();
    const la::Density rho0 = thermo::gibbs_joint(p, p.b_h);
    const dynamics::RampSpec s{p.b_h, p.b_l, p.tau};
    const auto traj = dynamics::evolve_liouville(rho0, p, s, {p.steps});
    const double purity0 = traj.front().rho.purity();
    for (std::size_t i = 0; i < traj.size(); i += 100) {
        const auto& smp = traj[i];
        CHECK(std::abs(smp.rho.mat().trace().real() - 1.0) < 1e-9);
        CHECK(smp.rho.min_eigenvalue() > -1e-7);
        CHECK(std::abs(smp.rho.purity() - purity0) < 1e-7);
    }
}

TEST_CASE("halving the step barely moves the final state") {
    const auto p = ramp_params();
    const la::Density rho0 = thermo::gibbs_joint(p, p.b_h);
    const dynamics::RampSpec s{p.b_h, p.b_l, p.tau};
    const auto coarse = dynamics::evolve_liouville(rho0, p, s, {2500});
    const auto fine = dynamics::evolve_liouville(rho0, p, s, {5000});
    CHECK((coarse.back().rho.mat() - fine.back().rho.mat()).max_abs() < 1e-8);
}

TEST_CASE("stability guard rejects coarse steps with advice") {
    const auto p = ramp_params();
    const la::Density rho0 = thermo::gibbs_joint(p, p.b_h);
    const dynamics::RampSpec s{p.b_h, p.b_l, p.tau};
    try {
        dynamics::evolve_liouville(rho0, p, s, {10});
        FAIL("expected PhysicsError");
    } catch (const PhysicsError& e) {
        CHECK(std::string(e.what()).find("steps") != std::string::npos);
    }
}

TEST_CASE("evolution rejects wrong-size states") {
    const auto p = ramp_params();
    CHECK_THROWS_AS(
        dynamics::evolve_liouville(la::maximally_mixed(2), p, {10.0, 1.0, 5.0}, {1000}),
        std::invalid_argument);
}

TEST_CASE("adiabaticity parameter") {
    CHECK(dynamics::adiabaticity_parameter(0.0, 1.0, 1.8) == 0.0);
    CHECK(dynamics::adiabaticity_parameter(0.2, 1.0, 0.0) == 0.0);
    CHECK(dynamics::adiabaticity_parameter(0.2, 1.0, -1.8) ==
          doctest::Approx(0.084857943088637325).epsilon(1e-12));
    CHECK_THROWS_AS(dynamics::adiabaticity_parameter(0.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("small-field-ratio approximation") {
    const auto r = dynamics::adiabaticity_small_g(0.2, 10.0, 1.8);
    CHECK(r.value == doctest::Approx(9e-5).epsilon(1e-12));
    CHECK(r.in_regime);
    CHECK_FALSE(dynamics::adiabaticity_small_g(0.2, 1.0, 1.8).in_regime);
    CHECK(dynamics::adiabaticity_small_g(0.0, 1.0, 1.8).value == 0.0);

    // within 1% of the exact expression once b >= 20 g
    for (double b = 4.0; b <= 40.0; b += 2.0) {
        const double exact = dynamics::adiabaticity_parameter(0.2, b, 1.8);
        const double approx = dynamics::adiabaticity_small_g(0.2, b, 1.8).value;
        CHECK(std::abs(approx - exact) / exact < 0.01);
    }
}

TEST_CASE("adiabaticity peaks at the small-field end of the ramp") {
    const auto p = ramp_params();
    const la::Density rho0 = thermo::gibbs_joint(p, p.b_h);
    const dynamics::RampSpec s{p.b_h, p.b_l, p.tau};
    const auto traj = dynamics::evolve_liouville(rho0, p, s, {1000});
    double xi_max = 0.0;
    for (const auto& smp : traj) xi_max = std::max(xi_max, smp.xi);
    CHECK(xi_max == traj.back().xi); // largest where the field is smallest
    CHECK(std::abs(xi_max - 0.0849) < 1e-4);
    for (const auto& smp : traj) CHECK(smp.xi < 0.1);
}

TEST_CASE("minimal ramp time bound") {
    CHECK(dynamics::min_ramp_time(0.2, 10.0, 1.0) == doctest::Approx(0.02475).epsilon(1e-12));
    CHECK(dynamics::min_ramp_time(0.2, 10.0, 10.0) == 0.0);
    CHECK(dynamics::min_ramp_time(0.2, 10.0, 0.05) == doctest::Approx(9.9997499999999988).epsilon(1e-12));
    CHECK_THROWS_AS(dynamics::min_ramp_time(0.2, 10.0, 0.0), PhysicsError);
}
