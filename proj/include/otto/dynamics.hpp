// dynamics.hpp: time evolution of the joint density matrix under the ramped
// field (fixed-step RK4 on the commutator equation) plus adiabaticity
// diagnostics for the ramp.

#pragma once

#include <vector>

#include "otto/errors.hpp"
#include "otto/la.hpp"
#include "otto/model.hpp"

namespace otto::dynamics {

inline constexpr double kStabilityLimit = 0.1; // required h * max|eigenvalue(H)|

struct RampSpec {
    double b_start = 10.0;
    double b_end = 0.01;
    double tau = 5.0;
};

struct IntegratorConfig {
    int steps = 5000; // classical fixed-step RK4
};

// B(t) = b_start + (b_end - b_start) t / tau. Throws outside [0, tau].
double field_ramp(const RampSpec& spec, double t);

struct TrajectorySample {
    double t = 0.0;
    la::Density rho = la::maximally_mixed(4); // joint state, symmetrized each step
    double p1 = 0.0;      // qubit occupations against the eigenbasis at B(t)
    double p2 = 0.0;
    double xi = 0.0;      // adiabaticity parameter at t
};

// Integrates d rho/dt = -i [H(B(t)), rho] with H rebuilt at every RK4 stage
// time; emits a sample at every step, including t = 0. Throws PhysicsError
// when the step size violates the stability guard, advising a step count.
std::vector<TrajectorySample> evolve_liouville(const la::Density& rho0,
                                               const model::EngineParams& p,
                                               const RampSpec& spec,
                                               const IntegratorConfig& cfg);

// xi = |bdot * g / (4 (g^2 + b^2)^{3/2})|; the evolution is adiabatic
// while xi << 1.
double adiabaticity_parameter(double g, double b, double bdot);

// Small-g approximation xi ~ |bdot| g / (4 b^3); in_regime is false when
// g > b/10 and the approximation should not be trusted.
struct SmallGXi {
    double value = 0.0;
    bool in_regime = true;
};

SmallGXi adiabaticity_small_g(double g, double b, double bdot);

// Lower bound on the ramp duration for adiabatic transport,
// |g/8 (1/b_h^2 - 1/b_l^2)|; choose tau much larger. Throws on b_l = 0.
double min_ramp_time(double g, double b_h, double b_l);

} // namespace otto::dynamics
