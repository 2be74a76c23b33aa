#include "otto/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otto/thermo.hpp"

namespace otto::dynamics {

double field_ramp(const RampSpec& spec, double t) {
    if (!(spec.tau > 0.0)) throw std::invalid_argument("field_ramp: tau must be > 0");
    if (t < 0.0 || t > spec.tau)
        throw std::invalid_argument("field_ramp: t outside [0, tau]");
    return spec.b_start + (spec.b_end - spec.b_start) * t / spec.tau;
}

namespace {

la::Mat commutator_rhs(const la::Mat& h, const la::Mat& rho) {
    return la::cx(0.0, -1.0) * (h * rho - rho * h);
}

double max_abs_eigenvalue(const model::EngineParams& p, double b) {
    const auto u = model::joint_eigenvalues_closed_form(p, b);
    double m = 0.0;
    for (double ui : u) m = std::max(m, std::abs(ui));
    return m;
}

} // namespace

std::vector<TrajectorySample> evolve_liouville(const la::Density& rho0,
                                               const model::EngineParams& p,
                                               const RampSpec& spec,
                                               const IntegratorConfig& cfg) {
    if (rho0.dim() != 4) throw std::invalid_argument("evolve_liouville: state must be 4x4");
    if (cfg.steps < 1) throw std::invalid_argument("evolve_liouville: steps must be >= 1");

    const double h = spec.tau / cfg.steps;
    const double hmax =
        std::max(max_abs_eigenvalue(p, spec.b_start), max_abs_eigenvalue(p, spec.b_end));
    if (h * hmax > kStabilityLimit) {
        const int suggested = static_cast<int>(std::ceil(spec.tau * hmax / kStabilityLimit));
        throw PhysicsError("evolve_liouville: step size violates the stability guard; use at least " +
                           std::to_string(suggested) + " steps");
    }

    const double bdot = (spec.b_end - spec.b_start) / spec.tau;
    auto hamiltonian = [&](double t) { return model::h_joint(p, field_ramp(spec, t)); };

    std::vector<TrajectorySample> out;
    out.reserve(cfg.steps + 1);
    la::Mat rho = rho0.mat();

    for (int i = 0; i <= cfg.steps; ++i) {
        const double t = (i == cfg.steps) ? spec.tau : i * h;
        const double b = field_ramp(spec, t);

        TrajectorySample s;
        s.t = t;
        s.rho = la::Density(rho);
        const auto occ = thermo::occupations(thermo::reduce_to_system(s.rho), p.g, b);
        s.p1 = occ.p1;
        s.p2 = occ.p2;
        s.xi = adiabaticity_parameter(p.g, b, bdot);
        out.push_back(std::move(s));
        if (i == cfg.steps) break;

        const la::Mat k1 = commutator_rhs(hamiltonian(t), rho);
        const la::Mat k2 = commutator_rhs(hamiltonian(t + 0.5 * h), rho + la::cx(0.5 * h) * k1);
        const la::Mat k3 = commutator_rhs(hamiltonian(t + 0.5 * h), rho + la::cx(0.5 * h) * k2);
        const la::Mat k4 =
            commutator_rhs(hamiltonian(std::min(t + h, spec.tau)), rho + la::cx(h) * k3);
        rho = rho + la::cx(h / 6.0) * (k1 + la::cx(2.0) * k2 + la::cx(2.0) * k3 + k4);
        rho = rho.hermitized();
    }
    return out;
}

double adiabaticity_parameter(double g, double b, double bdot) {
    if (g * g + b * b <= 0.0)
        throw std::invalid_argument("adiabaticity_parameter: g = b = 0");
    const double eps2 = g * g + b * b;
    return std::abs(bdot * g / (4.0 * eps2 * std::sqrt(eps2)));
}

SmallGXi adiabaticity_small_g(double g, double b, double bdot) {
    SmallGXi r;
    r.value = std::abs(bdot * g / (4.0 * b * b * b));
    r.in_regime = std::abs(g) <= std::abs(b) / 10.0;
    return r;
}

double min_ramp_time(double g, double b_h, double b_l) {
    if (b_l == 0.0)
        throw PhysicsError("min_ramp_time: bound diverges at b_l = 0");
    if (b_h == 0.0)
        throw PhysicsError("min_ramp_time: bound diverges at b_h = 0");
    return std::abs(g / 8.0 * (1.0 / (b_h * b_h) - 1.0 / (b_l * b_l)));
}

} // namespace otto::dynamics
