#include "otto/thermo.hpp"

#include <algorithm>
#include <cmath>

namespace otto::thermo {

namespace {

// Boltzmann weights over the numeric joint spectrum, max-shifted so low
// temperatures do not overflow.
std::array<double, 4> boltzmann_weights(const std::array<double, 4>& u, double kt) {
    const double umin = *std::min_element(u.begin(), u.end());
    std::array<double, 4> w{};
    double z = 0.0;
    for (int i = 0; i < 4; ++i) {
        w[i] = std::exp(-(u[i] - umin) / kt);
        z += w[i];
    }
    for (auto& wi : w) wi /= z;
    return w;
}

struct ZSquares {
    double z1 = 0.0; // weight of |E1> in |g>
    double z2 = 0.0; // weight of |E2> in |g>
};

ZSquares z_squares(double g, double b) {
    const auto z = model::z_coefficients(g, b);
    return {z.zg1 * z.zg1, z.zg2 * z.zg2};
}

} // namespace

la::Density gibbs_joint(const model::EngineParams& p, double b) {
    p.validate();
    const auto spec = model::joint_spectrum(p, b);
    std::array<double, 4> values{};
    for (int i = 0; i < 4; ++i) values[i] = spec.decomposition.values[i];
    const auto w = boltzmann_weights(values, p.kt_hot);
    la::Mat rho(4);
    for (int i = 0; i < 4; ++i) rho = rho + la::cx(w[i]) * la::outer(spec.decomposition.vectors[i]);
    return la::Density(rho.hermitized());
}

la::Density reduce_to_system(const la::Density& rho_joint) {
    return la::partial_trace(rho_joint, 2, 2, la::Keep::A);
}

Occupations occupations(const la::Density& rho_s, double g, double b) {
    const auto s = model::two_level_spectrum(g, b);
    Occupations occ;
    occ.p1 = la::expectation(rho_s.mat(), s.ket1);
    occ.p2 = la::expectation(rho_s.mat(), s.ket2);
    return occ;
}

namespace {

Occupations hot_occupations(const model::EngineParams& p) {
    return occupations(reduce_to_system(gibbs_joint(p, p.b_h)), p.g, p.b_h);
}

double heat_ignition_with(const model::EngineParams& p, const Occupations& occ,
                          model::ZConvention conv) {
    const double eps_h = std::hypot(p.g, p.b_h);
    const auto z = z_squares(p.g, conv == model::ZConvention::transport ? p.b_l : p.b_h);
    return eps_h * (occ.p1 - z.z1) + (-eps_h) * (occ.p2 - z.z2);
}

} // namespace

double heat_ignition(const model::EngineParams& p) {
    return heat_ignition_with(p, hot_occupations(p), p.zconv);
}

double heat_exhaust(const model::EngineParams& p, const Occupations& occ_hot) {
    const double eps_l = std::hypot(p.g, p.b_l);
    const auto z = z_squares(p.g, p.b_l);
    return eps_l * (z.z1 - occ_hot.p1) + (-eps_l) * (z.z2 - occ_hot.p2);
}

double work_expansion(const model::EngineParams& p, const Occupations& occ_hot) {
    const double eps_h = std::hypot(p.g, p.b_h);
    const double eps_l = std::hypot(p.g, p.b_l);
    return occ_hot.p1 * (eps_l - eps_h) + occ_hot.p2 * (-eps_l + eps_h);
}

double work_compression(const model::EngineParams& p) {
    const double eps_h = std::hypot(p.g, p.b_h);
    const double eps_l = std::hypot(p.g, p.b_l);
    const auto z = z_squares(p.g, p.b_l);
    return z.z1 * (eps_h - eps_l) + z.z2 * (-eps_h + eps_l);
}

double efficiency(const StrokeLedger& l) {
    if (std::abs(l.q_hot) < kDegenerateQTol)
        throw PhysicsError("efficiency: q_hot vanishes, degenerate cycle");
    return (l.q_hot - std::abs(l.q_cold)) / l.q_hot;
}

double efficiency_with_cost(const StrokeLedger& l, double m) {
    const double denom = l.q_hot + m;
    if (std::abs(denom) < kDegenerateQTol)
        throw PhysicsError("efficiency_with_cost: q_hot + M vanishes");
    return (l.q_hot - std::abs(l.q_cold)) / denom;
}

double ideal_efficiency(double g_h, double b_h, double g_l, double b_l) {
    if (g_h * g_h + b_h * b_h <= 0.0)
        throw std::invalid_argument("ideal_efficiency: hot fields both zero");
    return 1.0 - std::sqrt((g_l * g_l + b_l * b_l) / (g_h * g_h + b_h * b_h));
}

StrokeLedger raw_ledger(const model::EngineParams& p) {
    p.validate();
    StrokeLedger l;
    const Occupations occ = hot_occupations(p);
    l.q_hot = heat_ignition_with(p, occ, p.zconv);
    l.w_expand = work_expansion(p, occ);
    l.q_cold = heat_exhaust(p, occ);
    l.w_compress = work_compression(p);
    l.w_net_by_system = -(l.w_expand + l.w_compress);
    return l;
}

StrokeLedger make_ledger(const model::EngineParams& p) {
    StrokeLedger l = raw_ledger(p);
    l.eta = efficiency(l);
    l.eta_m = efficiency_with_cost(l, p.meas_cost);
    return l;
}

double z_convention_discrepancy(const model::EngineParams& p) {
    const Occupations occ = hot_occupations(p);
    return heat_ignition_with(p, occ, model::ZConvention::stroke_local) -
           heat_ignition_with(p, occ, model::ZConvention::transport);
}

double first_law_residual(const StrokeLedger& l) {
    return l.q_hot + l.q_cold + l.w_expand + l.w_compress;
}

} // namespace otto::thermo
