#include "otto/engine.hpp"

#include <cmath>

namespace otto::engine {

namespace {

// Projector |g><g| (x) I in the joint basis: the qubit is the slow index,
// so the g block is the top-left 2x2.
la::Mat project_g_block(const la::Mat& m) {
    la::Mat r(4);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(k, l) = m(k, l);
    return r;
}

double g_probability(const la::Density& rho) {
    return (rho.mat()(0, 0) + rho.mat()(1, 1)).real();
}

MeasurementOutcome condition_on_g(const la::Density& rho) {
    const double prob = g_probability(rho);
    if (prob < kMeasureProbabilityFloor)
        throw PhysicsError("projective_measure_g: g outcome has vanishing probability");
    MeasurementOutcome out;
    out.observed_g = true;
    out.probability = prob;
    out.post_state = la::Density((la::cx(1.0 / prob) * project_g_block(rho.mat())).hermitized());
    return out;
}

la::Mat complement_e_block(const la::Mat& m) {
    la::Mat r(4);
    for (int k = 2; k < 4; ++k)
        for (int l = 2; l < 4; ++l) r(k, l) = m(k, l);
    return r;
}

double system_energy(const la::Density& joint, double g, double b) {
    const la::Density rho_s = thermo::reduce_to_system(joint);
    return (rho_s.mat() * model::h_system(g, b)).trace().real();
}

dynamics::IntegratorConfig integrator_of(const model::EngineParams& p) {
    return dynamics::IntegratorConfig{p.steps};
}

} // namespace

MeasurementOutcome projective_measure_g(const la::Density& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("projective_measure_g: state must be 4x4");
    if (!rho.is_positive()) throw std::invalid_argument("projective_measure_g: state not positive");
    return condition_on_g(rho);
}

MeasurementOutcome projective_measure_g(const la::Density& rho, std::mt19937_64& rng) {
    if (rho.dim() != 4) throw std::invalid_argument("projective_measure_g: state must be 4x4");
    if (!rho.is_positive()) throw std::invalid_argument("projective_measure_g: state not positive");
    const double prob = g_probability(rho);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < prob) return condition_on_g(rho);
    const double pe = 1.0 - prob;
    if (pe < kMeasureProbabilityFloor)
        throw PhysicsError("projective_measure_g: e outcome has vanishing probability");
    MeasurementOutcome out;
    out.observed_g = false;
    out.probability = prob;
    out.post_state = la::Density((la::cx(1.0 / pe) * complement_e_block(rho.mat())).hermitized());
    return out;
}

la::Density nonselective_decouple(const la::Density& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("nonselective_decouple: state must be 4x4");
    const la::Density a = la::partial_trace(rho, 2, 2, la::Keep::A);
    const la::Density b = la::partial_trace(rho, 2, 2, la::Keep::B);
    return la::Density(la::kron(a.mat(), b.mat()).hermitized());
}

la::Density ignition_stroke(const model::EngineParams& p) { return thermo::gibbs_joint(p, p.b_h); }

StrokeResult expansion_stroke(const la::Density& rho_hot, const model::EngineParams& p) {
    const auto occ = thermo::occupations(thermo::reduce_to_system(rho_hot), p.g, p.b_h);
    const dynamics::RampSpec ramp{p.b_h, p.b_l, p.tau};
    const auto traj = dynamics::evolve_liouville(rho_hot, p, ramp, integrator_of(p));
    StrokeResult r;
    r.state = traj.back().rho;
    r.work = thermo::work_expansion(p, occ);
    r.delta_u_dynamic = system_energy(r.state, p.g, p.b_l) - system_energy(rho_hot, p.g, p.b_h);
    return r;
}

ExhaustResult exhaust_stroke(const la::Density& rho, const model::EngineParams& p,
                             ExhaustMode mode) {
    const auto occ_hot =
        thermo::occupations(thermo::reduce_to_system(ignition_stroke(p)), p.g, p.b_h);
    ExhaustResult r;
    r.q_cold = thermo::heat_exhaust(p, occ_hot);
    if (mode == ExhaustMode::selective) {
        const auto m = projective_measure_g(rho);
        r.state = m.post_state;
        r.probability_g = m.probability;
        r.observed_g = true;
    } else {
        r.state = nonselective_decouple(rho);
        r.probability_g = g_probability(rho);
        r.observed_g = false;
    }
    return r;
}

CompressionResult compression_stroke(const la::Density& rho, const model::EngineParams& p) {
    const dynamics::RampSpec ramp{p.b_l, p.b_h, p.tau};
    const auto traj = dynamics::evolve_liouville(rho, p, ramp, integrator_of(p));
    CompressionResult r;
    r.state = traj.back().rho;
    r.work = thermo::work_compression(p);
    r.delta_u_dynamic = system_energy(r.state, p.g, p.b_h) - system_energy(rho, p.g, p.b_l);
    r.ground_fidelity = thermo::reduce_to_system(r.state).mat()(0, 0).real();
    return r;
}

CycleRecord run_cycle(const model::EngineParams& p, ExhaustMode mode) {
    p.validate();
    if (p.b_h == p.b_l)
        throw PhysicsError("run_cycle: b_h = b_l gives a zero-work degenerate cycle");

    CycleRecord rec;
    rec.params = p;
    rec.exhaust_mode = mode;

    const la::Density hot = ignition_stroke(p);
    const StrokeResult exp = expansion_stroke(hot, p);
    const ExhaustResult exh = exhaust_stroke(exp.state, p, mode);
    const CompressionResult comp = compression_stroke(exh.state, p);

    rec.ledger = thermo::make_ledger(p);
    rec.observed_g = exh.observed_g;
    rec.measure_probability = exh.probability_g;

    rec.diagnostics.first_law_residual = thermo::first_law_residual(rec.ledger);
    rec.diagnostics.ground_fidelity_after_compression = comp.ground_fidelity;
    rec.diagnostics.z_convention_discrepancy = thermo::z_convention_discrepancy(p);
    rec.diagnostics.expansion_bookkeeping_vs_dynamic =
        std::abs(exp.work - exp.delta_u_dynamic) / std::max(std::abs(exp.work), 1e-300);
    rec.diagnostics.compression_bookkeeping_vs_dynamic =
        std::abs(comp.work - comp.delta_u_dynamic) / std::max(std::abs(comp.work), 1e-300);
    rec.diagnostics.ideal_efficiency = thermo::ideal_efficiency(p.g, p.b_h, p.g, p.b_l);
    return rec;
}

namespace {

SweepPoint sweep_point(const model::EngineParams& base, double b_h) {
    model::EngineParams p = base;
    p.b_h = b_h;
    SweepPoint pt;
    pt.b_h = b_h;
    if (b_h <= p.b_l) {
        pt.flagged = 1;
        return pt;
    }
    const thermo::StrokeLedger l = thermo::raw_ledger(p);
    if (std::abs(l.q_hot) < thermo::kDegenerateQTol ||
        std::abs(l.q_hot + p.meas_cost) < thermo::kDegenerateQTol) {
        pt.flagged = 1;
        return pt;
    }
    const double work = l.q_hot - std::abs(l.q_cold);
    const double eta = thermo::efficiency(l);
    const double eta_m = thermo::efficiency_with_cost(l, p.meas_cost);
    if (std::abs(eta) > kEfficiencyCap || std::abs(eta_m) > kEfficiencyCap) {
        pt.flagged = 1;
        return pt;
    }
    pt.work = work;
    pt.eta = eta;
    pt.eta_m = eta_m;
    return pt;
}

} // namespace

std::vector<SweepPoint> sweep_efficiency_serial(const model::EngineParams& p,
                                                const std::vector<double>& b_h_grid) {
    p.validate();
    std::vector<SweepPoint> out(b_h_grid.size());
    for (std::size_t i = 0; i < b_h_grid.size(); ++i) out[i] = sweep_point(p, b_h_grid[i]);
    return out;
}

std::vector<SweepPoint> sweep_efficiency(const model::EngineParams& p,
                                         const std::vector<double>& b_h_grid) {
    p.validate();
    std::vector<SweepPoint> out(b_h_grid.size());
    const std::int64_t n = static_cast<std::int64_t>(b_h_grid.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = sweep_point(p, b_h_grid[i]);
    return out;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("linear_grid: n must be >= 1");
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo + step * i;
    g[n - 1] = hi;
    return g;
}

} // namespace otto::engine
