// thermo.hpp: thermal-state preparation, occupation extraction, and the
// heat/work/efficiency bookkeeping of the four-stroke cycle.
//
// Sign convention: heats are positive into the system, so a releasing
// exhaust stroke has q_cold < 0 and |q_cold| enters the efficiency only
// inside the ratio formulas.

#pragma once

#include "otto/errors.hpp"
#include "otto/la.hpp"
#include "otto/model.hpp"

namespace otto::thermo {

inline constexpr double kDegenerateQTol = 1e-12; // |q_hot| below which the efficiency is undefined

// Probabilities of the excited (|E1>) and ground (|E2>) qubit eigenstates.
struct Occupations {
    double p1 = 0.0;
    double p2 = 0.0;
};

// Joint Gibbs state exp(-H/kT)/Z at field b, assembled over the numeric
// eigendecomposition with max-shifted Boltzmann weights.
la::Density gibbs_joint(const model::EngineParams& p, double b);

// Reduced qubit state: partial trace of the joint state over the phonon.
la::Density reduce_to_system(const la::Density& rho_joint);

// p_n = <E_n| rho_s |E_n> against the qubit eigenbasis at (g, b).
Occupations occupations(const la::Density& rho_s, double g, double b);

// Heat absorbed while thermalizing at the hot field, from initial
// populations z_gn^2 of the prepared |g> state. The field at which the
// z weights are taken follows p.zconv.
double heat_ignition(const model::EngineParams& p);

// Heat released to the phonon mode when the measurement resets the
// populations to z_gn^2 at the cold field. Negative when releasing.
double heat_exhaust(const model::EngineParams& p, const Occupations& occ_hot);

// Energy change of the system while the field ramps down, populations frozen.
double work_expansion(const model::EngineParams& p, const Occupations& occ_hot);

// Energy change while the field ramps back up, populations frozen at z_gn^2.
double work_compression(const model::EngineParams& p);

// Heat and work per stroke plus the two efficiencies.
struct StrokeLedger {
    double q_hot = 0.0;
    double w_expand = 0.0;
    double q_cold = 0.0;
    double w_compress = 0.0;
    double w_net_by_system = 0.0; // -(w_expand + w_compress)
    double eta = 0.0;
    double eta_m = 0.0;
};

// eta = (q_hot - |q_cold|)/q_hot. Throws PhysicsError when |q_hot| is
// below kDegenerateQTol (degenerate cycle).
double efficiency(const StrokeLedger& l);

// eta_m = (q_hot - |q_cold|)/(q_hot + m), the efficiency net of the
// measurement cost m.
double efficiency_with_cost(const StrokeLedger& l, double m);

// 1 - sqrt((g_l^2 + b_l^2)/(g_h^2 + b_h^2)): the population-independent
// efficiency of the bare two-level cycle.
double ideal_efficiency(double g_h, double b_h, double g_l, double b_l);

// Heats and works only; never throws on a degenerate cycle.
StrokeLedger raw_ledger(const model::EngineParams& p);

// Full ledger including efficiencies; throws on a degenerate cycle.
StrokeLedger make_ledger(const model::EngineParams& p);

// q_hot under stroke_local minus q_hot under transport; quantifies how much
// the choice of z convention moves the books.
double z_convention_discrepancy(const model::EngineParams& p);

double first_law_residual(const StrokeLedger& l);

} // namespace otto::thermo
