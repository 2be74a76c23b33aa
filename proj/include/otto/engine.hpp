// engine.hpp: orchestrates the four strokes (thermalize, ramp down, measure,
// ramp up) into a cycle, implements the measurement-based exhaust, and runs
// efficiency sweeps over the hot field.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "otto/dynamics.hpp"
#include "otto/errors.hpp"
#include "otto/la.hpp"
#include "otto/model.hpp"
#include "otto/thermo.hpp"

namespace otto::engine {

inline constexpr double kMeasureProbabilityFloor = 1e-12; // below this the g outcome cannot condition

// Sweep points whose efficiency ratios exceed this magnitude sit next to a
// vanishing denominator (q_hot or q_hot + M near zero); the ratios there are
// numerically meaningless, so the point is flagged instead of reported.
inline constexpr double kEfficiencyCap = 10.0;

enum class ExhaustMode { selective, nonselective };

struct MeasurementOutcome {
    bool observed_g = false;
    double probability = 0.0; // probability of the g outcome
    la::Density post_state = la::maximally_mixed(4);
};

// Projects onto |g><g| (x) I and conditions on the g outcome (forced).
// Throws PhysicsError when the outcome probability is below the floor.
MeasurementOutcome projective_measure_g(const la::Density& rho);

// Same channel with the outcome drawn from the supplied generator; on the
// e outcome the complementary projection is returned.
MeasurementOutcome projective_measure_g(const la::Density& rho, std::mt19937_64& rng);

// Non-selective decoupling map: replaces the state by the product of its
// marginals, destroying qubit-phonon correlations.
la::Density nonselective_decouple(const la::Density& rho);

// Joint Gibbs state at the hot field.
la::Density ignition_stroke(const model::EngineParams& p);

struct StrokeResult {
    la::Density state = la::maximally_mixed(4);
    double work = 0.0;           // frozen-population bookkeeping value
    double delta_u_dynamic = 0.0; // Tr(rho_S H_S) change along the simulated ramp
};

// Ramps b_h -> b_l over tau; work is the bookkeeping sum, the simulated
// energy change is reported alongside as a diagnostic.
StrokeResult expansion_stroke(const la::Density& rho_hot, const model::EngineParams& p);

struct ExhaustResult {
    la::Density state = la::maximally_mixed(4);
    double q_cold = 0.0;
    double probability_g = 0.0;
    bool observed_g = false;
};

// Applies the chosen measurement channel at fixed fields; q_cold comes from
// the population bookkeeping in either mode.
ExhaustResult exhaust_stroke(const la::Density& rho, const model::EngineParams& p,
                             ExhaustMode mode);

struct CompressionResult {
    la::Density state = la::maximally_mixed(4);
    double work = 0.0;
    double delta_u_dynamic = 0.0;
    double ground_fidelity = 0.0; // <g| rho_S |g> at the end of the ramp
};

CompressionResult compression_stroke(const la::Density& rho, const model::EngineParams& p);

struct CycleDiagnostics {
    double first_law_residual = 0.0;
    double ground_fidelity_after_compression = 0.0;
    double z_convention_discrepancy = 0.0;
    double expansion_bookkeeping_vs_dynamic = 0.0;   // |W - dU|/max(|W|, 1e-300)
    double compression_bookkeeping_vs_dynamic = 0.0;
    double ideal_efficiency = 0.0; // population-independent bound for comparison
};

struct CycleRecord {
    model::EngineParams params;
    thermo::StrokeLedger ledger;
    ExhaustMode exhaust_mode = ExhaustMode::selective;
    bool observed_g = false;
    double measure_probability = 0.0;
    CycleDiagnostics diagnostics;
};

// Runs ignition -> expansion -> exhaust (forced-g selective by default) ->
// compression, fills the ledger from the closed-form stroke sums and the
// diagnostics from the simulated trajectories. Throws PhysicsError on a
// degenerate cycle (b_l = b_h or vanishing q_hot).
CycleRecord run_cycle(const model::EngineParams& p,
                      ExhaustMode mode = ExhaustMode::selective);

struct SweepPoint {
    double b_h = 0.0;
    double work = 0.0; // q_hot - |q_cold|
    double eta = 0.0;
    double eta_m = 0.0;
    int flagged = 0;   // degenerate point, values zeroed
};

// Bookkeeping cycle at every grid field; no dynamics involved. Degenerate
// points (b_h <= b_l or vanishing q_hot) are flagged with zeroed values.
// The default entry point runs grid points in parallel (OpenMP) and is
// bitwise identical to the serial reference.
std::vector<SweepPoint> sweep_efficiency(const model::EngineParams& p,
                                         const std::vector<double>& b_h_grid);
std::vector<SweepPoint> sweep_efficiency_serial(const model::EngineParams& p,
                                                const std::vector<double>& b_h_grid);

// Evenly spaced sweep grid, endpoints included.
std::vector<double> linear_grid(double lo, double hi, int n);

} // namespace otto::engine
