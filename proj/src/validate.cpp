#include "otto/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "otto/dynamics.hpp"
#include "otto/engine.hpp"
#include "otto/la.hpp"
#include "otto/model.hpp"
#include "otto/thermo.hpp"

namespace otto::validate {

namespace {

CheckResult spectrum_check(std::uint64_t seed, bool perturb) {
    CheckResult r{"closed_form_vs_numeric_spectrum", false, 0.0, 1e-9};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ug(0.0, 2.0), ub(0.01, 20.0), uo(0.1, 5.0);
    for (int n = 0; n < 1000; ++n) {
        const double g = ug(rng), k = ug(rng), b = ub(rng), omega = uo(rng);
        auto u = model::joint_eigenvalues_closed_form(g, k, omega, b);
        if (perturb && n == 0) u[0] += 1e-6;
        std::sort(u.begin(), u.end());
        const auto d = la::hermitian_eigen(model::h_joint(g, k, omega, b));
        for (int i = 0; i < 4; ++i) r.residual = std::max(r.residual, std::abs(u[i] - d.values[i]));
    }
    r.passed = r.residual <= r.tolerance;
    return r;
}

CheckResult first_law_check() {
    CheckResult r{"first_law_closure_transport", false, 0.0, 1e-12};
    model::EngineParams p; // reference parameter set
    p.zconv = model::ZConvention::transport;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            p.b_h = 0.05 + (20.0 - 0.05) * i / 19.0;
            p.kt_hot = 0.1 + (10.0 - 0.1) * j / 19.0;
            const auto l = thermo::raw_ledger(p);
            r.residual = std::max(r.residual, std::abs(thermo::first_law_residual(l)));
        }
    }
    r.passed = r.residual <= r.tolerance;
    return r;
}

CheckResult eigen_reconstruction_check(std::uint64_t seed) {
    CheckResult r{"eigen_reconstruction", false, 0.0, 1e-9};
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 0; n < 200; ++n) {
        const int dim = (n % 2) ? 4 : 2;
        la::Mat h(dim);
        for (int i = 0; i < dim; ++i) {
            h(i, i) = u(rng);
            for (int j = i + 1; j < dim; ++j) {
                h(i, j) = la::cx(u(rng), u(rng));
                h(j, i) = std::conj(h(i, j));
            }
        }
        const auto d = la::hermitian_eigen(h);
        la::Mat rec(dim);
        for (int i = 0; i < dim; ++i) rec = rec + la::cx(d.values[i]) * la::outer(d.vectors[i]);
        r.residual = std::max(r.residual, (rec - h).max_abs());
    }
    r.passed = r.residual <= r.tolerance;
    return r;
}

CheckResult gibbs_commutes_check() {
    CheckResult r{"gibbs_commutes_with_hamiltonian", false, 0.0, 1e-10};
    model::EngineParams p;
    for (double b : {0.01, 0.5, 2.0, 10.0}) {
        const la::Mat rho = thermo::gibbs_joint(p, b).mat();
        const la::Mat h = model::h_joint(p, b);
        r.residual = std::max(r.residual, (rho * h - h * rho).max_abs());
    }
    r.passed = r.residual <= r.tolerance;
    return r;
}

CheckResult step_halving_check() {
    CheckResult r{"step_halving_convergence", false, 0.0, 1e-8};
    model::EngineParams p;
    const dynamics::RampSpec ramp{10.0, 1.0, 5.0};
    const la::Density rho0 = thermo::gibbs_joint(p, ramp.b_start);
    const auto coarse = dynamics::evolve_liouville(rho0, p, ramp, {2500});
    const auto fine = dynamics::evolve_liouville(rho0, p, ramp, {5000});
    r.residual = (coarse.back().rho.mat() - fine.back().rho.mat()).max_abs();
    r.passed = r.residual <= r.tolerance;
    return r;
}

CheckResult measurement_channel_check() {
    CheckResult r{"measurement_channel_identities", false, 0.0, 1e-10};
    model::EngineParams p;
    const la::Density rho = thermo::gibbs_joint(p, p.b_h);
    const auto m = engine::projective_measure_g(rho);
    const la::Mat sys = thermo::reduce_to_system(m.post_state).mat();
    r.residual = std::max({std::abs(sys(0, 0).real() - 1.0), std::abs(sys(1, 1)),
                           std::abs(sys(0, 1)), std::abs(sys(1, 0))});
    const la::Density dec = engine::nonselective_decouple(rho);
    const la::Density dec2 = engine::nonselective_decouple(dec);
    r.residual = std::max(r.residual, (dec.mat() - dec2.mat()).max_abs());
    r.passed = r.residual <= r.tolerance;
    return r;
}

} // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& opts) {
    std::vector<CheckResult> out;
    out.push_back(spectrum_check(opts.seed, opts.inject_spectrum_perturbation));
    out.push_back(first_law_check());
    out.push_back(eigen_reconstruction_check(opts.seed));
    out.push_back(gibbs_commutes_check());
    out.push_back(step_halving_check());
    out.push_back(measurement_channel_check());
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

} // namespace otto::validate
