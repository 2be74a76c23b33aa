#include "otto/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace otto::model {

void EngineParams::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("EngineParams: omega must be > 0");
    if (!(k >= 0.0)) throw std::invalid_argument("EngineParams: k must be >= 0");
    if (!(kt_hot > 0.0)) throw std::invalid_argument("EngineParams: kt_hot must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("EngineParams: tau must be > 0");
    if (steps < 1) throw std::invalid_argument("EngineParams: steps must be >= 1");
    if (!(meas_cost >= 0.0)) throw std::invalid_argument("EngineParams: meas_cost must be >= 0");
    if (!(b_h >= b_l)) throw std::invalid_argument("EngineParams: b_h must be >= b_l");
    if (g * g + b_h * b_h <= 0.0 || g * g + b_l * b_l <= 0.0)
        throw std::invalid_argument("EngineParams: g^2 + b^2 must be positive at both fields");
    // The linear ramp visits every field between b_l and b_h.
    if (std::abs(g) < kGZeroTol && b_l <= 0.0 && b_h >= 0.0)
        throw std::invalid_argument("EngineParams: ramp crosses a degenerate point (g = 0, b = 0)");
}

la::Mat h_system(double g, double b) {
    if (g * g + b * b <= 0.0)
        throw std::invalid_argument("h_system: degenerate spectrum at g = b = 0");
    la::Mat m(2);
    m(0, 0) = -b;
    m(0, 1) = g;
    m(1, 0) = g;
    m(1, 1) = b;
    return m;
}

la::Mat h_joint(double g, double k, double omega, double b) {
    la::Mat m(4);
    m(0, 0) = -b;
    m(1, 1) = -b + omega;
    m(2, 2) = b;
    m(3, 3) = b + omega;
    m(0, 2) = g;
    m(2, 0) = g;
    m(1, 3) = g;
    m(3, 1) = g;
    m(1, 2) = k;
    m(2, 1) = k;
    return m;
}

la::Mat h_joint(const EngineParams& p, double b) { return h_joint(p.g, p.k, p.omega, b); }

std::array<double, 2> eigenvector_norms(double g, double b) {
    const double eps = std::hypot(g, b);
    // eps -/+ b is rewritten as g^2/(eps +/- b) on the side that cancels.
    double nm, np;
    if (b >= 0.0) {
        nm = std::abs(g) * std::sqrt(2.0 * eps / (eps + b));
        np = std::sqrt(2.0 * (eps * eps + b * eps));
    } else {
        nm = std::sqrt(2.0 * (eps * eps - b * eps));
        np = std::abs(g) * std::sqrt(2.0 * eps / (eps - b));
    }
    return {nm, np};
}

ZCoeffs z_coefficients(double g, double b) {
    if (g * g + b * b <= 0.0)
        throw std::invalid_argument("z_coefficients: degenerate spectrum at g = b = 0");
    ZCoeffs z;
    if (std::abs(g) < kGZeroTol) {
        // Exact g -> 0 limits, signs fixed so both reconstruction identities
        // |g> = zg1|E1> - zg2|E2>, |e> = ze1|E1> - ze2|E2> hold with
        // ket1 = |e>, ket2 = |g> (b > 0; mirrored for b < 0).
        if (b > 0.0) {
            z.zg1 = 0.0; z.zg2 = -1.0; z.ze1 = 1.0; z.ze2 = 0.0;
        } else {
            z.zg1 = -1.0; z.zg2 = 0.0; z.ze1 = 0.0; z.ze2 = 1.0;
        }
        return z;
    }
    const double eps = std::hypot(g, b);
    const auto [nm, np] = eigenvector_norms(g, b);
    z.zg1 = -nm / (2.0 * eps);
    z.zg2 = -np / (2.0 * eps);
    // (b -/+ eps)/g rewritten as -/+ g/(eps +/- b) where the subtraction cancels.
    if (b >= 0.0) {
        z.ze1 = z.zg1 * (b + eps) / g;
        z.ze2 = -z.zg2 * g / (eps + b);
    } else {
        z.ze1 = z.zg1 * g / (eps - b);
        z.ze2 = z.zg2 * (b - eps) / g;
    }
    return z;
}

TwoLevelSpectrum two_level_spectrum(double g, double b) {
    if (g * g + b * b <= 0.0)
        throw std::invalid_argument("two_level_spectrum: degenerate spectrum at g = b = 0");
    TwoLevelSpectrum s;
    const double eps = std::hypot(g, b);
    s.e1 = eps;
    s.e2 = -eps;
    s.ket1 = la::Vec(2);
    s.ket2 = la::Vec(2);
    if (std::abs(g) < kGZeroTol) {
        if (b > 0.0) {
            s.ket1.c[1] = 1.0; // |e>
            s.ket2.c[0] = 1.0; // |g>
        } else {
            s.ket1.c[0] = 1.0;
            s.ket2.c[1] = 1.0;
        }
    } else {
        const auto [nm, np] = eigenvector_norms(g, b);
        // b - eps = -g^2/(eps + b) for b >= 0 avoids the cancellation.
        const double b_minus_eps = (b >= 0.0) ? -g * g / (eps + b) : b - eps;
        const double b_plus_eps = (b >= 0.0) ? b + eps : g * g / (eps - b);
        s.ket1.c[0] = b_minus_eps / nm;
        s.ket1.c[1] = -g / nm;
        s.ket2.c[0] = b_plus_eps / np;
        s.ket2.c[1] = -g / np;
    }
    const ZCoeffs z = z_coefficients(g, b);
    s.zg1 = z.zg1;
    s.zg2 = z.zg2;
    s.ze1 = z.ze1;
    s.ze2 = z.ze2;
    return s;
}

std::array<double, 4> joint_eigenvalues_closed_form(double g, double k, double omega, double b) {
    const double c = 4.0 * b * b + 4.0 * g * g + 2.0 * k * k + omega * omega;
    const double rad_d = 4.0 * g * g * k * k + k * k * k * k - 4.0 * b * k * k * omega +
                         4.0 * b * b * omega * omega + 4.0 * g * g * omega * omega;
    if (rad_d < kRadicandFloor)
        throw std::runtime_error("joint_eigenvalues_closed_form: negative inner radicand " +
                                 std::to_string(rad_d));
    const double d = std::sqrt(std::max(rad_d, 0.0));
    const double rad_m = c - 2.0 * d;
    const double rad_p = c + 2.0 * d;
    if (rad_m < kRadicandFloor || rad_p < kRadicandFloor)
        throw std::runtime_error("joint_eigenvalues_closed_form: negative radicand");
    const double am = std::sqrt(std::max(rad_m, 0.0));
    const double ap = std::sqrt(std::max(rad_p, 0.0));
    return {0.5 * (omega - am), 0.5 * (omega + am), 0.5 * (omega - ap), 0.5 * (omega + ap)};
}

std::array<double, 4> joint_eigenvalues_closed_form(const EngineParams& p, double b) {
    return joint_eigenvalues_closed_form(p.g, p.k, p.omega, b);
}

JointSpectrum joint_spectrum(double g, double k, double omega, double b) {
    JointSpectrum s;
    s.u = joint_eigenvalues_closed_form(g, k, omega, b);
    s.decomposition = la::hermitian_eigen(h_joint(g, k, omega, b));
    std::array<double, 4> sorted = s.u;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 4; ++i) {
        if (std::abs(sorted[i] - s.decomposition.values[i]) > kSpectrumXCheckTol)
            throw std::runtime_error("joint_spectrum: closed form and numeric eigenvalues disagree");
    }
    return s;
}

JointSpectrum joint_spectrum(const EngineParams& p, double b) {
    return joint_spectrum(p.g, p.k, p.omega, b);
}

} // namespace otto::model
