// model.hpp: qubit and qubit-phonon Hamiltonians of the single-ion engine,
// their spectra in closed form, and the numeric eigensolver as cross-check.
//
// Conventions: basis order (|g>, |e>) with sigma_z|g> = -|g>; joint basis
// {|g,0>, |g,1>, |e,0>, |e,1>} (system is the slow index); energies in units
// hbar = 1.

#pragma once

#include <array>

#include "otto/la.hpp"

namespace otto::model {

inline constexpr double kGZeroTol = 1e-12;         // |g| below which the g=0 limits are used
inline constexpr double kSpectrumXCheckTol = 1e-9; // closed form vs numeric eigenvalues
inline constexpr double kRadicandFloor = -1e-12;   // tolerated negative radicand before clamping

// Field convention for the bare-state weights z_gn^2 entering the stroke
// bookkeeping. `transport` shares the cold-side weights across all strokes
// (the populations the adiabatic strokes actually carry around the cycle),
// which makes the four stroke terms cancel exactly. `stroke_local` evaluates
// the ignition weights at the hot field instead.
enum class ZConvention { transport, stroke_local };

struct EngineParams {
    double g = 0.2;       // electric-drive half-Rabi energy
    double b_h = 10.0;    // hot-side magnetic drive
    double b_l = 0.01;    // cold-side magnetic drive
    double omega = 1.0;   // phonon energy
    double k = 0.1;       // qubit-phonon coupling
    double kt_hot = 1.0;  // k_B T of the hot bath
    double tau = 5.0;     // ramp duration
    int steps = 5000;     // integrator steps per ramp
    double meas_cost = 0.6931471805599453; // measurement energy cost M, default kT ln 2 at kT=1
    ZConvention zconv = ZConvention::transport;

    // Throws std::invalid_argument when any physical invariant is violated.
    void validate() const;
};

// 2x2 qubit Hamiltonian g sigma_x + b sigma_z, i.e. [[-b, g],[g, b]].
// Throws when g = b = 0 (degenerate spectrum, bare-state weights undefined).
la::Mat h_system(double g, double b);

// 4x4 qubit-phonon Hamiltonian at field b: qubit drive, phonon energy and
// the excitation-exchange coupling k (a^dag sigma_- + sigma_+ a).
la::Mat h_joint(double g, double k, double omega, double b);
la::Mat h_joint(const EngineParams& p, double b);

// Qubit spectrum e1 = +sqrt(g^2+b^2), e2 = -sqrt(g^2+b^2), eigenvectors in
// the (|g>,|e>) basis, and the bare-state expansion coefficients satisfying
//   |g> = zg1|E1> - zg2|E2>,   |e> = ze1|E1> - ze2|E2>.
struct TwoLevelSpectrum {
    double e1 = 0.0;
    double e2 = 0.0;
    la::Vec ket1;
    la::Vec ket2;
    double zg1 = 0.0, zg2 = 0.0, ze1 = 0.0, ze2 = 0.0;
};

TwoLevelSpectrum two_level_spectrum(double g, double b);

struct ZCoeffs {
    double zg1 = 0.0, zg2 = 0.0, ze1 = 0.0, ze2 = 0.0;
};

ZCoeffs z_coefficients(double g, double b);

// Normalization constants N_minus, N_plus of the qubit eigenvectors,
// computed in cancellation-free form. N_plus * N_minus = 2|g|eps.
std::array<double, 2> eigenvector_norms(double g, double b);

// Closed-form eigenvalues of the 4x4 joint Hamiltonian, in the algebraic
// labelling (u1, u2, u3, u4); NOT sorted. Throws on a radicand more
// negative than kRadicandFloor; small negatives are clamped to zero.
std::array<double, 4> joint_eigenvalues_closed_form(const EngineParams& p, double b);
std::array<double, 4> joint_eigenvalues_closed_form(double g, double k, double omega, double b);

// Numeric eigendecomposition of the joint Hamiltonian, cross-checked
// against the closed form (throws if they disagree beyond
// kSpectrumXCheckTol after sorting).
struct JointSpectrum {
    std::array<double, 4> u{};       // closed-form labels, unsorted
    la::EigenDecomposition decomposition; // ascending numeric spectrum
};

JointSpectrum joint_spectrum(const EngineParams& p, double b);
JointSpectrum joint_spectrum(double g, double k, double omega, double b);

} // namespace otto::model
