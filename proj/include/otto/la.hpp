// la.hpp: minimal dense complex linear algebra for 2x2 and 4x4 matrices.
// Products, Hermitian eigendecomposition (cyclic Jacobi), Kronecker product,
// partial trace, and a validated density-matrix wrapper.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace otto::la {

using cx = std::complex<double>;

// Tolerances are module constants so tests can pin behaviour against them.
inline constexpr double kHermTol         = 1e-12; // max |a(i,j) - conj(a(j,i))| accepted as Hermitian
inline constexpr double kJacobiOffTol    = 1e-14; // off-diagonal norm target, relative to ||A||_F
inline constexpr int    kJacobiMaxSweeps = 100;
inline constexpr double kPhaseFixTol     = 1e-12; // smallest component magnitude used for phase fixing
inline constexpr double kDegenerateGap   = 1e-12; // eigenvalue gap treated as degenerate, relative
inline constexpr double kTraceTol        = 1e-9;  // |tr(rho) - 1| accepted for density matrices
inline constexpr double kPsdTol          = 1e-9;  // eigenvalue floor accepted for density matrices

// Dense square complex matrix, row-major, dim in {1..4}.
class Mat {
public:
    Mat() = default;
    explicit Mat(int dim) : dim_(check_dim(dim)) {}

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cx& operator()(int i, int j) { return e_[i * dim_ + j]; }
    const cx& operator()(int i, int j) const { return e_[i * dim_ + j]; }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat r(dim_);
        for (int i = 0; i < dim_ * dim_; ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat r(dim_);
        for (int i = 0; i < dim_ * dim_; ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }
    Mat operator*(const Mat& o) const {
        check_same(o);
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) {
                const cx aik = (*this)(i, k);
                for (int j = 0; j < dim_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    friend Mat operator*(cx s, const Mat& m) {
        Mat r(m.dim_);
        for (int i = 0; i < m.dim_ * m.dim_; ++i) r.e_[i] = s * m.e_[i];
        return r;
    }

    Mat dagger() const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    cx trace() const {
        cx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(e_[i]));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (int i = 0; i < dim_ * dim_; ++i) s += std::norm(e_[i]);
        return std::sqrt(s);
    }

    double herm_deviation() const {
        double d = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    bool is_hermitian(double tol = kHermTol) const { return herm_deviation() <= tol; }

    // (A + A^dag)/2
    Mat hermitized() const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        return r;
    }

    bool all_finite() const {
        for (int i = 0; i < dim_ * dim_; ++i)
            if (!std::isfinite(e_[i].real()) || !std::isfinite(e_[i].imag())) return false;
        return true;
    }

private:
    static int check_dim(int dim) {
        if (dim < 1 || dim > 4) throw std::invalid_argument("la::Mat: dim must be in 1..4");
        return dim;
    }
    void check_same(const Mat& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("la::Mat: dimension mismatch");
    }
    int dim_ = 0;
    std::array<cx, 16> e_{};
};

// Column vector, dim <= 4.
struct Vec {
    int dim = 0;
    std::array<cx, 4> c{};

    Vec() = default;
    explicit Vec(int d) : dim(d) {}

    cx& operator[](int i) { return c[i]; }
    const cx& operator[](int i) const { return c[i]; }

    double norm() const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += std::norm(c[i]);
        return std::sqrt(s);
    }
};

// <a|b>
inline cx dot(const Vec& a, const Vec& b) {
    cx s = 0.0;
    for (int i = 0; i < a.dim; ++i) s += std::conj(a.c[i]) * b.c[i];
    return s;
}

// |v><v|
inline Mat outer(const Vec& v) {
    Mat m(v.dim);
    for (int i = 0; i < v.dim; ++i)
        for (int j = 0; j < v.dim; ++j) m(i, j) = v.c[i] * std::conj(v.c[j]);
    return m;
}

// <v|M|v>, real part (M Hermitian)
inline double expectation(const Mat& m, const Vec& v) {
    cx s = 0.0;
    for (int i = 0; i < v.dim; ++i)
        for (int j = 0; j < v.dim; ++j) s += std::conj(v.c[i]) * m(i, j) * v.c[j];
    return s.real();
}

// Kronecker product; result dim = a.dim * b.dim (<= 4).
Mat kron(const Mat& a, const Mat& b);

// Eigenvalues ascending; vectors unit-norm, pairwise orthonormal, each
// phase-fixed so its first component of magnitude > kPhaseFixTol is real
// and positive. Deterministic for identical input.
struct EigenDecomposition {
    int dim = 0;
    std::array<double, 4> values{};
    std::array<Vec, 4> vectors{};
};

// Cyclic Jacobi for Hermitian input, dim in {2,4}. Throws
// std::invalid_argument on non-Hermitian input and std::runtime_error if
// the sweep cap is hit before convergence.
EigenDecomposition hermitian_eigen(const Mat& h);

class Density;

enum class Keep { A, B };

// Partial trace of rho over one factor of a dim_a x dim_b bipartition
// (A is the slower, left index). Trace preserving.
Density partial_trace(const Density& rho, int dim_a, int dim_b, Keep keep);

// Unit-trace Hermitian matrix. Trace and Hermiticity are enforced on
// construction; positivity is a property check (needs a spectrum) exposed
// separately because evolved states carry integrator-level error.
class Density {
public:
    explicit Density(const Mat& m) : m_(m) {
        if (!m.all_finite()) throw std::invalid_argument("Density: non-finite entries");
        if (m.herm_deviation() > kHermTol) throw std::invalid_argument("Density: not Hermitian");
        if (std::abs(m.trace().real() - 1.0) > kTraceTol || std::abs(m.trace().imag()) > kTraceTol)
            throw std::invalid_argument("Density: trace != 1");
    }

    const Mat& mat() const { return m_; }
    int dim() const { return m_.dim(); }

    double min_eigenvalue() const;
    bool is_positive(double tol = kPsdTol) const { return min_eigenvalue() >= -tol; }
    double purity() const { return (m_ * m_).trace().real(); }

private:
    Mat m_;
};

// I/dim, a convenient valid default state.
inline Density maximally_mixed(int dim) {
    return Density(cx(1.0 / dim) * Mat::identity(dim));
}

} // namespace otto::la
