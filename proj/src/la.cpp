#include "otto/la.hpp"

#include <algorithm>
#include <numeric>

namespace otto::la {

Mat kron(const Mat& a, const Mat& b) {
    const int da = a.dim(), db = b.dim();
    if (da * db > 4) throw std::invalid_argument("kron: result dim > 4");
    Mat r(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l)
                    r(i * db + k, j * db + l) = a(i, j) * b(k, l);
    return r;
}

namespace {

double off_diagonal_norm(const Mat& a) {
    double s = 0.0;
    for (int p = 0; p < a.dim(); ++p)
        for (int q = p + 1; q < a.dim(); ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

// One rotation in the (p,q) plane annihilating a(p,q). The rotation is
// R_pp = c, R_pq = -e^{i phi} s, R_qp = e^{-i phi} s, R_qq = c with
// phi = arg a(p,q) and tan(2 theta) = 2|a(p,q)| / (a_pp - a_qq).
void jacobi_rotate(Mat& a, Mat& v, int p, int q) {
    const cx apq = a(p, q);
    const double h = std::abs(apq);
    if (h == 0.0) return;
    const cx phase = apq / h; // e^{i phi}

    const double alpha = a(p, p).real();
    const double beta = a(q, q).real();
    const double w = (alpha - beta) / (2.0 * h);
    double t;
    if (w == 0.0) {
        t = 1.0;
    } else {
        t = 1.0 / (std::abs(w) + std::sqrt(w * w + 1.0));
        if (w < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cx sp = s * phase;        // s e^{i phi}
    const cx spc = s * std::conj(phase);

    const int n = a.dim();
    // columns: A <- A R
    for (int i = 0; i < n; ++i) {
        const cx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip + spc * aiq;
        a(i, q) = -sp * aip + c * aiq;
    }
    // rows: A <- R^dag A
    for (int j = 0; j < n; ++j) {
        const cx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj + sp * aqj;
        a(q, j) = -spc * apj + c * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (int i = 0; i < n; ++i) {
        const cx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip + spc * viq;
        v(i, q) = -sp * vip + c * viq;
    }
}

void phase_fix(Vec& v) {
    for (int i = 0; i < v.dim; ++i) {
        const double m = std::abs(v.c[i]);
        if (m > kPhaseFixTol) {
            const cx ph = std::conj(v.c[i]) / m;
            for (int j = 0; j < v.dim; ++j) v.c[j] *= ph;
            v.c[i] = m; // exactly real
            return;
        }
    }
}

// Componentwise (re, im) comparison; used to order degenerate eigenvectors.
bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.dim; ++i) {
        if (a.c[i].real() != b.c[i].real()) return a.c[i].real() < b.c[i].real();
        if (a.c[i].imag() != b.c[i].imag()) return a.c[i].imag() < b.c[i].imag();
    }
    return false;
}

} // namespace

EigenDecomposition hermitian_eigen(const Mat& h) {
    const int n = h.dim();
    if (n != 2 && n != 4) throw std::invalid_argument("hermitian_eigen: dim must be 2 or 4");
    if (!h.all_finite()) throw std::invalid_argument("hermitian_eigen: non-finite entries");
    if (h.herm_deviation() > kHermTol)
        throw std::invalid_argument("hermitian_eigen: input not Hermitian");

    Mat a = h.hermitized();
    Mat v = Mat::identity(n);
    const double tol = kJacobiOffTol * std::max(1.0, a.frobenius());

    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= tol) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_norm(a) > tol)
        throw std::runtime_error("hermitian_eigen: Jacobi did not converge");

    EigenDecomposition d;
    d.dim = n;
    std::array<int, 4> idx{};
    std::iota(idx.begin(), idx.begin() + n, 0);
    std::sort(idx.begin(), idx.begin() + n,
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    for (int k = 0; k < n; ++k) {
        d.values[k] = a(idx[k], idx[k]).real();
        Vec vec(n);
        for (int i = 0; i < n; ++i) vec.c[i] = v(i, idx[k]);
        phase_fix(vec);
        d.vectors[k] = vec;
    }

    // Deterministic order inside degenerate groups.
    const double gap = kDegenerateGap * std::max(1.0, h.max_abs());
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && d.values[end] - d.values[end - 1] <= gap) ++end;
        if (end - start > 1)
            std::sort(d.vectors.begin() + start, d.vectors.begin() + end, lex_less);
        start = end;
    }
    return d;
}

Density partial_trace(const Density& rho, int dim_a, int dim_b, Keep keep) {
    if (dim_a * dim_b != rho.dim())
        throw std::invalid_argument("partial_trace: dims do not factor the input");
    const Mat& m = rho.mat();
    if (keep == Keep::A) {
        Mat r(dim_a);
        for (int a = 0; a < dim_a; ++a)
            for (int b = 0; b < dim_a; ++b)
                for (int k = 0; k < dim_b; ++k) r(a, b) += m(a * dim_b + k, b * dim_b + k);
        return Density(r);
    }
    Mat r(dim_b);
    for (int k = 0; k < dim_b; ++k)
        for (int l = 0; l < dim_b; ++l)
            for (int a = 0; a < dim_a; ++a) r(k, l) += m(a * dim_b + k, a * dim_b + l);
    return Density(r);
}

double Density::min_eigenvalue() const {
    const auto d = hermitian_eigen(m_);
    return d.values[0];
}

} // namespace otto::la
