#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wcmc/errors.hpp"

namespace wcmc {

// Dense row-major matrix. Everything in this toolkit is desk-scale, so no
// sparse storage and no BLAS; plain loops keep results reproducible.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw ShapeMismatch("matmul: inner dimensions differ");
    Matrix c(a.rows, b.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols != x.size()) throw ShapeMismatch("matvec: dimension mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline std::vector<double> vecmat(const std::vector<double>& x, const Matrix& a) {
    if (a.rows != x.size()) throw ShapeMismatch("vecmat: dimension mismatch");
    std::vector<double> y(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < a.cols; ++j) y[j] += xi * a(i, j);
    }
    return y;
}

struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;
    bool singular = false;
};

// LU with partial pivoting.
inline LuFactors lu_factor(Matrix a) {
    if (a.rows != a.cols) throw ShapeMismatch("lu_factor: matrix not square");
    const std::size_t n = a.rows;
    LuFactors f;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    // absolute floor only; callers re-verify their residuals, which catches
    // near-singular systems that slip past the factorization
    const double tiny = 1e-300;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::fabs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(a(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best <= tiny) { f.singular = true; }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        const double akk = a(k, k);
        if (akk == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / akk;
            a(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

inline std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b) {
    const std::size_t n = f.lu.rows;
    if (b.size() != n) throw ShapeMismatch("lu_solve: rhs dimension mismatch");
    if (f.singular) throw SingularSystem("lu_solve: factorization is singular");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s / f.lu(i, i);
    }
    return x;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps. Only the
// spectrum is needed anywhere in the toolkit, so no eigenvectors.
inline std::vector<double> symmetric_eigenvalues(Matrix a, int max_sweeps = 100) {
    if (a.rows != a.cols) throw ShapeMismatch("symmetric_eigenvalues: matrix not square");
    const std::size_t n = a.rows;
    if (n == 0) return {};
    if (n == 1) return {a(0, 0)};

    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::fabs(v));
    const double stop = 1e-15 * (scale > 0.0 ? scale : 1.0);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
        if (off <= stop) {
            std::vector<double> ev(n);
            for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
            std::sort(ev.begin(), ev.end());
            return ev;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= stop * 1e-2) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    throw NumericalFailure("symmetric_eigenvalues: Jacobi sweeps did not converge");
}

// Largest singular value, via the spectrum of A^T A.
inline double spectral_norm(const Matrix& a) {
    Matrix ata(a.cols, a.cols, 0.0);
    for (std::size_t i = 0; i < a.cols; ++i) {
        for (std::size_t j = i; j < a.cols; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.rows; ++k) s += a(k, i) * a(k, j);
            ata(i, j) = s;
            ata(j, i) = s;
        }
    }
    const std::vector<double> ev = symmetric_eigenvalues(std::move(ata));
    double lmax = 0.0;
    for (double v : ev) lmax = std::max(lmax, v);
    return std::sqrt(std::max(0.0, lmax));
}

} // namespace wcmc
