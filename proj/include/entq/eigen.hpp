// eigen.hpp
// Hermitian eigensolver (cyclic complex Jacobi rotations) and positive-
// semidefiniteness checks, including the principal-minor criterion.

#pragma once

#include "entq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace entq {

inline constexpr double tol_herm = 1e-9;
inline constexpr double tol_eig = 1e-10;
inline constexpr double tol_minor = 1e-10;
inline constexpr double psd_slack = 1e-9;

struct EigenSystem {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // orthonormal columns, vectors.col(i) <-> values[i]
};

namespace detail {

inline double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

// Cyclic Jacobi on a Hermitian matrix. Converges when the off-diagonal
// Frobenius mass drops below 1e-14 * ||M||_F; at most 100 sweeps.
// Eigenvalues ascending; each eigenvector's first nonzero component is made
// real-positive so outputs are reproducible.
inline EigenSystem hermitian_eigs(const ComplexMatrix& m, double herm_tol = tol_herm) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_eigs: matrix not square");
    if (!m.is_hermitian(herm_tol))
        throw ValidationError("hermitian_eigs: matrix not Hermitian within tolerance");

    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    // Symmetrize to kill the sub-tolerance Hermiticity defect up front.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx{a(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double target = 1e-14 * std::max(a.frobenius_norm(), 1e-300);
    bool converged = detail::offdiag_frobenius(a) <= target;

    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r; // e^{i theta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns of the plane rotation J restricted to (p,q):
                //   J[:,p] = ( c, -s e^{-i theta} ),  J[:,q] = ( s e^{i theta}, c ).
                const cplx jpq = s * phase;
                const cplx jqp = -s * std::conj(phase);
                // A <- J^dagger A J (rows and columns p,q only).
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * jpq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx{a(p, p).real(), 0.0};
                a(q, q) = cplx{a(q, q).real(), 0.0};
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
            }
        }
        converged = detail::offdiag_frobenius(a) <= target;
    }
    if (!converged)
        throw ConvergenceError("hermitian_eigs: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        es.values[col] = a(src, src).real();
        // Phase fix: first component of magnitude > 1e-12 made real-positive.
        cplx fix = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx z = v(k, src);
            if (std::abs(z) > 1e-12) {
                fix = std::conj(z) / std::abs(z);
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k) es.vectors(k, col) = v(k, src) * fix;
    }
    return es;
}

inline double min_eigenvalue(const ComplexMatrix& m, double herm_tol = tol_herm) {
    return hermitian_eigs(m, herm_tol).values.front();
}

inline bool is_psd(const ComplexMatrix& m, double tol = psd_slack) {
    return min_eigenvalue(m) >= -tol;
}

namespace detail {

// Determinant of the principal submatrix picked out by `idx`, via complex LU
// with partial pivoting. Real-valued for Hermitian input up to rounding.
inline double principal_minor(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
    const std::size_t k = idx.size();
    std::vector<cplx> lu(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lu[i * k + j] = m(idx[i], idx[j]);

    cplx det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < k; ++i)
            if (std::abs(lu[i * k + col]) > std::abs(lu[piv * k + col])) piv = i;
        if (std::abs(lu[piv * k + col]) <= 1e-300) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < k; ++j)
                std::swap(lu[piv * k + j], lu[col * k + j]);
            det = -det;
        }
        det *= lu[col * k + col];
        for (std::size_t i = col + 1; i < k; ++i) {
            const cplx f = lu[i * k + col] / lu[col * k + col];
            for (std::size_t j = col; j < k; ++j) lu[i * k + j] -= f * lu[col * k + j];
        }
    }
    return det.real();
}

} // namespace detail

// Hurwitz-Sylvester check: all 2^m - 1 principal minors non-negative.
// Exponential in the side length, hence the m <= 8 guard.
inline bool principal_minors_psd(const ComplexMatrix& m, double tol = tol_minor) {
    if (m.rows() != m.cols())
        throw DimensionError("principal_minors_psd: matrix not square");
    if (!m.is_hermitian(tol_herm))
        throw ValidationError("principal_minors_psd: matrix not Hermitian");
    const std::size_t n = m.rows();
    if (n > 8)
        throw DimensionError("principal_minors_psd: side length > 8, use is_psd");

    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) idx.push_back(i);
        if (detail::principal_minor(m, idx) < -tol) return false;
    }
    return true;
}

} // namespace entq
