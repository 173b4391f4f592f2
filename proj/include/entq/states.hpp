// states.hpp
// State vectors and density matrices with validation, the named cat / Bell /
// GHZ states, convex mixing, dephasing and purity.

#pragma once

#include "entq/eigen.hpp"
#include "entq/matrix.hpp"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace entq {

inline constexpr double tol_state = 1e-9;

class StateVector {
public:
    StateVector(std::vector<cplx> amplitudes, DimsSpec dims)
        : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
        if (amps_.size() != dims_.total())
            throw DimensionError("StateVector: amplitude count != dims product");
        double n2 = 0.0;
        for (const auto& a : amps_) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > tol_state)
            throw ValidationError("StateVector: not normalized");
    }

    const std::vector<cplx>& amplitudes() const { return amps_; }
    const DimsSpec& dims() const { return dims_; }
    std::size_t dim() const { return amps_.size(); }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    double norm() const {
        double n2 = 0.0;
        for (const auto& a : amps_) n2 += std::norm(a);
        return std::sqrt(n2);
    }

    // Explicit repair for simulator estimates; constructors reject instead.
    static StateVector normalized(std::vector<cplx> amps, DimsSpec dims) {
        double n2 = 0.0;
        for (const auto& a : amps) n2 += std::norm(a);
        if (n2 <= 0.0) throw ValidationError("StateVector: zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amps) a *= inv;
        return StateVector(std::move(amps), std::move(dims));
    }

private:
    std::vector<cplx> amps_;
    DimsSpec dims_;
};

class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix m, DimsSpec dims)
        : mat_(std::move(m)), dims_(std::move(dims)) {
        if (mat_.rows() != mat_.cols())
            throw DimensionError("DensityMatrix: matrix not square");
        if (dims_.total() != mat_.rows())
            throw DimensionError("DensityMatrix: dims do not match matrix");
        if (!mat_.is_finite())
            throw ValidationError("DensityMatrix: non-finite entries");
        if (!mat_.is_hermitian(tol_state))
            throw ValidationError("DensityMatrix: not Hermitian");
        if (std::abs(mat_.trace().real() - 1.0) > tol_state ||
            std::abs(mat_.trace().imag()) > tol_state)
            throw ValidationError("DensityMatrix: trace != 1");
        if (min_eigenvalue(mat_) < -tol_state)
            throw ValidationError("DensityMatrix: negative eigenvalue");
    }

    const ComplexMatrix& matrix() const { return mat_; }
    const DimsSpec& dims() const { return dims_; }
    std::size_t dim() const { return mat_.rows(); }

    // Repair route for numerically noisy estimates (Hermitize, clip negative
    // eigenvalues to zero, renormalize trace).
    static DensityMatrix project_to_valid(const ComplexMatrix& m, DimsSpec dims) {
        ComplexMatrix h = (m + m.adjoint()) * cplx{0.5, 0.0};
        EigenSystem es = hermitian_eigs(h, 1e300);
        const std::size_t n = h.rows();
        std::vector<double> clipped(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            clipped[i] = std::max(0.0, es.values[i]);
            sum += clipped[i];
        }
        if (sum <= 0.0) throw ValidationError("project_to_valid: zero matrix");
        ComplexMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cplx z = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    z += es.vectors(i, k) * (clipped[k] / sum) *
                         std::conj(es.vectors(j, k));
                out(i, j) = z;
            }
        return DensityMatrix(std::move(out), std::move(dims));
    }

private:
    ComplexMatrix mat_;
    DimsSpec dims_;
};

inline DensityMatrix pure_density(const StateVector& psi) {
    const std::size_t n = psi.dim();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(std::move(m), psi.dims());
}

inline DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& parts) {
    if (parts.empty()) throw ValidationError("mix: empty component list");
    double wsum = 0.0;
    for (const auto& [w, rho] : parts) {
        if (w < 0.0) throw ValidationError("mix: negative weight");
        if (!(rho.dims() == parts.front().second.dims()))
            throw DimensionError("mix: component dims differ");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > tol_state)
        throw ValidationError("mix: weights do not sum to 1");
    ComplexMatrix acc(parts.front().second.dim(), parts.front().second.dim());
    for (const auto& [w, rho] : parts) acc += rho.matrix() * cplx{w, 0.0};
    return DensityMatrix(std::move(acc), parts.front().second.dims());
}

// Cat-nucleus superposition with survival probability p and relative phase
// phi: amplitudes (sqrt(p), 0, 0, e^{i phi} sqrt(1-p)). Index order:
// 0 = alive&intact, 1 = alive&decayed, 2 = dead&intact, 3 = dead&decayed.
inline StateVector cat_pure(double phi, double p = 0.5) {
    if (p < 0.0 || p > 1.0) throw ValidationError("cat_pure: p outside [0,1]");
    std::vector<cplx> amps(4);
    amps[0] = std::sqrt(p);
    amps[3] = std::polar(std::sqrt(1.0 - p), phi);
    return StateVector(std::move(amps), DimsSpec{2, 2});
}

// The dephased cat: diag(1/2, 0, 0, 1/2).
inline DensityMatrix cat_mixed() {
    ComplexMatrix m(4, 4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return DensityMatrix(std::move(m), DimsSpec{2, 2});
}

inline StateVector phi_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector({r, 0.0, 0.0, r}, DimsSpec{2, 2});
}

inline StateVector ghz() {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<cplx> amps(8);
    amps[0] = r;
    amps[7] = r;
    return StateVector(std::move(amps), DimsSpec{2, 2, 2});
}

// Delete all off-diagonal elements of rho in the given orthonormal basis
// (columns of `basis`); models averaging over unknown relative phases.
inline DensityMatrix dephase(const DensityMatrix& rho, const ComplexMatrix& basis) {
    const std::size_t n = rho.dim();
    if (basis.rows() != n || basis.cols() != n)
        throw DimensionError("dephase: basis shape mismatch");
    const ComplexMatrix gram = basis.adjoint() * basis;
    if ((gram - ComplexMatrix::identity(n)).max_abs() > tol_state)
        throw ValidationError("dephase: basis not orthonormal");

    const ComplexMatrix in_basis = basis.adjoint() * rho.matrix() * basis;
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        d(i, i) = cplx{in_basis(i, i).real(), 0.0};
    ComplexMatrix out = basis * d * basis.adjoint();
    // Hermitize away rounding from the two basis changes.
    out = (out + out.adjoint()) * cplx{0.5, 0.0};
    return DensityMatrix(std::move(out), rho.dims());
}

inline double purity(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

} // namespace entq
