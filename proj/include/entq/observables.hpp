// observables.hpp
// Hermitian observables, Pauli-string parsing, commutation structure,
// spectral measurements, Born-rule statistics and deterministic sampling.

#pragma once

#include "entq/eigen.hpp"
#include "entq/matrix.hpp"
#include "entq/rng.hpp"
#include "entq/states.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace entq {

// Relative tolerance for grouping eigenvalues into a degenerate outcome.
inline constexpr double tol_degenerate = 1e-8;

struct DeclaredBasis {
    ComplexMatrix basis; // orthonormal columns
    bool product = false;
};

struct Observable {
    ComplexMatrix matrix;
    std::string label;
    std::optional<DeclaredBasis> declared_eigenbasis;

    Observable(ComplexMatrix m, std::string lbl = {},
               std::optional<DeclaredBasis> basis = std::nullopt)
        : matrix(std::move(m)), label(std::move(lbl)),
          declared_eigenbasis(std::move(basis)) {
        if (!matrix.is_hermitian(tol_herm))
            throw ValidationError("Observable: matrix not Hermitian");
        if (declared_eigenbasis) {
            const ComplexMatrix& b = declared_eigenbasis->basis;
            const std::size_t n = matrix.rows();
            if (b.rows() != n || b.cols() != n)
                throw DimensionError("Observable: declared basis shape mismatch");
            if ((b.adjoint() * b - ComplexMatrix::identity(n)).max_abs() > tol_herm)
                throw ValidationError("Observable: declared basis not orthonormal");
            const ComplexMatrix d = b.adjoint() * matrix * b;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j && std::abs(d(i, j)) > tol_herm)
                        throw ValidationError(
                            "Observable: declared basis does not diagonalize matrix");
        }
    }
};

inline ComplexMatrix pauli_matrix(char p) {
    ComplexMatrix m(2, 2);
    switch (p) {
        case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'Y': m(0, 1) = cplx{0.0, -1.0}; m(1, 0) = cplx{0.0, 1.0}; break;
        case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw ParseError(std::string("unknown Pauli letter '") + p + "'");
    }
    return m;
}

// Local eigenbasis used for the declared product basis of a Pauli string;
// the identity letter defaults to the computational basis.
inline ComplexMatrix pauli_eigenbasis(char p) {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix b(2, 2);
    switch (p) {
        case 'I':
        case 'Z': b(0, 0) = 1.0; b(1, 1) = 1.0; break;
        case 'X': b(0, 0) = r; b(1, 0) = r; b(0, 1) = r; b(1, 1) = -r; break;
        case 'Y':
            b(0, 0) = r;
            b(1, 0) = cplx{0.0, r};
            b(0, 1) = r;
            b(1, 1) = cplx{0.0, -r};
            break;
        default: throw ParseError(std::string("unknown Pauli letter '") + p + "'");
    }
    return b;
}

// Parse a Pauli string over {I,X,Y,Z}, one letter per qubit, first letter =
// slow tensor factor. Carries its product eigenbasis as declared metadata.
inline Observable pauli_observable(const std::string& s) {
    if (s.empty()) throw ParseError("empty Pauli string");
    ComplexMatrix m = pauli_matrix(s[0]);
    ComplexMatrix b = pauli_eigenbasis(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) {
        m = kron(m, pauli_matrix(s[i]));
        b = kron(b, pauli_eigenbasis(s[i]));
    }
    return Observable(std::move(m), s, DeclaredBasis{std::move(b), true});
}

inline double expectation(const DensityMatrix& rho, const Observable& a) {
    if (rho.dim() != a.matrix.rows())
        throw DimensionError("expectation: dims mismatch");
    cplx t = 0.0;
    const std::size_t n = rho.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) t += rho.matrix()(i, k) * a.matrix(k, i);
    if (std::abs(t.imag()) > 1e-6)
        throw ValidationError("expectation: imaginary residue exceeds 1e-6");
    return t.real();
}

inline ComplexMatrix commutator(const Observable& a, const Observable& b) {
    if (a.matrix.rows() != b.matrix.rows())
        throw DimensionError("commutator: dims mismatch");
    return a.matrix * b.matrix - b.matrix * a.matrix;
}

inline bool commutes(const Observable& a, const Observable& b, double tol = 1e-9) {
    return commutator(a, b).max_abs() <= tol;
}

struct SpectralProjector {
    double outcome;
    ComplexMatrix projector;
    std::size_t multiplicity;
};

inline std::vector<SpectralProjector> spectral_projectors(const Observable& a) {
    const EigenSystem es = hermitian_eigs(a.matrix);
    const std::size_t n = a.matrix.rows();
    const double width = es.values.back() - es.values.front();
    const double gap_tol = tol_degenerate * std::max(width, 1.0);

    std::vector<SpectralProjector> out;
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && es.values[stop] - es.values[stop - 1] <= gap_tol) ++stop;
        double mean = 0.0;
        for (std::size_t k = start; k < stop; ++k) mean += es.values[k];
        mean /= static_cast<double>(stop - start);
        ComplexMatrix p(n, n);
        for (std::size_t k = start; k < stop; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    p(i, j) += es.vectors(i, k) * std::conj(es.vectors(j, k));
        out.push_back({mean, std::move(p), stop - start});
        start = stop;
    }
    return out;
}

// Probabilities Tr(rho P_k) for the distinct outcomes of A, clipped to [0,1].
inline std::map<double, double> born_distribution(const DensityMatrix& rho,
                                                  const Observable& a) {
    if (rho.dim() != a.matrix.rows())
        throw DimensionError("born_distribution: dims mismatch");
    std::map<double, double> dist;
    double total = 0.0;
    for (const auto& sp : spectral_projectors(a)) {
        cplx t = 0.0;
        for (std::size_t i = 0; i < rho.dim(); ++i)
            for (std::size_t k = 0; k < rho.dim(); ++k)
                t += rho.matrix()(i, k) * sp.projector(k, i);
        double p = t.real();
        if (p < -tol_state)
            throw ValidationError("born_distribution: negative probability");
        p = std::min(std::max(p, 0.0), 1.0);
        dist[sp.outcome] = p;
        total += p;
    }
    if (std::abs(total - 1.0) > tol_state)
        throw ValidationError("born_distribution: probabilities do not sum to 1");
    return dist;
}

// Probabilities of the |b_k>-outcomes when measuring in an orthonormal basis
// given by the columns of `basis`. Exact zeros stay exact.
inline std::vector<double> basis_probabilities(const DensityMatrix& rho,
                                               const ComplexMatrix& basis) {
    const std::size_t n = rho.dim();
    if (basis.rows() != n || basis.cols() != n)
        throw DimensionError("basis_probabilities: basis shape mismatch");
    std::vector<double> probs(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx p = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p += std::conj(basis(i, k)) * rho.matrix()(i, j) * basis(j, k);
        probs[k] = std::min(std::max(p.real(), 0.0), 1.0);
    }
    return probs;
}

// Multinomial draw; deterministic for a fixed (seed, stream) pair.
inline std::vector<long long> sample_multinomial(const std::vector<double>& probs,
                                                 long long shots,
                                                 std::uint64_t seed,
                                                 std::uint64_t stream = 0) {
    if (shots < 1) throw ValidationError("sample_multinomial: shots < 1");
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    std::vector<long long> counts(probs.size(), 0);
    PhiloxStream rng(seed, stream);
    for (long long s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        std::size_t k = 0;
        while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
        // Never land on an exactly-zero outcome.
        while (probs[k] == 0.0 && k > 0) --k;
        while (probs[k] == 0.0 && k + 1 < probs.size()) ++k;
        ++counts[k];
    }
    return counts;
}

inline std::map<double, long long> sample_outcomes(const DensityMatrix& rho,
                                                   const Observable& a,
                                                   long long shots,
                                                   std::uint64_t seed) {
    const auto dist = born_distribution(rho, a);
    std::vector<double> outcomes, probs;
    for (const auto& [outcome, p] : dist) {
        outcomes.push_back(outcome);
        probs.push_back(p);
    }
    const auto counts = sample_multinomial(probs, shots, seed);
    std::map<double, long long> out;
    for (std::size_t k = 0; k < outcomes.size(); ++k) out[outcomes[k]] = counts[k];
    return out;
}

// ---------------------------------------------------------------------------
// Common product eigenbasis analysis.

enum class BasisKind { ProductBasis, None, Unknown };

struct ProductBasisResult {
    BasisKind kind;
    std::optional<ComplexMatrix> basis; // set iff kind == ProductBasis
    std::string reason;
};

namespace detail {

// Largest eigenvalue of the reduced state of a normalized bipartite vector;
// ~1 iff the vector is a product state.
inline bool is_product_vector(const std::vector<cplx>& v, const DimsSpec& dims,
                              double tol = 1e-7) {
    const std::size_t da = dims[0], db = dims[1];
    ComplexMatrix red(da, da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < da; ++k) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < db; ++j)
                s += v[i * db + j] * std::conj(v[k * db + j]);
            red(i, k) = s;
        }
    return hermitian_eigs(red).values.back() >= 1.0 - tol;
}

} // namespace detail

// Decide whether the family admits a product eigenbasis:
//   1. any non-commuting pair -> None;
//   2. a declared product basis diagonalizing every observable -> ProductBasis;
//   3. simultaneous diagonalization; if all joint eigenspaces are
//      one-dimensional, answer by a Schmidt-rank test on each joint vector;
//   4. remaining joint degeneracy -> Unknown.
inline ProductBasisResult common_product_eigenbasis(
    const std::vector<Observable>& observables, const DimsSpec& dims) {
    if (dims.size() != 2)
        return {BasisKind::Unknown, std::nullopt,
                "basis analysis supports bipartite dims only"};
    const std::size_t n = dims.total();
    for (const auto& a : observables)
        if (a.matrix.rows() != n)
            throw DimensionError("common_product_eigenbasis: observable dims mismatch");
    if (observables.empty())
        return {BasisKind::ProductBasis, ComplexMatrix::identity(n),
                "no observables; computational basis"};

    for (std::size_t i = 0; i < observables.size(); ++i)
        for (std::size_t j = i + 1; j < observables.size(); ++j)
            if (!commutes(observables[i], observables[j]))
                return {BasisKind::None, std::nullopt,
                        "non-commuting pair: " + observables[i].label + ", " +
                            observables[j].label};

    // A declared product basis that diagonalizes the whole family settles it.
    for (const auto& a : observables) {
        if (!a.declared_eigenbasis || !a.declared_eigenbasis->product) continue;
        const ComplexMatrix& b = a.declared_eigenbasis->basis;
        bool all = true;
        for (const auto& other : observables) {
            const ComplexMatrix d = b.adjoint() * other.matrix * b;
            for (std::size_t i = 0; i < n && all; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j && std::abs(d(i, j)) > 1e-9) {
                        all = false;
                        break;
                    }
            if (!all) break;
        }
        if (all) return {BasisKind::ProductBasis, b, "declared product basis"};
    }

    // Simultaneous diagonalization: refine invariant blocks observable by
    // observable.
    std::vector<ComplexMatrix> blocks{ComplexMatrix::identity(n)};
    for (const auto& a : observables) {
        std::vector<ComplexMatrix> next;
        for (const auto& blk : blocks) {
            const std::size_t k = blk.cols();
            if (k == 1) {
                next.push_back(blk);
                continue;
            }
            const ComplexMatrix h = blk.adjoint() * a.matrix * blk;
            const EigenSystem es = hermitian_eigs((h + h.adjoint()) * cplx{0.5, 0.0});
            const double width = es.values.back() - es.values.front();
            const double gap_tol = tol_degenerate * std::max(width, 1.0);
            std::size_t start = 0;
            while (start < k) {
                std::size_t stop = start + 1;
                while (stop < k && es.values[stop] - es.values[stop - 1] <= gap_tol)
                    ++stop;
                ComplexMatrix sub(n, stop - start);
                for (std::size_t c = start; c < stop; ++c)
                    for (std::size_t r = 0; r < n; ++r) {
                        cplx z = 0.0;
                        for (std::size_t m2 = 0; m2 < k; ++m2)
                            z += blk(r, m2) * es.vectors(m2, c);
                        sub(r, c - start) = z;
                    }
                next.push_back(std::move(sub));
                start = stop;
            }
        }
        blocks = std::move(next);
    }

    for (const auto& blk : blocks)
        if (blk.cols() > 1)
            return {BasisKind::Unknown, std::nullopt,
                    "joint eigenspaces remain degenerate"};

    ComplexMatrix joint(n, n);
    std::size_t col = 0;
    for (const auto& blk : blocks) {
        std::vector<cplx> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = blk(r, 0);
        if (!detail::is_product_vector(v, dims))
            return {BasisKind::None, std::nullopt,
                    "joint eigenbasis contains entangled vectors"};
        for (std::size_t r = 0; r < n; ++r) joint(r, col) = v[r];
        ++col;
    }
    return {BasisKind::ProductBasis, joint, "joint eigenbasis is a product basis"};
}

} // namespace entq
