// matrix.hpp
// Dense complex matrices, tensor (Kronecker) products, partial trace and
// partial transpose. Everything here is a pure value type; operators in this
// library are square and small (side length <= 16).

#pragma once

#include "entq/errors.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace entq {

using cplx = std::complex<double>;

// Ordered subsystem dimensions of a tensor-product space.
// Subsystem 0 is the slow (left) tensor factor.
struct DimsSpec {
    std::vector<std::size_t> dims;

    DimsSpec() = default;
    DimsSpec(std::initializer_list<std::size_t> d) : dims(d) {}
    explicit DimsSpec(std::vector<std::size_t> d) : dims(std::move(d)) {}

    std::size_t total() const {
        return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                               std::multiplies<>());
    }
    std::size_t size() const { return dims.size(); }
    std::size_t operator[](std::size_t i) const { return dims[i]; }

    bool operator==(const DimsSpec& o) const { return dims == o.dims; }
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diag(const std::vector<double>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    bool is_finite() const {
        for (const auto& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    bool is_hermitian(double tol) const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
                    return false;
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
        a += b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
        a -= b;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
        a *= s;
        return a;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionError("matrix product: inner dimensions differ");
        ComplexMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// Kronecker product; the first factor is the slow (block) index.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.rows(); ++j)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + j, k * b.cols() + l) = aik * b(j, l);
        }
    return c;
}

namespace detail {

inline void check_dims(const ComplexMatrix& m, const DimsSpec& dims) {
    if (m.rows() != m.cols()) throw DimensionError("operator must be square");
    if (dims.total() != m.rows())
        throw DimensionError("DimsSpec product does not match matrix side length");
}

// Unravel flat index into per-subsystem indices (subsystem 0 slowest).
inline void unravel(std::size_t idx, const DimsSpec& dims,
                    std::vector<std::size_t>& out) {
    out.resize(dims.size());
    for (std::size_t s = dims.size(); s-- > 0;) {
        out[s] = idx % dims[s];
        idx /= dims[s];
    }
}

inline std::size_t ravel(const std::vector<std::size_t>& multi, const DimsSpec& dims) {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + multi[s];
    return idx;
}

} // namespace detail

// Reduced operator on the kept subsystems (given in ascending order of
// subsystem index); the discarded factors are summed out.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const DimsSpec& dims,
                                   const std::vector<std::size_t>& keep) {
    detail::check_dims(m, dims);
    for (std::size_t s : keep)
        if (s >= dims.size()) throw DimensionError("keep index out of range");

    std::vector<bool> kept(dims.size(), false);
    for (std::size_t s : keep) kept[s] = true;

    DimsSpec kdims, tdims;
    for (std::size_t s = 0; s < dims.size(); ++s)
        (kept[s] ? kdims : tdims).dims.push_back(dims[s]);

    const std::size_t kn = kdims.total();
    const std::size_t tn = tdims.total();
    ComplexMatrix out(kn, kn);

    std::vector<std::size_t> ki, kj, ti, full(dims.size());
    for (std::size_t i = 0; i < kn; ++i) {
        detail::unravel(i, kdims, ki);
        for (std::size_t j = 0; j < kn; ++j) {
            detail::unravel(j, kdims, kj);
            cplx sum = 0.0;
            for (std::size_t t = 0; t < tn; ++t) {
                detail::unravel(t, tdims, ti);
                std::size_t kc = 0, tc = 0;
                for (std::size_t s = 0; s < dims.size(); ++s)
                    full[s] = kept[s] ? ki[kc++] : ti[tc++];
                const std::size_t row = detail::ravel(full, dims);
                kc = 0;
                tc = 0;
                for (std::size_t s = 0; s < dims.size(); ++s)
                    full[s] = kept[s] ? kj[kc++] : ti[tc++];
                const std::size_t col = detail::ravel(full, dims);
                sum += m(row, col);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

// Transpose with respect to one factor of a bipartite space; involutive.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimsSpec& dims,
                                       std::size_t subsystem) {
    detail::check_dims(m, dims);
    if (dims.size() != 2) throw DimensionError("partial_transpose expects bipartite dims");
    if (subsystem > 1) throw DimensionError("subsystem index out of range");

    const std::size_t da = dims[0], db = dims[1];
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k)
                for (std::size_t l = 0; l < db; ++l) {
                    if (subsystem == 1)
                        out(i * db + l, k * db + j) = m(i * db + j, k * db + l);
                    else
                        out(k * db + j, i * db + l) = m(i * db + j, k * db + l);
                }
    return out;
}

} // namespace entq
