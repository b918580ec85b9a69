#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace telescore {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Tolerance contract used throughout: state/channel validity is checked to
// kValidityTol, algebraic identities to kAlgebraTol.
inline constexpr double kValidityTol = 1e-10;
inline constexpr double kAlgebraTol = 1e-12;

/// Dense row-major complex matrix. Every dimension in this library is <= 8,
/// so clarity wins over any blocked/sparse cleverness.
class CMatrix {
public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument("CMatrix: dimensions must be positive");
        }
    }

    CMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
        rows_ = init.size();
        if (rows_ == 0) throw std::invalid_argument("CMatrix: empty initializer");
        cols_ = init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw std::invalid_argument("CMatrix: ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const Complex& operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    CMatrix operator+(const CMatrix& o) const {
        check_same_shape(o);
        CMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
        return out;
    }

    CMatrix operator-(const CMatrix& o) const {
        check_same_shape(o);
        CMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
        return out;
    }

    CMatrix& operator+=(const CMatrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    CMatrix operator*(const CMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("CMatrix: product shape mismatch");
        CMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex a = (*this)(i, k);
                if (a == Complex(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    out(i, j) += a * o(k, j);
                }
            }
        }
        return out;
    }

    friend CMatrix operator*(Complex s, const CMatrix& m) {
        CMatrix out(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i) out.data_[i] = s * m.data_[i];
        return out;
    }
    friend CMatrix operator*(double s, const CMatrix& m) { return Complex(s, 0.0) * m; }

    CMatrix adjoint() const {
        CMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    Complex trace() const {
        if (rows_ != cols_) throw std::invalid_argument("CMatrix: trace of non-square matrix");
        Complex t(0.0, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Entrywise max-magnitude norm.
    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    bool is_square() const { return rows_ == cols_; }

private:
    void check_same_shape(const CMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("CMatrix: shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

/// Kronecker product; dims multiply.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

// Fixed operator set (single-qubit Pauli basis and identities).
inline const CMatrix& identity2() {
    static const CMatrix m = CMatrix::identity(2);
    return m;
}
inline const CMatrix& pauli_x() {
    static const CMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}
inline const CMatrix& pauli_y() {
    static const CMatrix m{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
    return m;
}
inline const CMatrix& pauli_z() {
    static const CMatrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}

namespace detail {

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
/// `a` is n*n row-major and is destroyed.
inline std::vector<double> jacobi_symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace detail

/// Eigenvalues (ascending) of a Hermitian matrix, via the real 2n x 2n
/// embedding [[X, -Y], [Y, X]] of M = X + iY, whose spectrum is M's doubled.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("hermitian_eigenvalues: non-square matrix");
    const std::size_t n = m.rows();
    std::vector<double> emb(4 * n * n, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return emb[i * 2 * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = m(i, j).real();
            const double y = m(i, j).imag();
            at(i, j) = x;
            at(n + i, n + j) = x;
            at(i, n + j) = -y;
            at(n + i, j) = y;
        }
    }
    std::vector<double> doubled = detail::jacobi_symmetric_eigenvalues(std::move(emb), 2 * n);
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = doubled[2 * i];  // each eigenvalue appears twice
    return eig;
}

/// Density matrix with the validity contract enforced at construction:
/// Hermitian and unit-trace to kValidityTol, smallest eigenvalue >= -kValidityTol.
class QState {
public:
    explicit QState(CMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.is_square()) throw std::invalid_argument("QState: matrix must be square");
        if (max_abs_diff(matrix_, matrix_.adjoint()) > kValidityTol) {
            throw std::invalid_argument("QState: matrix is not Hermitian within tolerance");
        }
        if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kValidityTol) {
            throw std::invalid_argument("QState: trace differs from 1 beyond tolerance");
        }
        const std::vector<double> eig = hermitian_eigenvalues(matrix_);
        if (eig.front() < -kValidityTol) {
            throw std::invalid_argument("QState: negative eigenvalue " +
                                        std::to_string(eig.front()));
        }
    }

    std::size_t dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }

private:
    CMatrix matrix_;
};

/// Maximally mixed state I/d.
inline QState maximally_mixed(std::size_t dim) {
    return QState((1.0 / static_cast<double>(dim)) * CMatrix::identity(dim));
}

/// Reduced density matrix over the subsystems listed in `keep` (0-based,
/// ordered as in `dims`). The product of `dims` must equal the state dimension.
inline QState partial_trace(const QState& s, const std::vector<std::size_t>& keep,
                            const std::vector<std::size_t>& dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    if (total != s.dim()) {
        throw std::invalid_argument("partial_trace: product of dims does not match state dim");
    }
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw std::invalid_argument("partial_trace: keep index out of range");
        if (kept[k]) throw std::invalid_argument("partial_trace: duplicate keep index");
        kept[k] = true;
    }

    std::size_t out_dim = 1;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (kept[i]) out_dim *= dims[i];

    // Decompose a flat index into per-subsystem digits (subsystem 0 is the
    // most significant, matching kron order).
    auto digits_of = [&](std::size_t idx) {
        std::vector<std::size_t> dg(dims.size());
        for (std::size_t i = dims.size(); i-- > 0;) {
            dg[i] = idx % dims[i];
            idx /= dims[i];
        }
        return dg;
    };
    auto kept_index = [&](const std::vector<std::size_t>& dg) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < dims.size(); ++i)
            if (kept[i]) idx = idx * dims[i] + dg[i];
        return idx;
    };

    CMatrix out(out_dim, out_dim);
    for (std::size_t r = 0; r < total; ++r) {
        const auto dr = digits_of(r);
        for (std::size_t c = 0; c < total; ++c) {
            const auto dc = digits_of(c);
            bool traced_match = true;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                if (!kept[i] && dr[i] != dc[i]) {
                    traced_match = false;
                    break;
                }
            }
            if (traced_match) out(kept_index(dr), kept_index(dc)) += s.matrix()(r, c);
        }
    }
    return QState(std::move(out));
}

/// Sum_i K_i rho K_i^dagger for a raw operator list (the completeness-checked
/// wrapper lives in channels.hpp).
inline CMatrix apply_kraus_raw(const CMatrix& rho, const std::vector<CMatrix>& ops) {
    if (ops.empty()) throw std::invalid_argument("apply_kraus: empty operator list");
    CMatrix out(rho.rows(), rho.cols());
    for (const CMatrix& k : ops) {
        if (k.rows() != rho.rows() || k.cols() != rho.cols()) {
            throw std::invalid_argument("apply_kraus: operator dimension mismatch");
        }
        out += k * rho * k.adjoint();
    }
    return out;
}

/// <ket|rho|ket> for a normalized ket; clamped to [0,1] within kValidityTol.
inline double pure_fidelity(const CVector& ket, const QState& s) {
    if (ket.size() != s.dim()) throw std::invalid_argument("pure_fidelity: dimension mismatch");
    double norm2 = 0.0;
    for (const Complex& z : ket) norm2 += std::norm(z);
    if (std::abs(norm2 - 1.0) > kValidityTol) {
        throw std::invalid_argument("pure_fidelity: ket is not normalized");
    }
    Complex v(0.0, 0.0);
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < ket.size(); ++j)
            v += std::conj(ket[i]) * s.matrix()(i, j) * ket[j];
    double f = v.real();
    if (f < 0.0 && f > -kValidityTol) f = 0.0;
    if (f > 1.0 && f < 1.0 + kValidityTol) f = 1.0;
    return f;
}

}  // namespace telescore
