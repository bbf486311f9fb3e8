#pragma once

// Dense exact linear algebra over a field K (rationals or algebraic field
// elements): elimination, solving, nullspaces, determinants. Sized for the
// small systems this library meets (n <= ~16).

#include "torsym/poly.hpp"
#include "torsym/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace torsym {

template <class K>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, K fill = K(0))
        : r_(rows), c_(cols), a_(rows * cols, std::move(fill)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    K& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
        Mat out(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const K& v = (*this)(i, k);
                if (coeff_is_zero(v)) continue;
                for (std::size_t j = 0; j < o.c_; ++j) out(i, j) = out(i, j) + v * o(k, j);
            }
        return out;
    }

    std::vector<K> apply(const std::vector<K>& x) const {
        if (x.size() != c_) throw std::invalid_argument("matrix apply shape mismatch");
        std::vector<K> y(r_, K(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) y[i] = y[i] + (*this)(i, j) * x[j];
        return y;
    }

  private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<K> a_;
};

using QMat = Mat<Rat>;

// In-place reduction to reduced row echelon form; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Mat<K>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && coeff_is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        K inv = K(1) / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || coeff_is_zero(m(i, col))) continue;
            K f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
std::size_t rank(Mat<K> m) {
    return rref(m).size();
}

template <class K>
K determinant(Mat<K> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    K det(1);
    std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && coeff_is_zero(m(piv, col))) ++piv;
        if (piv == n) return K(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det = det * m(col, col);
        K inv = K(1) / m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (coeff_is_zero(m(i, col))) continue;
            K f = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    return det;
}

// Solves A x = b exactly; nullopt when inconsistent. For underdetermined
// systems returns the solution with free variables set to zero.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& a, const std::vector<K>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve shape mismatch");
    Mat<K> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt; // pivot in RHS
    std::vector<K> x(a.cols(), K(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

// Basis of the right nullspace { x : A x = 0 }, one vector per free column,
// in increasing free-column order (deterministic standard form).
template <class K>
std::vector<std::vector<K>> nullspace(Mat<K> a) {
    std::size_t n = a.cols();
    auto pivots = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(n, K(0));
        v[free] = K(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Clears denominators and content; sign-normalizes so the first nonzero
// entry is positive. Input must be nonzero.
std::vector<Int> primitive_integer_vector(const std::vector<Rat>& v);

// Basis of the integer relation lattice { k : sum_i k_i v_i = 0 } for
// rational vectors v_i (all the same length), as primitive integer vectors.
// Empty iff the v_i are linearly independent over Q.
std::vector<std::vector<Int>> integer_relation_basis(const std::vector<std::vector<Rat>>& vectors);

// Resultant of two rational polynomials via the Sylvester matrix.
Rat resultant(const QPoly& p, const QPoly& q);

} // namespace torsym
