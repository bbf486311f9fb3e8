#include "torsym/integer_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace torsym {

IntegerMatrix::IntegerMatrix(std::size_t n, std::vector<Int> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw std::invalid_argument("entry count must be n*n");
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t n = rows.size();
    IntegerMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool IntegerMatrix::is_identity() const { return *this == identity(n_); }

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("matrix product dimension mismatch");
    IntegerMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const Int& v = (*this)(i, k);
            if (sign(v) == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

IntegerMatrix IntegerMatrix::operator-() const {
    IntegerMatrix r = *this;
    for (Int& x : r.a_) x = -x;
    return r;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

IntegerMatrix IntegerMatrix::pow(long e) const {
    if (e < 0) return inverse_unimodular().pow(-e);
    IntegerMatrix acc = identity(n_), base = *this;
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) acc = acc * base;
        base = base * base;
        u >>= 1;
    }
    return acc;
}

Int IntegerMatrix::det() const {
    if (n_ == 0) return Int(1);
    // Bareiss fraction-free elimination.
    std::vector<Int> a = a_;
    auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * n_ + j]; };
    Int prev(1);
    int sign_flip = 1;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
        if (sign(at(k, k)) == 0) {
            std::size_t piv = k + 1;
            while (piv < n_ && sign(at(piv, k)) == 0) ++piv;
            if (piv == n_) return Int(0);
            for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(piv, j));
            sign_flip = -sign_flip;
        }
        for (std::size_t i = k + 1; i < n_; ++i)
            for (std::size_t j = k + 1; j < n_; ++j) {
                Int num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = at(k, k);
    }
    return sign_flip > 0 ? at(n_ - 1, n_ - 1) : Int(-at(n_ - 1, n_ - 1));
}

bool IntegerMatrix::is_unimodular() const {
    Int d = det();
    return d == 1 || d == -1;
}

IntegerMatrix IntegerMatrix::inverse_unimodular() const {
    Int d = det();
    if (d != 1 && d != -1) throw std::domain_error("matrix is not in GL(n,Z)");
    auto inv = solve_inverse();
    IntegerMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            const Rat& v = inv(i, j);
            if (!is_integer(v)) throw std::logic_error("unimodular inverse not integral");
            r(i, j) = v.get_num();
        }
    return r;
}

QMat IntegerMatrix::to_rational() const {
    QMat m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = Rat((*this)(i, j));
    return m;
}

std::vector<Rat> IntegerMatrix::apply(const std::vector<Rat>& x) const {
    if (x.size() != n_) throw std::invalid_argument("apply dimension mismatch");
    std::vector<Rat> y(n_, Rat(0));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) y[i] += Rat((*this)(i, j)) * x[j];
    return y;
}

QPoly IntegerMatrix::characteristic_polynomial() const {
    // Faddeev-LeVerrier; the divisions by k are exact over Z.
    std::size_t n = n_;
    std::vector<Rat> coeffs(n + 1, Rat(0));
    coeffs[n] = Rat(1);
    IntegerMatrix m(n);
    Int c(1);
    IntegerMatrix mk = *this;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            IntegerMatrix shifted = m;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c;
            mk = *this * shifted;
        }
        Int tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
        Int ck;
        mpz_divexact_ui(ck.get_mpz_t(), Int(-tr).get_mpz_t(), static_cast<unsigned long>(k));
        coeffs[n - k] = Rat(ck);
        m = mk;
        c = ck;
    }
    return QPoly(std::move(coeffs));
}

Int IntegerMatrix::max_abs_entry() const {
    Int m(0);
    for (const Int& x : a_)
        if (abs(x) > m) m = abs(x);
    return m;
}

std::string IntegerMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < n_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < n_; ++j) {
            if (j) os << " ";
            os << (*this)(i, j).get_str();
        }
    }
    os << "]";
    return os.str();
}

QMat IntegerMatrix::solve_inverse() const {
    QMat aug(n_, 2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) aug(i, j) = Rat((*this)(i, j));
        aug(i, n_ + i) = Rat(1);
    }
    auto pivots = rref(aug);
    if (pivots.size() != n_) throw std::domain_error("matrix not invertible");
    QMat inv(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) inv(i, j) = aug(i, n_ + j);
    return inv;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
    std::size_t n = m.dim();
    IntegerMatrix d = m, u = IntegerMatrix::identity(n), v = IntegerMatrix::identity(n);

    auto row_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(d(a, j), d(b, j));
            std::swap(u(a, j), u(b, j));
        }
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(d(i, a), d(i, b));
            std::swap(v(i, a), v(i, b));
        }
    };
    auto row_addmul = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < n; ++j) {
            d(dst, j) += f * d(src, j);
            u(dst, j) += f * u(src, j);
        }
    };
    auto col_addmul = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < n; ++i) {
            d(i, dst) += f * d(i, src);
            v(i, dst) += f * v(i, src);
        }
    };
    auto row_negate = [&](std::size_t r) {
        for (std::size_t j = 0; j < n; ++j) {
            d(r, j) = -d(r, j);
            u(r, j) = -u(r, j);
        }
    };

    for (std::size_t t = 0; t < n; ++t) {
        // Find a nonzero pivot in the trailing block with minimal |value|.
        for (;;) {
            std::size_t pi = t, pj = t;
            bool found = false;
            Int best(0);
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (sign(d(i, j)) == 0) continue;
                    if (!found || abs(d(i, j)) < best) {
                        found = true;
                        best = abs(d(i, j));
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) break; // trailing block is zero
            if (pi != t) row_swap(pi, t);
            if (pj != t) col_swap(pj, t);
            if (sign(d(t, t)) < 0) row_negate(t);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (sign(d(i, t)) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                row_addmul(i, t, -q);
                if (sign(d(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sign(d(t, j)) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                col_addmul(j, t, -q);
                if (sign(d(t, j)) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot divides the rest of the block? If not, fold an offender
            // into column t and continue reducing.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < n && divides_all; ++i)
                for (std::size_t j = t + 1; j < n && divides_all; ++j)
                    if (sign(Int(d(i, j) % d(t, t))) != 0) {
                        row_addmul(t, i, Int(1));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
    }

    return {u, d, v};
}

IntegerMatrix random_gl(std::size_t n, std::mt19937_64& rng, int ops, long coeff_bound) {
    IntegerMatrix m = IntegerMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> kind(0, 3);
    for (int t = 0; t < ops; ++t) {
        std::size_t i = idx(rng), j = idx(rng);
        switch (kind(rng)) {
            case 0: { // row_i += c * row_j
                if (i == j) break;
                long c = coeff(rng);
                for (std::size_t k = 0; k < n; ++k) m(i, k) += Int(c) * m(j, k);
                break;
            }
            case 1: { // col_i += c * col_j
                if (i == j) break;
                long c = coeff(rng);
                for (std::size_t k = 0; k < n; ++k) m(k, i) += Int(c) * m(k, j);
                break;
            }
            case 2: { // swap rows, flip one sign
                if (i == j) break;
                for (std::size_t k = 0; k < n; ++k) std::swap(m(i, k), m(j, k));
                for (std::size_t k = 0; k < n; ++k) m(i, k) = -m(i, k);
                break;
            }
            default: { // negate a row
                for (std::size_t k = 0; k < n; ++k) m(i, k) = -m(i, k);
                break;
            }
        }
    }
    return m;
}

} // namespace torsym
