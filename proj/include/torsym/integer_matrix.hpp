#pragma once

// Square integer matrices: GL(n,Z) arithmetic, exact characteristic
// polynomials, Smith normal form, and seeded random unimodular matrices
// for tests.

#include "torsym/linalg.hpp"
#include "torsym/poly.hpp"
#include "torsym/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace torsym {

class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    explicit IntegerMatrix(std::size_t n) : n_(n), a_(n * n, Int(0)) {}
    IntegerMatrix(std::size_t n, std::vector<Int> entries);
    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t dim() const { return n_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool operator==(const IntegerMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }
    bool is_identity() const;

    IntegerMatrix operator*(const IntegerMatrix& o) const;
    IntegerMatrix operator-() const;
    IntegerMatrix transpose() const;
    IntegerMatrix pow(long e) const; // negative powers require det = +-1

    Int det() const; // fraction-free Bareiss
    bool is_unimodular() const;
    IntegerMatrix inverse_unimodular() const;

    // Monic integer characteristic polynomial det(xI - B), exact
    // (Faddeev-LeVerrier).
    QPoly characteristic_polynomial() const;

    QMat to_rational() const;
    std::vector<Rat> apply(const std::vector<Rat>& x) const;

    // Max |entry|, for search heuristics.
    Int max_abs_entry() const;

    std::string str() const;

  private:
    QMat solve_inverse() const;

    std::size_t n_ = 0;
    std::vector<Int> a_;
};

struct SmithForm {
    IntegerMatrix u, d, v; // u * m * v = d
};

// Smith normal form with unimodular transforms: diagonal d with
// d_i >= 0 and d_i | d_{i+1}.
SmithForm smith_normal_form(const IntegerMatrix& m);

// Seeded random element of GL(n,Z) built from bounded elementary row
// operations (reproducible across runs).
IntegerMatrix random_gl(std::size_t n, std::mt19937_64& rng, int ops = 12, long coeff_bound = 3);

} // namespace torsym
