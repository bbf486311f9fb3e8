#pragma once

// Toral automorphisms and affine maps of T^n = R^n / Z^n: certified
// hyperbolicity classification and fixed-point enumeration.

#include "torsym/integer_matrix.hpp"
#include "torsym/rational.hpp"

#include <string>
#include <vector>

namespace torsym {

struct HyperbolicityReport {
    enum class Kind { anosov, partially_hyperbolic, no_expansion };
    int stable_dim = 0;    // eigenvalues with |l| < 1, with multiplicity
    int unstable_dim = 0;  // |l| > 1
    int center_dim = 0;    // |l| = 1
    Kind classification = Kind::no_expansion;

    bool is_anosov() const { return classification == Kind::anosov; }
    std::string kind_name() const;
};

// Exact eigenvalue-modulus census of B in GL(n,Z). The unit-circle count
// never depends on floating point; throws SemanticError when det != +-1.
HyperbolicityReport classify_hyperbolicity(const IntegerMatrix& b);

// An affine torus map x -> Bx + c (mod 1) with B in GL(n,Z).
class AffineMap {
  public:
    explicit AffineMap(IntegerMatrix linear, std::vector<Rat> translation = {});

    std::size_t dim() const { return linear_.dim(); }
    const IntegerMatrix& linear() const { return linear_; }
    const std::vector<Rat>& translation() const { return translation_; }
    bool is_linear() const;
    bool is_translation() const { return linear_.is_identity(); }

    AffineMap compose(const AffineMap& o) const; // (*this)(o(x))
    AffineMap inverse() const;
    AffineMap pow(long e) const;
    std::vector<Rat> apply(const std::vector<Rat>& x) const;
    bool commutes_with(const AffineMap& o) const;

    bool operator==(const AffineMap& o) const;
    bool operator!=(const AffineMap& o) const { return !(*this == o); }

    std::string str() const;

  private:
    IntegerMatrix linear_;
    std::vector<Rat> translation_; // entries reduced to [0,1)
};

// Reduce a rational vector componentwise into [0,1)^n.
std::vector<Rat> mod1(std::vector<Rat> x);

struct FixedPointSet {
    bool finite = true;
    // Canonical representatives in [0,1)^n, sorted lexicographically;
    // meaningful only when finite.
    std::vector<std::vector<Rat>> points;
};

// All fixed points of R on the torus, enumerated through the Smith normal
// form of B - I. Finite with |det(B-I)| points when det(B-I) != 0;
// infinite-flag when the degenerate system is solvable; finite and empty
// when it is not.
FixedPointSet fixed_points(const AffineMap& r);

} // namespace torsym
