#pragma once

// Real algebraic number fields Q[x]/(f) with a designated real embedding,
// and exact arithmetic on their elements.
//
// An element is a rational coordinate vector over the power basis
// 1, th, ..., th^{n-1} of the designated root th. Elements without an
// attached field are plain rationals; they promote on demand, which lets
// FieldElement serve as the coefficient type of Poly<> and Mat<>.
//
// The designated root is tracked by an isolating rational interval that
// only ever shrinks (nested refinement); every sign decision is exact.

#include "torsym/linalg.hpp"
#include "torsym/poly.hpp"
#include "torsym/rational.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace torsym {

class FieldElement;

class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    // f must be monic and irreducible over Q with at least one real root.
    // root_hint, when given, must isolate exactly one real root of f;
    // otherwise the largest real root is designated (the library's default
    // embedding convention, surfaced in reports).
    static std::shared_ptr<const NumberField> create(QPoly f,
                                                     std::optional<Interval> root_hint = {});

    // Q itself, presented as Q[x]/(x) so rational flows need no special
    // casing downstream.
    static std::shared_ptr<const NumberField> rationals();

    int degree() const { return poly_.degree(); }
    const QPoly& defining_poly() const { return poly_; }
    bool default_root_convention() const { return default_root_; }

    // Current isolating interval (thread-safe snapshot).
    Interval root_interval() const;
    // Shrink the isolating interval to width <= eps and return it.
    Interval refine_root(const Rat& eps) const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rat(const Rat& r) const;
    FieldElement generator() const;                       // the class of x
    FieldElement element(std::vector<Rat> coords) const;  // power-basis coords
    FieldElement from_poly(const QPoly& g) const;         // g(th), reduced mod f

    std::string str() const;

  private:
    NumberField(QPoly f, Interval iv, bool default_root)
        : poly_(std::move(f)), root_(std::move(iv)), default_root_(default_root) {}

    QPoly poly_;
    mutable Interval root_;
    mutable std::mutex mu_;
    bool default_root_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElement {
  public:
    FieldElement() : coords_{Rat(0)} {}
    FieldElement(long v) : coords_{Rat(v)} {}            // NOLINT(google-explicit-constructor)
    FieldElement(const Rat& v) : coords_{v} {}           // NOLINT(google-explicit-constructor)
    FieldElement(FieldPtr field, std::vector<Rat> coords);

    const FieldPtr& field() const { return field_; }
    bool is_rational() const;
    // The rational value; requires is_rational().
    Rat rational_value() const;
    // Power-basis coordinates, padded to the field degree (length 1 when
    // no field is attached).
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_one() const;
    int sign() const;  // exact sign in the designated real embedding

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(long e) const;

    FieldElement operator*(const Rat& s) const;
    FieldElement operator+(const Rat& s) const { return *this + FieldElement(s); }
    FieldElement operator-(const Rat& s) const { return *this - FieldElement(s); }

    bool operator==(const FieldElement& o) const { return (*this - o).is_zero(); }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const { return (*this - o).sign() < 0; }
    bool operator>(const FieldElement& o) const { return (*this - o).sign() > 0; }

    FieldElement abs() const { return sign() < 0 ? -*this : *this; }

    // Enclosure of the real value with width <= eps; enclosures at finer
    // eps nest inside coarser ones.
    Interval enclosure(const Rat& eps) const;
    double to_double() const;
    // Decimal rendering with the given number of significant digits.
    std::string decimal(int significant_digits = 10) const;

    // Matrix of multiplication by this element in the power basis.
    QMat multiplication_matrix() const;

    std::string str() const;

  private:
    friend class NumberField;
    FieldElement promoted(const FieldPtr& f) const;
    static void align(FieldElement& a, FieldElement& b);

    FieldPtr field_;            // null -> plain rational
    std::vector<Rat> coords_;   // length degree(field) or 1
};

inline bool coeff_is_zero(const FieldElement& x) { return x.is_zero(); }
inline int coeff_sign(const FieldElement& x) { return x.sign(); }

// --- exact_algebra operations ------------------------------------------

// True iff p is irreducible over Q (degree >= 1 required).
bool is_irreducible(const QPoly& p);

// Certified isolating intervals for the real roots of p, in increasing
// order (the squarefree part is taken internally).
std::vector<Interval> real_roots(const QPoly& p);

// Monic least-degree rational polynomial annihilating e.
QPoly minimal_polynomial(const FieldElement& e);

bool is_algebraic_integer(const FieldElement& e);

// Field norm: product of all conjugates of e (over the element's field;
// equals det of the multiplication matrix).
Rat norm(const FieldElement& e);

// A unit of the ring of integers: algebraic integer with |norm| = 1.
bool is_unit(const FieldElement& e);

// Exact equality of the real numbers represented by a and b, which may
// live in different fields (or presentations).
bool same_real(const FieldElement& a, const FieldElement& b);

// Evaluate a rational polynomial at a field element.
FieldElement eval_at(const QPoly& p, const FieldElement& e);

// log |e| for nonzero e, from a certified enclosure (MPFR-backed).
double log_abs(const FieldElement& e);
std::string log_abs_decimal(const FieldElement& e, int significant_digits = 30);

} // namespace torsym
