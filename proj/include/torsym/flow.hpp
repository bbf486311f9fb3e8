#pragma once

// Constant vector fields on T^n with exact algebraic frequencies:
// irrationality, Koch-type classification, and the unipotent witness
// matrix for rationally dependent frequencies.

#include "torsym/integer_matrix.hpp"
#include "torsym/number_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsym {

class FrequencyVector {
  public:
    // All components are brought into one common field; at least one must
    // be nonzero.
    explicit FrequencyVector(std::vector<FieldElement> components);

    std::size_t dim() const { return comps_.size(); }
    const std::vector<FieldElement>& components() const { return comps_; }
    const FieldElement& operator[](std::size_t i) const { return comps_[i]; }
    // The common field (rationals field object when all components are
    // plain rationals).
    const FieldPtr& field() const { return field_; }

    // Rational coordinate vectors of the components over the field's
    // power basis.
    std::vector<std::vector<Rat>> coordinate_vectors() const;

    FrequencyVector scaled_by(const FieldElement& c) const;
    std::vector<double> to_doubles() const;
    std::string str() const;

  private:
    FieldPtr field_;
    std::vector<FieldElement> comps_;
};

struct IrrationalityResult {
    bool irrational = false;
    // A primitive integer relation sum k_i d_i = 0 when not irrational.
    std::vector<Int> witness_relation;
};

IrrationalityResult is_irrational(const FrequencyVector& d);

struct KochClassification {
    enum class Reason { none, components_dependent, field_degree_mismatch, zero_component_pattern };

    bool koch = false;
    Reason reason = Reason::none;
    // Normalizer: inverse of the first nonzero component (set when koch).
    std::optional<FieldElement> scale;
    // Scaled components e_i = scale * d_i, in the ambient presentation.
    std::vector<FieldElement> scaled;
    // Degree of the field the scaled components generate.
    int generated_degree = 0;
    // When koch: a degree-n presentation of that field, plus the scaled
    // components' coordinates over its power basis (an invertible n x n
    // matrix; the Q-basis certificate).
    FieldPtr koch_field;
    std::vector<std::vector<Rat>> koch_coords;
    // The primitive element that presents koch_field, kept in the ambient
    // presentation so callers can move between the two.
    std::optional<FieldElement> primitive_element;

    std::string reason_name() const;
};

// Koch-type test: after normalizing by the first nonzero component, do the
// components form a Q-basis of a real algebraic number field of degree n?
// A preferred_presentation field, when supplied, is matched first during
// the primitive-element search (so callers can keep a fixed presentation).
KochClassification koch_classify(const FrequencyVector& d,
                                 const FieldPtr& preferred_presentation = nullptr);

struct KernelWitness {
    enum class Kind { none, matrix, l_equals_n };
    Kind kind = Kind::none;
    std::optional<IntegerMatrix> matrix; // B != I with B d = d, det = +-1
    std::vector<Int> relation;           // full-length relation vector (support = the minimal dependent set)
};

// Lemma-style witness: when the components satisfy an integer relation on
// a proper subset of the coordinates, produces a non-identity B in GL(n,Z)
// fixing d; when the only relations have full support, reports l_equals_n;
// none iff d is irrational.
KernelWitness kernel_witness(const FrequencyVector& d);

} // namespace torsym
