#pragma once

// Multipliers of affine symmetries of constant flows: extraction from a
// map, reconstruction of the integer matrix from a unit multiplier,
// bounded search of the multiplier group, quadratic fundamental units, and
// the irrationality characterization report.

#include "torsym/flow.hpp"
#include "torsym/integer_matrix.hpp"
#include "torsym/number_field.hpp"
#include "torsym/toral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsym {

struct MultiplierRecord {
    FieldElement mu;       // B d = mu d, exactly
    IntegerMatrix matrix;  // B in GL(n,Z)
    QPoly min_poly;
    int degree = 0;        // deg min_poly
    double abs_log = 0.0;  // log |mu|
    std::string abs_log_str;
};

// The multiplier of R on d, when the linear part scales d by a field
// element (translations never matter). Verified on every coordinate.
std::optional<FieldElement> multiplier_of(const AffineMap& r, const FrequencyVector& d);

struct SymmetryBuildResult {
    enum class Status { ok, not_in_module, not_a_unit };
    Status status = Status::ok;
    std::optional<IntegerMatrix> matrix;
    std::optional<Rat> offending_entry; // a non-integral solved coefficient
    std::optional<Int> determinant;     // for not_a_unit

    bool ok() const { return status == Status::ok; }
    std::string status_name() const;
};

// Inverse problem: find B with B d = mu d by solving mu * d_i over the
// Z-module spanned by the components (requires Q-independent components);
// succeeds iff all solved coefficients are integers and det B = +-1.
SymmetryBuildResult symmetry_from_multiplier(const FieldElement& mu, const FrequencyVector& d);

// Bounded enumeration of the multiplier group over the Koch field's power
// basis. Non-Koch flows yield only the trivial records mu = +-1. Results
// are sorted by |log mu|, with the exact coordinate vector as tiebreak.
std::vector<MultiplierRecord> search_multipliers(const FrequencyVector& d, long coeff_bound,
                                                 unsigned threads = 1);

// Fundamental unit of the real quadratic field Q(sqrt(D)) (maximal order),
// computed from the purely periodic continued fraction of a reduced
// quadratic irrational. D must be squarefree and > 1.
FieldElement quadratic_fundamental_unit(long d_value);

struct CharacterizationReport {
    bool irrational = false;
    // Certificate on the irrational side: the relation lattice of the
    // components is trivial, so rows of B - I force B = I.
    bool fixing_nullspace_trivial = false;
    // Witness on the dependent side.
    std::vector<Int> relation;
    KernelWitness witness;
};

CharacterizationReport check_characterization(const FrequencyVector& d);

// Degree window for nontrivial multipliers of minimal flows: mu must be an
// algebraic integer of degree in [2, n]. Requires |mu| != 1 (exactly: mu
// is not +-1, since mu is real); throws SemanticError otherwise.
bool validate_degree_bound(const FieldElement& mu, int n);

// Builds a full record (min poly, degree, logs) for a verified pair.
MultiplierRecord make_record(const FieldElement& mu, IntegerMatrix b);

} // namespace torsym
