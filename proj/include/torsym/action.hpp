#pragma once

// Z^d actions by commuting affine toral maps: structural verification
// (Anosov element, irreducible element, rank), the common-fixed-point
// linearization procedure, exact eigenvalue-modulus spectra, and the
// Koch-classification pipeline for an invariant constant flow.

#include "torsym/flow.hpp"
#include "torsym/integer_matrix.hpp"
#include "torsym/symmetry.hpp"
#include "torsym/toral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsym {

struct ZdActionSpec {
    std::vector<AffineMap> generators;

    std::size_t rank() const { return generators.size(); }
    std::size_t dim() const { return generators.empty() ? 0 : generators.front().dim(); }

    // Indices of the first non-commuting pair, if any.
    std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair() const;
};

struct GeneratorWord {
    std::vector<long> exponents; // word = prod gen_i^{e_i}
    AffineMap map;
};

struct RankCertificate {
    enum class Kind { certified_free_abelian, numeric_rank, inconclusive };
    Kind kind = Kind::inconclusive;
    int word_bound = 0;   // bound used for the relation scan
    int numeric_rank = 0; // rank of the log-modulus matrix at tol 1e-9
    std::optional<std::vector<long>> relation_word; // word acting as the identity

    std::string kind_name() const;
};

struct ActionReport {
    bool commuting = false;
    std::optional<GeneratorWord> anosov_element;
    std::optional<GeneratorWord> irreducible_element;
    RankCertificate rank_certificate;
    bool higher_rank = false;
    int word_bound = 0;
};

// Exact commutativity and bounded word search; throws ActionStructureError
// on non-commuting generators.
ActionReport verify_action(const ZdActionSpec& spec, int word_bound = 3, unsigned threads = 1);

struct LinearizationResult {
    GeneratorWord anosov_used;
    std::vector<std::vector<Rat>> fixed_set;  // of the Anosov element
    std::vector<Rat> base_point;              // f_1: lexicographically least
    std::vector<long> exponents;              // r_i: orbit length of f_1 under generator i
    AffineMap conjugator;                     // translation by -f_1
    std::vector<IntegerMatrix> algebraic_generators; // conjugated r_i-th powers
};

// The common-fixed-point procedure: enumerate the Anosov element's fixed
// set, check every generator permutes it, and conjugate the r_i-th powers
// by the translation moving f_1 to the origin; those powers become linear.
LinearizationResult common_fixed_point(const ZdActionSpec& spec, int word_bound = 3);

struct SpectrumEntry {
    double log_modulus = 0.0;
    std::string log_modulus_str; // 30 significant digits
    int multiplicity = 0;
};

// Eigenvalue log-moduli of B grouped exactly, emitted in decreasing order;
// multiplicities sum to n.
std::vector<SpectrumEntry> oseledets_spectrum(const IntegerMatrix& b);

// True iff mu is a simple eigenvalue of B and no other eigenvalue shares
// the modulus |mu| (exact circle count at radius |mu|). Throws
// SemanticError when mu is not an eigenvalue of B.
bool multiplicity_one_check(const IntegerMatrix& b, const FieldElement& mu);

struct EigenvectorFlow {
    FieldPtr field;      // Q[x]/(charpoly B) at the designated root
    FrequencyVector flow; // eigenvector, first nonzero coordinate normalized to 1
};

// Solves (B - lambda I) v = 0 over Q[x]/(charpoly B); requires the
// characteristic polynomial to be irreducible. The designated eigenvalue
// is the largest real root unless a root_hint interval selects another.
EigenvectorFlow eigenvector_field(const IntegerMatrix& b,
                                  std::optional<Interval> root_hint = {});

struct FlowClassificationReport {
    struct Clause {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Clause> clauses;
    bool all_pass = false;
    std::optional<MultiplierRecord> anosov_record;
    std::optional<GeneratorWord> anosov_element;
    std::optional<GeneratorWord> irreducible_element;
    std::optional<KochClassification> koch;

    const Clause* failed_clause() const;
};

// Hypothesis checklist for the invariant-flow classification: multipliers
// defined for every generator, an Anosov element, multiplicity one at its
// multiplier, an irreducible element whose designated eigenvector is
// parallel to the flow, and the final Koch verdict for the flow itself.
FlowClassificationReport classify_invariant_flow(const ZdActionSpec& spec,
                                                 const FrequencyVector& d, int word_bound = 3,
                                                 unsigned threads = 1);

} // namespace torsym
