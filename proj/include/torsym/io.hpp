#pragma once

// Document parsing (flows, actions, maps, scan inputs) and report
// rendering, both human-readable text and canonical JSON. Rationals travel
// as "p/q" strings; matrices as row-major integer arrays; every exact
// value keeps its exact form next to any decimal rendering.

#include "torsym/action.hpp"
#include "torsym/flow.hpp"
#include "torsym/numeric.hpp"
#include "torsym/symmetry.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsym {

using Json = nlohmann::ordered_json;

struct FlowDocument {
    std::string label;
    FrequencyVector flow;
};

struct ActionDocument {
    std::string label;
    ZdActionSpec spec;
    int rank_claim = 0;
};

struct ScanDocument {
    std::string label;
    std::vector<Rat> values;
    std::vector<std::string> decimals;
};

// Either a plain affine map or a trigonometric conjugacy around one.
struct MapDocument {
    AffineMap base;
    double epsilon = 0.0;
    std::vector<TrigTerm> terms; // empty: plain affine map
};

FlowDocument parse_flow_document(const std::string& text);
ActionDocument parse_action_document(const std::string& text);
ScanDocument parse_scan_document(const std::string& text);
MapDocument parse_map_document(const std::string& text, std::size_t expected_dim);

std::string read_file(const std::string& path); // throws ParseError when unreadable

// --- JSON builders --------------------------------------------------------

Json rational_json(const Rat& x);
Json vector_json(const std::vector<Rat>& v);
Json poly_json(const QPoly& p);                 // {"coeffs": ["p/q", ...], "text": "..."}
Json matrix_json(const IntegerMatrix& m);       // {"dim": n, "entries": [row-major ints]}
Json field_json(const FieldPtr& f);
Json element_json(const FieldElement& e);       // {"coords": [...], "decimal": "..."}

Json flow_analysis_json(const FlowDocument& doc, const IrrationalityResult& irr,
                        const KochClassification& koch, const CharacterizationReport& chr);
Json symmetry_search_json(const FlowDocument& doc, long bound,
                          const std::vector<MultiplierRecord>& records);
Json action_report_json(const ActionDocument& doc, const ActionReport& rep,
                        const std::optional<LinearizationResult>& lin,
                        const std::optional<FlowClassificationReport>& flow_rep);
Json lyapunov_report_json(const LyapunovReport& rep);
Json scan_report_json(const ScanDocument& doc, long bound, const Rat& tol,
                      const std::vector<ScanCandidate>& candidates);

// Canonical serialization used by the CLI (2-space indent, '\n' at the
// end); parsing and re-dumping a report is byte-identical.
std::string dump_json(const Json& j);

// --- text renderings -------------------------------------------------------

std::string flow_analysis_text(const FlowDocument& doc, const IrrationalityResult& irr,
                               const KochClassification& koch, const CharacterizationReport& chr);
std::string symmetry_search_text(const FlowDocument& doc, long bound,
                                 const std::vector<MultiplierRecord>& records);
std::string action_report_text(const ActionDocument& doc, const ActionReport& rep,
                               const std::optional<LinearizationResult>& lin,
                               const std::optional<FlowClassificationReport>& flow_rep);
std::string lyapunov_report_text(const LyapunovReport& rep);
std::string scan_report_text(const ScanDocument& doc, long bound, const Rat& tol,
                             const std::vector<ScanCandidate>& candidates);

} // namespace torsym
