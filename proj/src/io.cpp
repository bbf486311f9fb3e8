#include "torsym/io.hpp"

#include "torsym/errors.hpp"

#include <fstream>
#include <sstream>

namespace torsym {

namespace {

Rat json_to_rational(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("expected a rational as an integer or \"p/q\" string");
}

std::vector<Rat> json_to_rational_vector(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    std::vector<Rat> v;
    for (const auto& x : j) v.push_back(json_to_rational(x));
    return v;
}

Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
}

IntegerMatrix json_to_matrix(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty row-major array");
    std::size_t len = j.size(), n = 0;
    while (n * n < len) ++n;
    if (n * n != len) throw SemanticError("matrix entry count is not a perfect square");
    std::vector<Int> entries;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ParseError("matrix entries must be integers");
        entries.emplace_back(static_cast<long>(x.get<long long>()));
    }
    return IntegerMatrix(n, std::move(entries));
}

AffineMap json_to_affine(const Json& j) {
    if (!j.contains("matrix")) throw ParseError("generator needs a \"matrix\"");
    IntegerMatrix m = json_to_matrix(j.at("matrix"));
    std::vector<Rat> c;
    if (j.contains("translation")) {
        c = json_to_rational_vector(j.at("translation"));
        if (c.size() != m.dim()) throw SemanticError("translation length != matrix dimension");
    }
    return AffineMap(std::move(m), std::move(c));
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FlowDocument parse_flow_document(const std::string& text) {
    Json j = parse_document(text);
    if (!j.is_object() || !j.contains("field") || !j.contains("frequencies"))
        throw ParseError("flow document needs \"field\" and \"frequencies\"");
    const Json& fj = j.at("field");
    if (!fj.contains("min_poly") || !fj.at("min_poly").is_array())
        throw ParseError("field needs an integer \"min_poly\" array");
    std::vector<Rat> coeffs;
    for (const auto& c : fj.at("min_poly")) {
        if (!c.is_number_integer()) throw ParseError("min_poly entries must be integers");
        coeffs.emplace_back(Rat(static_cast<long>(c.get<long long>())));
    }
    QPoly poly(std::move(coeffs));
    std::optional<Interval> hint;
    if (fj.contains("root_hint")) {
        auto iv = json_to_rational_vector(fj.at("root_hint"));
        if (iv.size() != 2) throw SemanticError("root_hint must be a pair of rationals");
        hint = Interval(iv[0], iv[1]);
    }
    FieldPtr field;
    try {
        field = NumberField::create(std::move(poly), std::move(hint));
    } catch (const std::invalid_argument& e) {
        throw SemanticError(e.what());
    }

    std::vector<FieldElement> comps;
    for (const auto& cj : j.at("frequencies")) {
        std::vector<Rat> coords = json_to_rational_vector(cj);
        if (coords.size() != static_cast<std::size_t>(field->degree()))
            throw SemanticError("frequency coordinate length != field degree");
        comps.push_back(field->element(std::move(coords)));
    }
    FlowDocument doc{j.value("label", std::string{}), FrequencyVector(std::move(comps))};
    return doc;
}

ActionDocument parse_action_document(const std::string& text) {
    Json j = parse_document(text);
    if (!j.is_object() || !j.contains("generators") || !j.at("generators").is_array() ||
        j.at("generators").empty())
        throw ParseError("action document needs a nonempty \"generators\" array");
    std::vector<AffineMap> gens;
    for (const auto& g : j.at("generators")) gens.push_back(json_to_affine(g));
    for (const auto& g : gens)
        if (g.dim() != gens.front().dim())
            throw SemanticError("generators act on different dimensions");
    int claim = j.value("rank_claim", static_cast<int>(gens.size()));
    if (claim != static_cast<int>(gens.size()))
        throw SemanticError("rank_claim does not match the generator count");
    return {j.value("label", std::string{}), ZdActionSpec{std::move(gens)}, claim};
}

ScanDocument parse_scan_document(const std::string& text) {
    Json j = parse_document(text);
    if (!j.is_object() || !j.contains("frequencies_decimal") ||
        !j.at("frequencies_decimal").is_array())
        throw ParseError("scan document needs a \"frequencies_decimal\" array");
    ScanDocument doc;
    doc.label = j.value("label", std::string{});
    for (const auto& s : j.at("frequencies_decimal")) {
        if (!s.is_string()) throw ParseError("frequencies_decimal entries must be strings");
        doc.decimals.push_back(s.get<std::string>());
        doc.values.push_back(parse_rational(s.get<std::string>()));
    }
    if (doc.values.empty()) throw SemanticError("scan document needs at least one entry");
    return doc;
}

MapDocument parse_map_document(const std::string& text, std::size_t expected_dim) {
    Json j = parse_document(text);
    if (!j.is_object()) throw ParseError("map document must be an object");
    AffineMap base = j.contains("base") ? json_to_affine(j.at("base")) : json_to_affine(j);
    if (base.dim() != expected_dim) throw SemanticError("map dimension != flow dimension");
    MapDocument doc{std::move(base), 0.0, {}};
    if (j.contains("epsilon")) doc.epsilon = j.at("epsilon").get<double>();
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms")) {
            TrigTerm term;
            term.c = t.at("c").get<double>();
            term.k = t.at("k").get<long>();
            term.source = t.at("source").get<std::size_t>();
            term.target = t.at("target").get<std::size_t>();
            doc.terms.push_back(term);
        }
    }
    return doc;
}

// --- JSON builders ----------------------------------------------------------

Json rational_json(const Rat& x) { return format_rational(x); }

Json vector_json(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rational_json(x));
    return a;
}

Json poly_json(const QPoly& p) {
    Json j;
    Json c = Json::array();
    for (const Rat& x : p.coeffs()) c.push_back(rational_json(x));
    j["coeffs"] = std::move(c);
    j["text"] = p.str();
    return j;
}

Json matrix_json(const IntegerMatrix& m) {
    Json j;
    j["dim"] = m.dim();
    Json e = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t k = 0; k < m.dim(); ++k) e.push_back(m(i, k).get_si());
    j["entries"] = std::move(e);
    return j;
}

Json field_json(const FieldPtr& f) {
    Json j;
    j["min_poly"] = poly_json(f->defining_poly());
    Interval iv = f->root_interval();
    j["root_interval"] = Json::array({format_rational(iv.lo), format_rational(iv.hi)});
    j["root_convention"] = f->default_root_convention() ? "largest_real_root" : "hinted";
    j["degree"] = f->degree();
    return j;
}

Json element_json(const FieldElement& e) {
    Json j;
    j["coords"] = vector_json(e.coords());
    j["decimal"] = e.decimal(10);
    return j;
}

Json flow_analysis_json(const FlowDocument& doc, const IrrationalityResult& irr,
                        const KochClassification& koch, const CharacterizationReport& chr) {
    Json j;
    j["label"] = doc.label;
    j["dimension"] = doc.flow.dim();
    j["field"] = field_json(doc.flow.field());
    j["irrational"] = irr.irrational;
    if (!irr.irrational) {
        Json rel = Json::array();
        for (const Int& k : irr.witness_relation) rel.push_back(k.get_si());
        j["relation"] = std::move(rel);
    }
    Json kj;
    kj["koch"] = koch.koch;
    if (koch.koch) {
        kj["field"] = field_json(koch.koch_field);
        kj["scale"] = element_json(*koch.scale);
        kj["note"] = "defining polynomial depends on the normalization convention";
    } else {
        kj["reason"] = koch.reason_name();
        kj["generated_degree"] = koch.generated_degree;
    }
    j["koch"] = std::move(kj);
    Json cj;
    cj["irrational_side"] = chr.irrational;
    if (chr.irrational) {
        cj["fixing_nullspace_trivial"] = chr.fixing_nullspace_trivial;
    } else if (chr.witness.kind == KernelWitness::Kind::matrix) {
        cj["witness_matrix"] = matrix_json(*chr.witness.matrix);
    } else {
        cj["witness"] = "l_equals_n";
    }
    j["characterization"] = std::move(cj);
    return j;
}

namespace {

Json record_json(const MultiplierRecord& r) {
    Json j;
    j["mu"] = element_json(r.mu);
    j["min_poly"] = poly_json(r.min_poly);
    j["degree"] = r.degree;
    j["log_abs"] = r.abs_log_str;
    j["matrix"] = matrix_json(r.matrix);
    j["det"] = r.matrix.det().get_si();
    return j;
}

} // namespace

Json symmetry_search_json(const FlowDocument& doc, long bound,
                          const std::vector<MultiplierRecord>& records) {
    Json j;
    j["label"] = doc.label;
    j["bound"] = bound;
    Json rs = Json::array();
    for (const auto& r : records) rs.push_back(record_json(r));
    j["records"] = std::move(rs);
    j["note"] = "bounded enumeration: evidence for the unit sublattice within the "
                "coefficient box, not a finite-index certification";
    return j;
}

Json action_report_json(const ActionDocument& doc, const ActionReport& rep,
                        const std::optional<LinearizationResult>& lin,
                        const std::optional<FlowClassificationReport>& flow_rep) {
    Json j;
    j["label"] = doc.label;
    j["rank"] = doc.spec.rank();
    j["dimension"] = doc.spec.dim();
    j["commuting"] = rep.commuting;
    j["word_bound"] = rep.word_bound;
    auto word_json = [](const GeneratorWord& w) {
        Json g;
        g["word"] = w.exponents;
        g["matrix"] = matrix_json(w.map.linear());
        return g;
    };
    if (rep.anosov_element) j["anosov_element"] = word_json(*rep.anosov_element);
    else j["anosov_element"] = nullptr;
    if (rep.irreducible_element) j["irreducible_element"] = word_json(*rep.irreducible_element);
    else j["irreducible_element"] = nullptr;
    Json rc;
    rc["kind"] = rep.rank_certificate.kind_name();
    rc["numeric_rank"] = rep.rank_certificate.numeric_rank;
    rc["word_bound"] = rep.rank_certificate.word_bound;
    if (rep.rank_certificate.relation_word) rc["relation_word"] = *rep.rank_certificate.relation_word;
    j["rank_certificate"] = std::move(rc);
    j["higher_rank"] = rep.higher_rank;
    if (lin) {
        Json lj;
        lj["anosov_word"] = lin->anosov_used.exponents;
        lj["fixed_point_count"] = lin->fixed_set.size();
        lj["base_point"] = vector_json(lin->base_point);
        lj["exponents"] = lin->exponents;
        Json gens = Json::array();
        for (const auto& g : lin->algebraic_generators) gens.push_back(matrix_json(g));
        lj["algebraic_generators"] = std::move(gens);
        j["linearization"] = std::move(lj);
    }
    if (flow_rep) {
        Json fj;
        Json clauses = Json::array();
        for (const auto& c : flow_rep->clauses) {
            Json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            cj["detail"] = c.detail;
            clauses.push_back(std::move(cj));
        }
        fj["clauses"] = std::move(clauses);
        fj["all_pass"] = flow_rep->all_pass;
        if (flow_rep->koch && flow_rep->koch->koch) {
            fj["koch_field"] = field_json(flow_rep->koch->koch_field);
        }
        if (flow_rep->anosov_record) fj["anosov_record"] = record_json(*flow_rep->anosov_record);
        j["flow_classification"] = std::move(fj);
    }
    return j;
}

Json lyapunov_report_json(const LyapunovReport& rep) {
    Json j;
    j["exact_target"] = rep.exact_target_str;
    j["exact_target_decimal"] = rep.exact_target;
    Json samples = Json::array();
    for (const auto& s : rep.estimates) {
        Json sj;
        sj["point"] = s.point;
        sj["iterations"] = s.iterations;
        sj["estimate"] = s.estimate;
        sj["tail_max"] = s.tail_max;
        samples.push_back(std::move(sj));
    }
    j["samples"] = std::move(samples);
    j["max_abs_deviation"] = rep.max_abs_deviation;
    return j;
}

Json scan_report_json(const ScanDocument& doc, long bound, const Rat& tol,
                      const std::vector<ScanCandidate>& candidates) {
    Json j;
    j["label"] = doc.label;
    j["entry_bound"] = bound;
    j["tol"] = format_rational(tol);
    j["note"] = "heuristic evidence for numerically specified frequencies";
    Json cs = Json::array();
    for (const auto& c : candidates) {
        Json cj;
        cj["matrix"] = matrix_json(c.matrix);
        cj["mu_decimal"] = c.mu;
        cj["mu_exact_ratio"] = format_rational(c.mu_exact);
        cj["max_residual"] = to_double(c.max_residual);
        cs.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cs);
    return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// --- text renderings ---------------------------------------------------------

namespace {

std::string matrix_text(const IntegerMatrix& m) { return m.str(); }

}  // namespace

std::string flow_analysis_text(const FlowDocument& doc, const IrrationalityResult& irr,
                               const KochClassification& koch, const CharacterizationReport& chr) {
    std::ostringstream os;
    if (!doc.label.empty()) os << "flow: " << doc.label << "\n";
    os << "dimension: " << doc.flow.dim() << "\n";
    os << "field: " << doc.flow.field()->str() << " (root convention: "
       << (doc.flow.field()->default_root_convention() ? "largest real root" : "hinted") << ")\n";
    os << "irrational: " << (irr.irrational ? "yes" : "no") << "\n";
    if (!irr.irrational) {
        os << "relation:";
        for (const Int& k : irr.witness_relation) os << " " << k.get_str();
        os << "\n";
    }
    if (koch.koch) {
        os << "koch: yes, field " << koch.koch_field->defining_poly().str() << " (degree "
           << koch.koch_field->degree() << ")\n";
        os << "scale: " << koch.scale->str() << " ~ " << koch.scale->decimal(10) << "\n";
    } else {
        os << "koch: no (" << koch.reason_name() << ", generated degree "
           << koch.generated_degree << ")\n";
    }
    if (chr.irrational) {
        os << "characterization: irrational side; fixing-matrix nullspace trivial\n";
    } else if (chr.witness.kind == KernelWitness::Kind::matrix) {
        os << "characterization: dependent side; witness " << matrix_text(*chr.witness.matrix)
           << "\n";
    } else {
        os << "characterization: dependent side; full-support relation (l = n), no affine witness\n";
    }
    return os.str();
}

std::string symmetry_search_text(const FlowDocument& doc, long bound,
                                 const std::vector<MultiplierRecord>& records) {
    std::ostringstream os;
    if (!doc.label.empty()) os << "flow: " << doc.label << "\n";
    os << "records (" << records.size() << "):\n";
    for (const auto& r : records) {
        os << "  mu = " << r.mu.str() << " ~ " << r.mu.decimal(10) << "  min_poly "
           << r.min_poly.str() << "  degree " << r.degree << "  log|mu| ~ " << r.abs_log_str
           << "\n    matrix " << matrix_text(r.matrix) << "  det " << r.matrix.det().get_str()
           << "\n";
    }
    os << "search bound " << bound
       << "; bounded enumeration is evidence, not a finite-index certification\n";
    return os.str();
}

std::string action_report_text(const ActionDocument& doc, const ActionReport& rep,
                               const std::optional<LinearizationResult>& lin,
                               const std::optional<FlowClassificationReport>& flow_rep) {
    std::ostringstream os;
    if (!doc.label.empty()) os << "action: " << doc.label << "\n";
    os << "rank " << doc.spec.rank() << " on T^" << doc.spec.dim() << "; commuting: "
       << (rep.commuting ? "yes" : "no") << "\n";
    auto word_line = [&](const char* tag, const std::optional<GeneratorWord>& w) {
        os << tag << ": ";
        if (!w) {
            os << "none within bound " << rep.word_bound << "\n";
            return;
        }
        os << "word (";
        for (std::size_t i = 0; i < w->exponents.size(); ++i)
            os << (i ? "," : "") << w->exponents[i];
        os << ") " << matrix_text(w->map.linear()) << "\n";
    };
    word_line("anosov element", rep.anosov_element);
    word_line("irreducible element", rep.irreducible_element);
    os << "rank certificate: " << rep.rank_certificate.kind_name() << " (numeric rank "
       << rep.rank_certificate.numeric_rank << ", word bound "
       << rep.rank_certificate.word_bound << ")";
    if (rep.rank_certificate.relation_word) {
        os << " relation (";
        const auto& rw = *rep.rank_certificate.relation_word;
        for (std::size_t i = 0; i < rw.size(); ++i) os << (i ? "," : "") << rw[i];
        os << ")";
    }
    os << "\n";
    os << "higher rank: " << (rep.higher_rank ? "yes" : "no") << "\n";
    if (lin) {
        os << "linearization: base point (";
        for (std::size_t i = 0; i < lin->base_point.size(); ++i)
            os << (i ? "," : "") << format_rational(lin->base_point[i]);
        os << "), exponents (";
        for (std::size_t i = 0; i < lin->exponents.size(); ++i)
            os << (i ? "," : "") << lin->exponents[i];
        os << "), " << lin->fixed_set.size() << " fixed points\n";
        for (const auto& g : lin->algebraic_generators)
            os << "  algebraic generator " << matrix_text(g) << "\n";
    }
    if (flow_rep) {
        os << "flow classification checklist:\n";
        for (const auto& c : flow_rep->clauses)
            os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
        if (flow_rep->all_pass && flow_rep->koch && flow_rep->koch->koch)
            os << "verdict: Koch type, degree " << flow_rep->koch->koch_field->degree() << ", field "
               << flow_rep->koch->koch_field->defining_poly().str() << "\n";
        else
            os << "verdict: hypotheses not satisfied\n";
    }
    return os.str();
}

std::string lyapunov_report_text(const LyapunovReport& rep) {
    std::ostringstream os;
    os << "exact target log|mu| = " << rep.exact_target_str << "\n";
    os << "samples:\n";
    for (const auto& s : rep.estimates) {
        os << "  p = (";
        for (std::size_t i = 0; i < s.point.size(); ++i) {
            os << (i ? "," : "");
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", s.point[i]);
            os << buf;
        }
        char est[64], tail[64];
        std::snprintf(est, sizeof(est), "%.12f", s.estimate);
        std::snprintf(tail, sizeof(tail), "%.12f", s.tail_max);
        os << ")  m = " << s.iterations << "  estimate " << est << "  tail max " << tail << "\n";
    }
    char dev[64];
    std::snprintf(dev, sizeof(dev), "%.3e", rep.max_abs_deviation);
    os << "max |estimate - target| = " << dev << "\n";
    return os.str();
}

std::string scan_report_text(const ScanDocument& doc, long bound, const Rat& tol,
                             const std::vector<ScanCandidate>& candidates) {
    std::ostringstream os;
    if (!doc.label.empty()) os << "scan: " << doc.label << "\n";
    os << "entry bound " << bound << ", tol " << format_rational(tol)
       << " (heuristic for numeric input)\n";
    os << "candidates (" << candidates.size() << "):\n";
    for (const auto& c : candidates) {
        char mu[48];
        std::snprintf(mu, sizeof(mu), "%.10g", c.mu);
        os << "  " << matrix_text(c.matrix) << "  mu ~ " << mu << "\n";
    }
    return os.str();
}

} // namespace torsym
