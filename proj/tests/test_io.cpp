#include "doctest.h"

#include "torsym/errors.hpp"
#include "torsym/io.hpp"

using namespace torsym;

TEST_CASE("flow document parsing") {
    FlowDocument doc = parse_flow_document(R"({
        "label": "golden",
        "field": {"min_poly": [-1, -1, 1]},
        "frequencies": [["1", "0"], ["0", "1"]]
    })");
    CHECK(doc.flow.dim() == 2);
    CHECK(doc.flow.field()->degree() == 2);
    CHECK(doc.flow[1] == doc.flow.field()->generator());

    CHECK_THROWS_AS(parse_flow_document("not json"), ParseError);
    CHECK_THROWS_AS(parse_flow_document(""), ParseError);
    CHECK_THROWS_AS(parse_flow_document(R"({"frequencies": []})"), ParseError);
    // Wrong coordinate length: semantic error.
    CHECK_THROWS_AS(parse_flow_document(R"({
        "field": {"min_poly": [-1, -1, 1]},
        "frequencies": [["1"], ["0", "1"]]
    })"),
                    SemanticError);
    // Reducible field polynomial.
    CHECK_THROWS_AS(parse_flow_document(R"({
        "field": {"min_poly": [-1, 0, 1]},
        "frequencies": [["1", "0"], ["0", "1"]]
    })"),
                    SemanticError);
}

TEST_CASE("root hints select embeddings") {
    FlowDocument doc = parse_flow_document(R"({
        "field": {"min_poly": [-2, 0, 1], "root_hint": ["-2", "0"]},
        "frequencies": [["1", "0"], ["0", "1"]]
    })");
    CHECK(doc.flow.field()->generator().sign() < 0);
}

TEST_CASE("action document parsing") {
    ActionDocument doc = parse_action_document(R"({
        "rank_claim": 1,
        "generators": [{"matrix": [2, 1, 1, 1], "translation": ["1/2", "0"]}]
    })");
    CHECK(doc.spec.rank() == 1);
    CHECK(doc.spec.dim() == 2);
    CHECK(doc.spec.generators[0].translation()[0] == Rat(1, 2));

    CHECK_THROWS_AS(parse_action_document(R"({"generators": []})"), ParseError);
    CHECK_THROWS_AS(parse_action_document(R"({
        "rank_claim": 2,
        "generators": [{"matrix": [2, 1, 1, 1]}]
    })"),
                    SemanticError);
    CHECK_THROWS_AS(parse_action_document(R"({
        "generators": [{"matrix": [2, 1, 1]}]
    })"),
                    SemanticError);
}

TEST_CASE("scan and map documents") {
    ScanDocument sd = parse_scan_document(R"({
        "frequencies_decimal": ["1", "2.50"]
    })");
    CHECK(sd.values[1] == Rat(5, 2));

    MapDocument plain = parse_map_document(R"({"matrix": [2, 1, 1, 1]})", 2);
    CHECK(plain.terms.empty());
    MapDocument conj = parse_map_document(R"({
        "base": {"matrix": [2, 1, 1, 1]},
        "epsilon": 0.05,
        "terms": [{"c": 0.5, "k": 1, "source": 1, "target": 0}]
    })",
                                          2);
    CHECK(conj.epsilon == 0.05);
    REQUIRE(conj.terms.size() == 1);
    CHECK(conj.terms[0].source == 1);
    CHECK_THROWS_AS(parse_map_document(R"({"matrix": [2, 1, 1, 1]})", 3), SemanticError);
}

TEST_CASE("json reports round-trip byte-identically") {
    FlowDocument doc = parse_flow_document(read_file(std::string(TORSYM_FIXTURES) + "/golden-flow.json"));
    IrrationalityResult irr = is_irrational(doc.flow);
    KochClassification koch = koch_classify(doc.flow);
    CharacterizationReport chr = check_characterization(doc.flow);
    std::string text = dump_json(flow_analysis_json(doc, irr, koch, chr));
    Json parsed = Json::parse(text);
    CHECK(dump_json(parsed) == text);

    auto records = search_multipliers(doc.flow, 2);
    std::string text2 = dump_json(symmetry_search_json(doc, 2, records));
    CHECK(dump_json(Json::parse(text2)) == text2);
}

TEST_CASE("exact values ride along decimals") {
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    Json e = element_json(f->generator() + Rat(1));
    CHECK(e["coords"][0] == "1");
    CHECK(e["coords"][1] == "1");
    CHECK(e["decimal"] == "2.414213562");
}
