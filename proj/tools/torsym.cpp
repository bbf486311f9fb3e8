// torsym: generalized-symmetry analysis of constant flows on the n-torus.

#include "CLI11.hpp"

#include "torsym/errors.hpp"
#include "torsym/io.hpp"

#include <cstdio>
#include <iostream>

namespace {

using namespace torsym;

int run_analyze_flow(const std::string& path, bool json) {
    FlowDocument doc = parse_flow_document(read_file(path));
    IrrationalityResult irr = is_irrational(doc.flow);
    KochClassification koch = koch_classify(doc.flow);
    CharacterizationReport chr = check_characterization(doc.flow);
    if (json)
        std::cout << dump_json(flow_analysis_json(doc, irr, koch, chr));
    else
        std::cout << flow_analysis_text(doc, irr, koch, chr);
    return 0;
}

int run_find_symmetries(const std::string& path, long bound, bool json, unsigned threads) {
    FlowDocument doc = parse_flow_document(read_file(path));
    auto records = search_multipliers(doc.flow, bound, threads);
    if (json)
        std::cout << dump_json(symmetry_search_json(doc, bound, records));
    else
        std::cout << symmetry_search_text(doc, bound, records);
    return 0;
}

int run_check_action(const std::string& path, int word_bound, const std::string& flow_path,
                     bool json, unsigned threads) {
    ActionDocument doc = parse_action_document(read_file(path));
    ActionReport rep = verify_action(doc.spec, word_bound, threads);

    std::optional<LinearizationResult> lin;
    bool has_translation = false;
    for (const auto& g : doc.spec.generators) has_translation = has_translation || !g.is_linear();
    if (has_translation && rep.anosov_element) {
        try {
            lin = common_fixed_point(doc.spec, word_bound);
        } catch (const SemanticError&) {
            // fixed set infinite or empty: linearization inapplicable
        }
    }

    std::optional<FlowClassificationReport> flow_rep;
    if (!flow_path.empty()) {
        FlowDocument flow = parse_flow_document(read_file(flow_path));
        flow_rep = classify_invariant_flow(doc.spec, flow.flow, word_bound, threads);
    }

    if (json)
        std::cout << dump_json(action_report_json(doc, rep, lin, flow_rep));
    else
        std::cout << action_report_text(doc, rep, lin, flow_rep);
    return 0;
}

int run_lyapunov(const std::string& path, const std::string& map_arg, int samples, int iters,
                 double epsilon, double tol, bool has_tol, std::size_t seed, bool json,
                 unsigned threads) {
    FlowDocument doc = parse_flow_document(read_file(path));

    MapDocument map = [&]() -> MapDocument {
        char* end = nullptr;
        long index = std::strtol(map_arg.c_str(), &end, 10);
        if (end && *end == '\0' && !map_arg.empty()) {
            auto records = search_multipliers(doc.flow, 3, threads);
            if (index < 0 || index >= static_cast<long>(records.size()))
                throw SemanticError("record index out of range (found " +
                                    std::to_string(records.size()) + " records)");
            return MapDocument{AffineMap(records[static_cast<std::size_t>(index)].matrix), 0.0, {}};
        }
        return parse_map_document(read_file(map_arg), doc.flow.dim());
    }();

    auto mu = multiplier_of(map.base, doc.flow);
    if (!mu) throw SemanticError("the map is not a symmetry of the flow");
    MultiplierRecord record = make_record(*mu, map.base.linear());

    std::optional<NonlinearTestMap> conj;
    std::vector<TrigTerm> terms = map.terms;
    double eps = epsilon > 0 ? epsilon : map.epsilon;
    if (eps > 0) {
        if (terms.empty()) terms = NonlinearTestMap::default_family(doc.flow.dim());
        conj.emplace(map.base, eps, terms);
    }

    LyapunovReport rep = verify_lyapunov_theorem(record, doc.flow, samples, iters,
                                                 conj ? &*conj : nullptr, threads, seed);
    if (json)
        std::cout << dump_json(lyapunov_report_json(rep));
    else
        std::cout << lyapunov_report_text(rep);
    if (has_tol && rep.max_abs_deviation > tol) {
        std::cerr << "deviation " << rep.max_abs_deviation << " exceeds tol " << tol << "\n";
        return 1;
    }
    return 0;
}

int run_scan(const std::string& path, long bound, const std::string& tol_str, bool json,
             unsigned threads) {
    ScanDocument doc = parse_scan_document(read_file(path));
    Rat tol = parse_rational(tol_str);
    if (sign(tol) <= 0) throw SemanticError("tol must be positive");
    auto candidates = numeric_symmetry_scan(doc.values, bound, tol, threads);
    if (json)
        std::cout << dump_json(scan_report_json(doc, bound, tol, candidates));
    else
        std::cout << scan_report_text(doc, bound, tol, candidates);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized symmetries of constant vector-field flows on the n-torus"};
    app.require_subcommand(1);

    std::string path, flow_path, map_arg = "0", tol_str = "1/1000000000000000000000000000000";
    bool json = false;
    long bound = 3;
    int word_bound = 3, samples = 10, iters = 200;
    double epsilon = 0.0, tol = 0.0;
    unsigned threads = 0;
    std::size_t seed = 0;

    auto* analyze = app.add_subcommand("analyze-flow", "irrationality, Koch type, characterization");
    analyze->add_option("path", path, "flow document (JSON)")->required();
    analyze->add_flag("--json", json, "machine-readable output");

    auto* find = app.add_subcommand("find-symmetries", "bounded multiplier-group search");
    find->add_option("path", path, "flow document (JSON)")->required();
    find->add_option("--bound", bound, "coefficient bound for the candidate box")->default_val(3);
    find->add_flag("--json", json, "machine-readable output");
    find->add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* action = app.add_subcommand("check-action", "Z^d action structure and flow checklist");
    action->add_option("path", path, "action document (JSON)")->required();
    action->add_option("--word-bound", word_bound, "exponent bound for word searches")->default_val(3);
    action->add_option("--flow", flow_path, "flow document for the classification checklist");
    action->add_flag("--json", json, "machine-readable output");
    action->add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* lyap = app.add_subcommand("lyapunov", "numeric Lyapunov verification of a symmetry");
    lyap->add_option("path", path, "flow document (JSON)")->required();
    lyap->add_option("--map", map_arg, "record index (from find-symmetries order) or map document path")
        ->default_val("0");
    lyap->add_option("--samples", samples, "number of Halton base points")->default_val(10);
    lyap->add_option("--iters", iters, "cocycle length m")->default_val(200);
    lyap->add_option("--epsilon", epsilon, "trigonometric conjugacy amplitude (0 = none)");
    auto* tol_opt = lyap->add_option("--tol", tol, "fail (exit 1) if max deviation exceeds this");
    lyap->add_option("--seed", seed, "Halton sequence offset");
    lyap->add_flag("--json", json, "machine-readable output");
    lyap->add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* scan = app.add_subcommand("scan", "bounded integer-matrix scan for numeric frequencies");
    scan->add_option("path", path, "scan document (JSON, decimal strings)")->required();
    scan->add_option("--bound", bound, "entry bound for the matrix box")->default_val(3);
    scan->add_option("--tol", tol_str, "relative residual tolerance, as p/q or decimal")
        ->default_val("1/1000000000000000000000000000000");
    scan->add_flag("--json", json, "machine-readable output");
    scan->add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze_flow(path, json);
        if (find->parsed()) return run_find_symmetries(path, bound, json, threads);
        if (action->parsed()) return run_check_action(path, word_bound, flow_path, json, threads);
        if (lyap->parsed())
            return run_lyapunov(path, map_arg, samples, iters, epsilon, tol, tol_opt->count() > 0,
                                seed, json, threads);
        if (scan->parsed()) return run_scan(path, bound, tol_str, json, threads);
    } catch (const torsym::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const torsym::ActionStructureError& e) {
        std::cerr << "action error: " << e.what() << "\n";
        return 4;
    } catch (const torsym::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 5;
    } catch (const torsym::SemanticError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
