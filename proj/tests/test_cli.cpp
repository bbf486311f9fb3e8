#include "doctest.h"

#include "torsym/io.hpp"

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(TORSYM_BIN) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string fixture(const std::string& name) { return std::string(TORSYM_FIXTURES) + "/" + name; }

} // namespace

TEST_CASE("analyze-flow on the golden flow") {
    RunResult r = run("analyze-flow " + fixture("golden-flow.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("irrational: yes") != std::string::npos);
    CHECK(r.out.find("koch: yes") != std::string::npos);
    CHECK(r.out.find("(1)*x^2 + (-1)*x + (-1)") != std::string::npos);
}

TEST_CASE("analyze-flow prints the dependent-side witness") {
    RunResult r = run("analyze-flow " + fixture("dependent-flow.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("irrational: no") != std::string::npos);
    CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("exit code 2 on unreadable or malformed input") {
    RunResult missing = run("analyze-flow /nonexistent.json");
    CHECK(missing.exit_code == 2);
    RunResult empty = run("analyze-flow /dev/null");
    CHECK(empty.exit_code == 2);
}

TEST_CASE("exit code 3 on semantic input errors") {
    std::string bad = "/tmp/torsym_bad_flow.json";
    FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs(R"({"field": {"min_poly": [-1, 0, 1]}, "frequencies": [["1","0"],["0","1"]]})", f);
    std::fclose(f);
    RunResult r = run("analyze-flow " + bad);
    CHECK(r.exit_code == 3);
}

TEST_CASE("exit code 4 on non-commuting generators") {
    RunResult r = run("check-action " + fixture("noncommuting-action.json"));
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("commute") != std::string::npos);
}

TEST_CASE("find-symmetries table") {
    RunResult r = run("find-symmetries " + fixture("silver-flow.json") + " --bound 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("min_poly (1)*x^2 + (-2)*x + (-1)") != std::string::npos); // 1 + sqrt2
    CHECK(r.out.find("0.88137") != std::string::npos);
}

TEST_CASE("check-action with flow checklist") {
    RunResult r = run("check-action " + fixture("cubic-unit-action.json") + " --flow " +
                      fixture("cubic-unit-flow.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("higher rank: yes") != std::string::npos);
    CHECK(r.out.find("verdict: Koch type, degree 3") != std::string::npos);

    RunResult bad = run("check-action " + fixture("example-action-3.json") + " --flow " +
                        fixture("example-flow-3.json"));
    CHECK(bad.exit_code == 0);
    CHECK(bad.out.find("[FAIL] anosov_element") != std::string::npos);
}

TEST_CASE("check-action reports the linearization for affine actions") {
    RunResult r = run("check-action " + fixture("cubic-unit-affine-action.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("linearization: base point") != std::string::npos);
    CHECK(r.out.find("algebraic generator") != std::string::npos);
}

TEST_CASE("lyapunov run on the worked example") {
    RunResult r = run("lyapunov " + fixture("example-flow-3.json") + " --map " +
                      fixture("example-map-3.json") + " --samples 4 --iters 200 --tol 0.000001");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.88137358701954") != std::string::npos);

    // An intentionally unmeetable tolerance with the conjugacy: exit 1.
    RunResult strict = run("lyapunov " + fixture("example-flow-3.json") + " --map " +
                           fixture("example-map-3.json") +
                           " --samples 2 --iters 400 --epsilon 0.05 --tol 1e-12");
    CHECK(strict.exit_code == 1);
}

TEST_CASE("scan finds the silver symmetry numerically") {
    RunResult r = run("scan " + fixture("silver-scan.json") + " --bound 3 --tol 1e-20");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[1 1; 2 1]") != std::string::npos);
    CHECK(r.out.find("2.414213562") != std::string::npos);
}

TEST_CASE("json output round-trips byte-identically") {
    RunResult r = run("analyze-flow " + fixture("golden-flow.json") + " --json");
    CHECK(r.exit_code == 0);
    torsym::Json parsed = torsym::Json::parse(r.out);
    CHECK(torsym::dump_json(parsed) == r.out);

    RunResult a = run("check-action " + fixture("cubic-unit-action.json") + " --json");
    CHECK(a.exit_code == 0);
    torsym::Json pa = torsym::Json::parse(a.out);
    CHECK(torsym::dump_json(pa) == a.out);
}
