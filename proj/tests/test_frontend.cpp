#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "poisred/parse.hpp"
#include "poisred/run.hpp"

#include <json.hpp>

using namespace poisred;
using test_support::Gen;

namespace {

const char* kFirstClass = R"(
manifold { n: 4 }
poisson { xi1*xi2 + xi3*xi4 }
submanifold C { gens: x4; tangent: xi1, xi2, xi3; points: (0,0,0,0), (2,1,3,0) }
distribution E { base: C; gens: xi3 }
distribution D { base: C; gens: xi3 }
problem { C: C; E: E; D: D; A: C; B: x1, x2; bound: 4 }
)";

const char* kSphere = R"(
manifold { n: 3 }
poisson { x3*xi1*xi2 + x1*xi2*xi3 + x2*xi3*xi1 }
submanifold S {
  gens: x1^2 + x2^2 + x3^2 - 1;
  tangent: x3*xi2 - x2*xi3, x1*xi3 - x3*xi1, x2*xi1 - x1*xi2;
  points: (1,0,0), (0,1,0), (0,0,1), (3/5,4/5,0)
}
distribution E0 { base: S; gens: }
problem { C: S; E: E0; A: S; B: x1, x2, x3; bound: 4 }
)";

int parseErrorLine(const std::string& text) {
    try {
        parseProblemFile(text);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

} // namespace

TEST_CASE("expression round trip") {
    Gen gen(501);
    for (int k = 0; k < 120; ++k) {
        int n = gen.intIn(1, 5);
        ChartPtr c = Chart::standard(n);
        SuperFn f = gen.any(c, n, 3, 5);
        CHECK(parseExpression(f.str(), c) == f);
    }
    ChartPtr c = Chart::standard(5);
    CHECK(parseExpression("0", c).isZero());
    CHECK(parseExpression("-3/4", c) == SuperFn::constant(c, ratio(-3, 4)));
}

TEST_CASE("expression grammar") {
    ChartPtr c = Chart::standard(3);
    CHECK(parseExpression("x1^2*x2 - 2*xi1*xi3", c) ==
          pow(SuperFn::coordinate(c, 0), 2) * SuperFn::coordinate(c, 1) -
              ratio(2) * (SuperFn::oddCoordinate(c, 0) * SuperFn::oddCoordinate(c, 2)));
    CHECK(parseExpression("(x1 + x2)^2", c) ==
          pow(SuperFn::coordinate(c, 0) + SuperFn::coordinate(c, 1), 2));
    CHECK(parseExpression("xi3*xi1", c) ==
          -(SuperFn::oddCoordinate(c, 0) * SuperFn::oddCoordinate(c, 2)));
    CHECK_THROWS_AS(parseExpression("xi1^2", c), ParseError);
    CHECK_THROWS_AS(parseExpression("x9", c), ParseError);
    CHECK_THROWS_AS(parseExpression("x1 +", c), ParseError);
    CHECK_THROWS_AS(parseExpression("x1 x2", c), ParseError);
}

TEST_CASE("problem file parsing") {
    ProblemFile file = parseProblemFile(kSphere);
    CHECK(file.chart->dim() == 3);
    REQUIRE(file.poisson.has_value());
    CHECK(file.poisson->isHomogeneous(2));
    REQUIRE(file.submanifolds.size() == 1);
    CHECK(file.submanifolds[0].gens.size() == 1);
    CHECK(file.submanifolds[0].tangentGens.size() == 3);
    CHECK(file.submanifolds[0].points.size() == 4);
    REQUIRE(file.problem.has_value());
    CHECK(file.problem->bgens.size() == 3);
    CHECK(file.problem->bound == 4);
}

TEST_CASE("parse errors carry positions") {
    // degree-3 term in the poisson block
    std::string badDegree = "manifold { n: 3 }\npoisson { xi1*xi2*xi3 }\n";
    CHECK(parseErrorLine(badDegree) == 2);
    try {
        parseProblemFile(badDegree);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("expected degree 2") != std::string::npos);
    }
    // undefined names
    CHECK(parseErrorLine("manifold { n: 2 }\npoisson { q1*xi2 }\n") == 2);
    CHECK(parseErrorLine("manifold { n: 2 }\ndistribution E { base: C; gens: xi1 }\n") == 2);
    // sections before the manifold
    CHECK(parseErrorLine("poisson { xi1*xi2 }\n") == 1);
    // odd exponent
    CHECK(parseErrorLine("manifold { n: 2 }\npoisson { xi1^2 }\n") == 2);
}

TEST_CASE("aliases resolve while canonical rendering stays positional") {
    ProblemFile file = parseProblemFile(
        "manifold { n: 2; x: q, p; xi: dq, dp }\npoisson { dq*dp }\n"
        "submanifold C { gens: p; points: (0,0) }\n");
    REQUIRE(file.poisson.has_value());
    CHECK(file.poisson->str() == "xi1*xi2");
    CHECK(file.submanifolds[0].gens[0].str() == "x2");
}

TEST_CASE("run is deterministic") {
    RunOptions opts;
    RunResult a = run("reduce", kFirstClass, opts);
    RunResult b = run("reduce", kFirstClass, opts);
    CHECK(a.exitCode == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("routes agree: yes") != std::string::npos);
}

TEST_CASE("structured output is valid versioned json") {
    RunOptions opts;
    opts.format = "structured";
    RunResult r = run("check-thm-a2", kFirstClass, opts);
    CHECK(r.exitCode == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["schema"] == "v1");
    CHECK(j["command"] == "check-thm-a2");
    CHECK(j["exit"] == 0);
    CHECK(j["problem"]["n"] == 4);
    CHECK(j["results"]["reports"][0]["overall"] == "HOLDS");
}

TEST_CASE("exit status contract") {
    RunOptions opts;
    CHECK(run("check-poisson", kSphere, opts).exitCode == 0);
    CHECK(run("reduce", kSphere, opts).exitCode == 0);

    // FAILS -> 1
    std::string broken =
        "manifold { n: 2 }\npoisson { xi1*xi2 }\n"
        "submanifold C { gens: x2; tangent: xi1; points: (0,0) }\n"
        "distribution E { base: C; gens: xi2 }\nproblem { C: C; E: E }\n";
    CHECK(run("check-coisotropic", broken, opts).exitCode == 1);

    // UNDECIDED -> 2: [xi1, (1+x1)xi2] = xi2 is in the span only after
    // inverting 1+x1, which no polynomial cofactor does
    std::string undecided =
        "manifold { n: 2 }\npoisson { xi1*xi2 }\n"
        "submanifold C { gens: ; tangent: xi1, xi2; points: (0,0) }\n"
        "distribution E { base: C; gens: xi1, xi2 + x1*xi2 }\n"
        "problem { C: C; E: E; bound: 3 }\n";
    RunResult u = run("check-coisotropic", undecided, opts);
    CHECK(u.exitCode == 2);

    // input errors -> 3
    CHECK(run("check-poisson", "manifold { n: 2 )\n", opts).exitCode == 3);
    CHECK(run("reduce", "manifold { n: 2 }\n", opts).exitCode == 3);
    CHECK(run("nonsense", kSphere, opts).exitCode == 3);

    // bracket prints the value
    RunResult br = run("bracket", kSphere, opts, {"x3*xi1*xi2", "x2"});
    CHECK(br.exitCode == 0);
    CHECK(br.output.find("x3*xi1") != std::string::npos);
}

TEST_CASE("command reports echo the problem") {
    RunOptions opts;
    RunResult r = run("check-poisson", kSphere, opts);
    CHECK(r.output.find("== problem ==") != std::string::npos);
    CHECK(r.output.find("manifold { n: 3 }") != std::string::npos);
    CHECK(r.output.find("x3*xi1*xi2") != std::string::npos);
}
