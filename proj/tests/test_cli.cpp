#include "detform/analysis.hpp"
#include "detform/scenario_io.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace detform;

namespace {

std::string fixture(const char* name) { return std::string(FIXTURES_DIR) + "/" + name; }

struct CliResult {
    int exit_code;
    std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(DETFORM_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), std::move(out)};
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("det subcommand on the smallest fixture agrees with every engine") {
    CliResult reduced = run_cli("det " + fixture("p1.scn"));
    REQUIRE(reduced.exit_code == 0);
    MultiPoly expect = MultiPoly::parse(testutil::kP1r1Det, 2);
    CHECK(MultiPoly::parse(reduced.output, 2) == expect);

    CliResult laplace = run_cli("det " + fixture("p1.scn") + " --engine laplace");
    CliResult bareiss = run_cli("det " + fixture("p1.scn") + " --engine bareiss");
    REQUIRE(laplace.exit_code == 0);
    REQUIRE(bareiss.exit_code == 0);
    CHECK(laplace.output == reduced.output);
    CHECK(bareiss.output == reduced.output);

    SECTION("output is byte-identical across runs") {
        CliResult again = run_cli("det " + fixture("p1.scn"));
        CHECK(again.output == reduced.output);
        CHECK(again.exit_code == 0);
    }
}

TEST_CASE("det subcommand round-trips the planar determinant") {
    CliResult res = run_cli("det " + fixture("b3.scn"));
    REQUIRE(res.exit_code == 0);
    BihomForm F = assemble_F(testutil::b3_scenario());
    CHECK(MultiPoly::parse(res.output, 3) == F.F);
    // canonical printing means the emitted text IS the canonical form
    CHECK(res.output == F.F.str() + "\n");
}

TEST_CASE("det subcommand prints ZERO for the spatial fixture") {
    CliResult res = run_cli("det " + fixture("f4.scn"));
    REQUIRE(res.exit_code == 0);
    CHECK(res.output == "ZERO\n");
}

TEST_CASE("laplace engine refuses a 15x15 expansion") {
    CliResult res = run_cli("det " + fixture("b3.scn") + " --engine laplace");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("error:") != std::string::npos);
}

TEST_CASE("build subcommand dumps the tagged matrix") {
    CliResult res = run_cli("build " + fixture("b3.scn"));
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.rfind("N 15\n", 0) == 0);
    CHECK(count_lines_with(res.output, "\nrow ") + 1 == 16);  // 15 row lines after the N line
    CHECK(res.output.find("row 0 partial(2,0,0): 12*a^2, 6*a^1*b^1") != std::string::npos);
    CHECK(res.output.find("row 6 point(1):") != std::string::npos);
    CHECK(res.output.find("row 14 generic_x: x^4, x^3*y^1") != std::string::npos);

    CliResult again = run_cli("build " + fixture("b3.scn"));
    CHECK(again.output == res.output);
}

TEST_CASE("build subcommand rejects a configuration violating the dimension identity") {
    std::string path = "cli_bad_scenario.scn";
    {
        std::ofstream out(path);
        out << R"({"n": 2, "d": 4, "m": 3,
                   "points": [[1,0,0],[0,1,0],[0,0,1],[1,1,0],[1,-1,0],[1,0,1],[1,0,-1]]})";
    }
    CliResult res = run_cli("build " + path);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("15") != std::string::npos);
    CHECK(res.output.find("6 + 7 + 1") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("verify at a fully generic base point passes everything") {
    CliResult res = run_cli("verify " + fixture("b3.scn") + " --point 3,5,7");
    REQUIRE(res.exit_code == 0);
    CHECK(count_lines_with(res.output, "CHECK ") == 7);
    CHECK(count_lines_with(res.output, " PASS ") == 7);
    CHECK(count_lines_with(res.output, " FAIL ") == 0);
    CHECK(res.output.find("CHECK dimension-identity PASS 15 = 6 + 8 + 1") != std::string::npos);
    CHECK(res.output.find("CHECK bidegree PASS (12, 4)") != std::string::npos);
    CHECK(res.output.find("CHECK multiplicity PASS order 3 at S") != std::string::npos);
    CHECK(res.output.find("CHECK duality-partials PASS 10 order-3 partial pairs match with sign -1") !=
          std::string::npos);
    CHECK(res.output.find("CHECK duality-cones PASS") != std::string::npos);
    CHECK(res.output.find("CHECK superabundance PASS k = 0 (k_j = 0,0,0)") != std::string::npos);
}

TEST_CASE("verify at a base point with vanishing left specialization") {
    CliResult res = run_cli("verify " + fixture("b3.scn") + " --point 0,5,7");
    REQUIRE(res.exit_code == 0);  // HYPOTHESIS-VIOLATED does not fail the run
    CHECK(count_lines_with(res.output, " FAIL ") == 0);
    CHECK(count_lines_with(res.output, "HYPOTHESIS-VIOLATED") == 2);
    CHECK(res.output.find("CHECK duality-partials HYPOTHESIS-VIOLATED") != std::string::npos);
    CHECK(res.output.find("CHECK duality-cones HYPOTHESIS-VIOLATED") != std::string::npos);
    CHECK(res.output.find("CHECK superabundance PASS k = 1") != std::string::npos);
}

TEST_CASE("verify at a base point on a coordinate line reports the rank excess") {
    CliResult res = run_cli("verify " + fixture("b3.scn") + " --point 2,0,9");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("CHECK superabundance PASS k = 3 (k_j = 0,1,2)") != std::string::npos);
    CHECK(res.output.find("exact vanishing order 3") != std::string::npos);
}

TEST_CASE("verify with the structural cross-checks enabled") {
    CliResult res = run_cli("verify " + fixture("b3.scn") + " --point 1,2,3 --all-theorems");
    REQUIRE(res.exit_code == 0);
    CHECK(count_lines_with(res.output, "CHECK ") == 10);
    CHECK(count_lines_with(res.output, " FAIL ") == 0);
    CHECK(res.output.find("CHECK moment-identities PASS") != std::string::npos);
    CHECK(res.output.find("CHECK reduced-matrix PASS ratio 1/108 with cleared power a_0^4") !=
          std::string::npos);
    CHECK(res.output.find("CHECK cofactor-reconstruction PASS") != std::string::npos);
    // (1,2,3) kills the left specialization: duality is inapplicable, not false
    CHECK(count_lines_with(res.output, "HYPOTHESIS-VIOLATED") == 2);
}

TEST_CASE("verify certifies the identically-zero determinant") {
    CliResult res = run_cli("verify " + fixture("f4.scn") + " --all-theorems");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("CHECK zero-certification PASS 35 of 35 generic-row cofactors vanish") !=
          std::string::npos);
    CHECK(res.output.find("CHECK bidegree PASS determinant identically zero") != std::string::npos);
    CHECK(res.output.find("CHECK reduced-matrix PASS reduced determinant vanishes") !=
          std::string::npos);
    CHECK(count_lines_with(res.output, " FAIL ") == 0);
}

TEST_CASE("rank subcommand prints the deficiency table") {
    CliResult res = run_cli("rank " + fixture("b3.scn") + " --point 9,7,0");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output ==
          "j 1: rows 9 rank 9 dim_L 6 k_j 0\n"
          "j 2: rows 11 rank 10 dim_L 5 k_j 1\n"
          "j 3: rows 14 rank 12 dim_L 3 k_j 2\n"
          "k 3\n");

    CliResult generic = run_cli("rank " + fixture("b3.scn") + " --point 3,5,7");
    REQUIRE(generic.exit_code == 0);
    CHECK(generic.output ==
          "j 1: rows 9 rank 9 dim_L 6 k_j 0\n"
          "j 2: rows 11 rank 11 dim_L 4 k_j 0\n"
          "j 3: rows 14 rank 14 dim_L 1 k_j 0\n"
          "k 0\n");

    CliResult missing = run_cli("rank " + fixture("b3.scn"));
    CHECK(missing.exit_code == 2);
}

TEST_CASE("strip subcommand divides out the declared factors") {
    CliResult res = run_cli("strip " + fixture("b3.scn"));
    REQUIRE(res.exit_code == 0);

    BihomForm F = assemble_F(testutil::b3_scenario());
    ScenarioFile sf = load_scenario_file(fixture("b3.scn"));
    FactorizationRecord rec = strip_factors(F, sf.factors);

    CHECK(res.output.find("content -1728\n") == 0);
    CHECK(res.output.find("factor a^1 multiplicity 1\n") != std::string::npos);
    CHECK(res.output.find("factor b^1 multiplicity 3\n") != std::string::npos);
    CHECK(res.output.find("G " + rec.G.str() + "\n") != std::string::npos);

    CliResult again = run_cli("strip " + fixture("b3.scn"));
    CHECK(again.output == res.output);
}

TEST_CASE("strip subcommand fails cleanly on a refuted factor claim") {
    std::string path = "cli_bad_factor.scn";
    {
        std::ifstream in(fixture("b3.scn"));
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto pos = text.find("[\"a\", 1]");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 8, "[\"a\", 2]");
        std::ofstream out(path);
        out << text;
    }
    CliResult res = run_cli("strip " + path);
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("STRIP FAIL") != std::string::npos);
    CHECK(res.output.find("factor #1") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("members subcommand classifies the named candidates") {
    CliResult res = run_cli("members " + fixture("b3.scn"));
    REQUIRE(res.exit_code == 0);
    CHECK(res.output ==
          "MEMBER P1 (1,0,0)\n"
          "MEMBER P2 (0,1,0)\n"
          "MEMBER P3 (0,0,1)\n"
          "MEMBER P4 (1,1,0)\n"
          "MEMBER P5 (1,-1,0)\n"
          "MEMBER P6 (1,0,1)\n"
          "MEMBER P7 (1,0,-1)\n"
          "MEMBER P8 (0,1,1)\n"
          "MEMBER P9 (0,1,-1)\n"
          "NONMEMBER Q (1,1,1)\n");
}

TEST_CASE("members subcommand refuses an identically-zero determinant") {
    CliResult res = run_cli("members " + fixture("f4.scn"));
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("identically zero") != std::string::npos);
}

TEST_CASE("invalid invocations exit with the input-error code") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate x").exit_code == 2);
    CHECK(run_cli("det /nonexistent/missing.scn").exit_code == 2);
    CHECK(run_cli("det " + fixture("p1.scn") + " --engine cramer").exit_code == 2);
    CHECK(run_cli("verify " + fixture("b3.scn") + " --point 1,2").exit_code == 2);
    CHECK(run_cli("verify " + fixture("b3.scn") + " --point 1,2,0.5").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}
