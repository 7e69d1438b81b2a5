#include "detform/scenario_io.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace detform;
using testutil::pt;

namespace {

std::string fixture(const char* name) { return std::string(FIXTURES_DIR) + "/" + name; }

}  // namespace

TEST_CASE("loading the planar fixture") {
    ScenarioFile sf = load_scenario_file(fixture("b3.scn"));
    Scenario expect = testutil::b3_scenario();

    CHECK(sf.scenario.n() == 2);
    CHECK(sf.scenario.d() == 4);
    CHECK(sf.scenario.m() == 3);
    REQUIRE(sf.scenario.points().size() == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(sf.scenario.points()[i] == expect.points()[i]);

    REQUIRE(sf.candidates.size() == 10);
    CHECK(sf.candidates[0].first == "P1");
    CHECK(sf.candidates[0].second == pt({1, 0, 0}));
    CHECK(sf.candidates[8].first == "P9");
    CHECK(sf.candidates[8].second == pt({0, 1, -1}));
    CHECK(sf.candidates[9].first == "Q");
    CHECK(sf.candidates[9].second == pt({1, 1, 1}));

    REQUIRE(sf.factors.size() == 5);
    CHECK(sf.factors[0].first == MultiPoly::parse("a", 3));
    CHECK(sf.factors[0].second == 1);
    CHECK(sf.factors[1].first == MultiPoly::parse("b", 3));
    CHECK(sf.factors[1].second == 3);
    CHECK(sf.factors[2].second == 3);
    CHECK(sf.factors[3].first == MultiPoly::parse("a + b - c", 3));
    CHECK(sf.factors[4].first == MultiPoly::parse("a - b + c", 3));
}

TEST_CASE("loading the spatial fixture") {
    ScenarioFile sf = load_scenario_file(fixture("f4.scn"));
    Scenario expect = testutil::f4_scenario();
    CHECK(sf.scenario.n() == 3);
    CHECK(sf.scenario.d() == 4);
    CHECK(sf.scenario.m() == 3);
    REQUIRE(sf.scenario.points().size() == 24);
    for (std::size_t i = 0; i < 24; ++i) {
        INFO("point " << i);
        CHECK(sf.scenario.points()[i] == expect.points()[i]);
        // representatives are stored verbatim, not just projectively equal
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(sf.scenario.points()[i][c] == expect.points()[i][c]);
    }
    REQUIRE(sf.candidates.size() == 1);
    CHECK(sf.candidates[0].first == "omitted");
    CHECK(sf.candidates[0].second == pt({1, -1, -1, -1}));
    CHECK(sf.factors.empty());
}

TEST_CASE("loading the binary-form fixtures") {
    for (unsigned r = 1; r <= 3; ++r) {
        std::string name = r == 1 ? "p1.scn" : ("p1_r" + std::to_string(r) + ".scn");
        INFO(name);
        ScenarioFile sf = load_scenario_file(fixture(name.c_str()));
        Scenario expect = testutil::p1_scenario(r);
        CHECK(sf.scenario.n() == 1);
        CHECK(sf.scenario.d() == 2 + r);
        CHECK(sf.scenario.m() == 2);
        REQUIRE(sf.scenario.points().size() == r);
        for (std::size_t i = 0; i < r; ++i) CHECK(sf.scenario.points()[i] == expect.points()[i]);
    }
}

TEST_CASE("scenario text parsing accepts exact coordinates only") {
    SECTION("rational strings and integers mix freely") {
        ScenarioFile sf = parse_scenario_text(R"({
            "n": 1, "d": 3, "m": 2,
            "points": [["1/2", -3]]
        })");
        CHECK(sf.scenario.points()[0][0] == Rational(1, 2));
        CHECK(sf.scenario.points()[0][1] == Rational(-3));
    }

    SECTION("floating-point coordinates are rejected") {
        CHECK_THROWS_MATCHES(parse_scenario_text(R"({
            "n": 1, "d": 3, "m": 2,
            "points": [[0.5, 1]]
        })"),
                             ScenarioFileError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("floating-point")));
    }

    SECTION("float-looking strings are rejected") {
        CHECK_THROWS_AS(parse_scenario_text(R"({
            "n": 1, "d": 3, "m": 2,
            "points": [["0.5", 1]]
        })"),
                        ScenarioFileError);
    }

    SECTION("other JSON types are rejected") {
        CHECK_THROWS_AS(parse_scenario_text(R"({
            "n": 1, "d": 3, "m": 2,
            "points": [[true, 1]]
        })"),
                        ScenarioFileError);
        CHECK_THROWS_AS(parse_scenario_text(R"({
            "n": 1, "d": 3, "m": 2,
            "points": [[null, 1]]
        })"),
                        ScenarioFileError);
    }
}

TEST_CASE("scenario text parsing rejects malformed structure") {
    CHECK_THROWS_AS(parse_scenario_text("not json"), ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text("[1,2,3]"), ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(R"({"d": 3, "m": 2, "points": [[1,1]]})"),
                    ScenarioFileError);  // missing n
    CHECK_THROWS_AS(parse_scenario_text(R"({"n": 0, "d": 3, "m": 2, "points": [[1,1]]})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(R"({"n": 1, "d": 3, "m": 2})"), ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(R"({"n": 1, "d": 3, "m": 2, "points": []})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(R"({"n": 1, "d": 3, "m": 2, "points": [[1,1,1]]})"),
                    ScenarioFileError);  // wrong coordinate count
    CHECK_THROWS_AS(parse_scenario_text(R"({"n": 1, "d": 3, "m": 2, "points": [[0,0]]})"),
                    ScenarioFileError);  // all-zero point
    CHECK_THROWS_AS(parse_scenario_text(R"({"n": 1, "d": 3.5, "m": 2, "points": [[1,1]]})"),
                    ScenarioFileError);
}

TEST_CASE("scenario validation errors surface both sides of the dimension identity") {
    // 7 points with (n,d,m) = (2,4,3): 15 != 6 + 7 + 1
    try {
        parse_scenario_text(R"({
            "n": 2, "d": 4, "m": 3,
            "points": [[1,0,0],[0,1,0],[0,0,1],[1,1,0],[1,-1,0],[1,0,1],[1,0,-1]]
        })");
        FAIL("expected an exception");
    } catch (const std::exception& e) {
        std::string msg = e.what();
        CHECK(msg.find("15") != std::string::npos);
        CHECK(msg.find("6 + 7 + 1") != std::string::npos);
    }

    // projectively duplicate points are rejected
    CHECK_THROWS_AS(parse_scenario_text(R"({
        "n": 1, "d": 4, "m": 2,
        "points": [[1,1],[2,2]]
    })"),
                    std::exception);
}

TEST_CASE("candidate and factor blocks validate their shapes") {
    const char* base = R"({"n": 1, "d": 3, "m": 2, "points": [[1,1]])";

    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "candidates": [1]})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "candidates": {"X": [1]}})"),
                    ScenarioFileError);

    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "factors": {"a_0": 1}})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "factors": [["a_0"]]})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "factors": [["a_0", 0]]})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "factors": [["a_0", -1]]})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "factors": [[7, 1]]})"),
                    ScenarioFileError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "factors": [["x_0", 1]]})"),
                    ScenarioFileError);  // factor must avoid the x-block
    CHECK_THROWS_AS(parse_scenario_text(std::string(base) + R"(, "factors": [["q", 1]]})"),
                    ScenarioFileError);  // unknown variable

    ScenarioFile ok = parse_scenario_text(std::string(base) +
                                          R"(, "candidates": {"X": [2, 3]},
                                             "factors": [["a_0 - a_1", 2]]})");
    REQUIRE(ok.candidates.size() == 1);
    CHECK(ok.candidates[0].second == pt({2, 3}));
    REQUIRE(ok.factors.size() == 1);
    CHECK(ok.factors[0].first == MultiPoly::parse("a_0 - a_1", 2));
    CHECK(ok.factors[0].second == 2);
}

TEST_CASE("command-line point parsing") {
    PointProj p = parse_point_arg("3,5,7", 3);
    CHECK(p == pt({3, 5, 7}));

    PointProj q = parse_point_arg("1/2,-1,0", 3);
    CHECK(q[0] == Rational(1, 2));
    CHECK(q[1] == Rational(-1));
    CHECK(q[2] == Rational(0));

    CHECK_THROWS_AS(parse_point_arg("1,2", 3), ScenarioFileError);
    CHECK_THROWS_AS(parse_point_arg("1,2,3,4", 3), ScenarioFileError);
    CHECK_THROWS_AS(parse_point_arg("1,x,3", 3), ScenarioFileError);
    CHECK_THROWS_AS(parse_point_arg("1.5,2,3", 3), ScenarioFileError);
    CHECK_THROWS_AS(parse_point_arg("0,0,0", 3), ScenarioFileError);
}

TEST_CASE("missing scenario file reports the path") {
    CHECK_THROWS_MATCHES(load_scenario_file("/nonexistent/path.scn"), ScenarioFileError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("/nonexistent/path.scn")));
}
