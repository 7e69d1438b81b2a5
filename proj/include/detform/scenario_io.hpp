#pragma once

#include "detform/analysis.hpp"
#include "detform/interpolation.hpp"
#include "detform/multipoly.hpp"
#include "detform/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detform {

class ScenarioFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A scenario file: the configuration itself plus optional named candidate
// points (for membership queries) and a candidate factor list (for stripping).
struct ScenarioFile {
    Scenario scenario;
    std::vector<std::pair<std::string, PointProj>> candidates;
    std::vector<std::pair<MultiPoly, unsigned>> factors;
};

namespace detail {

// Coordinates must be exact: rational strings ("2/3", "-1") or JSON integers.
// Any float is rejected outright rather than rounded.
inline Rational coordinate_from_json(const nlohmann::ordered_json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const std::exception& e) {
            throw ScenarioFileError(where + ": bad rational string \"" + v.get<std::string>() +
                                    "\": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float())
        throw ScenarioFileError(where + ": floating-point coordinates are not accepted; "
                                        "write an exact rational string such as \"2/3\"");
    throw ScenarioFileError(where + ": coordinate must be an integer or a rational string");
}

inline PointProj point_from_json(const nlohmann::ordered_json& arr, std::size_t expect,
                                 const std::string& where) {
    if (!arr.is_array())
        throw ScenarioFileError(where + ": point must be an array of coordinates");
    if (arr.size() != expect)
        throw ScenarioFileError(where + ": expected " + std::to_string(expect) +
                                " coordinates, got " + std::to_string(arr.size()));
    std::vector<Rational> coords;
    coords.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        coords.push_back(coordinate_from_json(arr[i], where + "[" + std::to_string(i) + "]"));
    try {
        return PointProj(std::move(coords));
    } catch (const std::exception& e) {
        throw ScenarioFileError(where + ": " + e.what());
    }
}

inline unsigned positive_integer_field(const nlohmann::ordered_json& obj, const char* key) {
    if (!obj.contains(key))
        throw ScenarioFileError(std::string("missing required field \"") + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw ScenarioFileError(std::string("field \"") + key + "\" must be a positive integer");
    return static_cast<unsigned>(v.get<long long>());
}

}  // namespace detail

// Parse a scenario from JSON text.  Required: n, d, m, points.  Optional:
// "candidates" (object of name -> point) and "factors" (array of
// [polynomial-string, multiplicity] pairs in the a-block variables).
inline ScenarioFile parse_scenario_text(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ScenarioFileError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioFileError("scenario file must be a JSON object");

    unsigned n = detail::positive_integer_field(doc, "n");
    unsigned d = detail::positive_integer_field(doc, "d");
    unsigned m = detail::positive_integer_field(doc, "m");

    if (!doc.contains("points") || !doc.at("points").is_array() || doc.at("points").empty())
        throw ScenarioFileError("field \"points\" must be a non-empty array of points");
    std::vector<PointProj> points;
    for (std::size_t i = 0; i < doc.at("points").size(); ++i)
        points.push_back(
            detail::point_from_json(doc.at("points")[i], n + 1, "points[" + std::to_string(i) + "]"));

    ScenarioFile out{Scenario(n, d, m, std::move(points)), {}, {}};

    if (doc.contains("candidates")) {
        const auto& cands = doc.at("candidates");
        if (!cands.is_object())
            throw ScenarioFileError("field \"candidates\" must be an object of name -> point");
        for (const auto& [name, val] : cands.items())
            out.candidates.emplace_back(name,
                                        detail::point_from_json(val, n + 1, "candidates." + name));
    }

    if (doc.contains("factors")) {
        const auto& facs = doc.at("factors");
        if (!facs.is_array())
            throw ScenarioFileError("field \"factors\" must be an array of [polynomial, multiplicity]");
        for (std::size_t i = 0; i < facs.size(); ++i) {
            const auto& f = facs[i];
            std::string where = "factors[" + std::to_string(i) + "]";
            if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_integer() ||
                f[1].get<long long>() <= 0)
                throw ScenarioFileError(where + ": expected [polynomial-string, positive multiplicity]");
            MultiPoly p(0);
            try {
                p = MultiPoly::parse(f[0].get<std::string>(), n + 1);
            } catch (const std::exception& e) {
                throw ScenarioFileError(where + ": bad polynomial: " + e.what());
            }
            if (p.is_zero() || p.bidegree().second != 0)
                throw ScenarioFileError(where + ": factor must be a nonzero polynomial in the "
                                                "coefficient block only");
            out.factors.emplace_back(std::move(p), static_cast<unsigned>(f[1].get<long long>()));
        }
    }
    return out;
}

inline ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioFileError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

// Parse a command-line point such as "3,5,7" or "1/2,-1,0" (exact rationals).
inline PointProj parse_point_arg(const std::string& text, std::size_t expect) {
    std::vector<Rational> coords;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        try {
            coords.push_back(Rational::parse(cur));
        } catch (const std::exception& e) {
            throw ScenarioFileError("bad point coordinate \"" + cur + "\": " + e.what());
        }
    }
    if (coords.size() != expect)
        throw ScenarioFileError("point must have " + std::to_string(expect) + " coordinates, got " +
                                std::to_string(coords.size()));
    try {
        return PointProj(std::move(coords));
    } catch (const std::exception& e) {
        throw ScenarioFileError(std::string("bad point: ") + e.what());
    }
}

}  // namespace detform
