// detform: build interpolation matrices from point configurations, take their
// bihomogeneous determinants exactly, and check the determinant's geometry
// (multiplicities, specialization duality, rank deficiencies, factor claims).
//
// Exit codes: 0 success / all checks pass; 1 a theorem check failed;
//             2 invalid input or an infeasible request.

#include "detform/analysis.hpp"
#include "detform/determinant.hpp"
#include "detform/interpolation.hpp"
#include "detform/scenario_io.hpp"
#include "detform/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace detform;

int cmd_build(const std::string& path) {
    ScenarioFile sf = load_scenario_file(path);
    InterpolationMatrix M = build_interpolation_matrix(sf.scenario);
    std::ostringstream out;
    std::size_t N = M.entries.rows();
    out << "N " << N << "\n";
    for (std::size_t i = 0; i < N; ++i) {
        out << "row " << i << " " << M.tags[i].str() << ":";
        for (std::size_t j = 0; j < N; ++j) out << (j ? ", " : " ") << M.entries(i, j).str();
        out << "\n";
    }
    std::cout << out.str();
    return 0;
}

int cmd_det(const std::string& path, const std::string& engine) {
    ScenarioFile sf = load_scenario_file(path);
    InterpolationMatrix M = build_interpolation_matrix(sf.scenario);
    MultiPoly F(sf.scenario.vars_per_block());
    if (engine == "laplace")
        F = det_laplace(M.entries);
    else if (engine == "bareiss")
        F = det_bareiss(M.entries);
    else
        F = det_point_row_reduced(M);
    std::cout << (F.is_zero() ? std::string("ZERO") : F.str()) << "\n";
    return 0;
}

int cmd_verify(const std::string& path, const std::string& point_arg, bool all_theorems) {
    ScenarioFile sf = load_scenario_file(path);
    std::optional<PointProj> B;
    if (!point_arg.empty())
        B = parse_point_arg(point_arg, sf.scenario.vars_per_block());
    BihomForm F = assemble_F(sf.scenario);
    VerificationReport rep = run_verification(F, B, all_theorems);
    std::cout << rep.str();
    return rep.any_fail() ? 1 : 0;
}

int cmd_rank(const std::string& path, const std::string& point_arg) {
    ScenarioFile sf = load_scenario_file(path);
    PointProj B = parse_point_arg(point_arg, sf.scenario.vars_per_block());
    const Scenario& s = sf.scenario;
    std::ostringstream out;
    std::size_t k = 0;
    for (unsigned j = 1; j <= s.m(); ++j) {
        auto Kj = build_Kj(s, j);
        std::size_t rank = rank_at_point(Kj, B);
        std::size_t kj = Kj.rows() - rank;
        k += kj;
        out << "j " << j << ": rows " << Kj.rows() << " rank " << rank << " dim_L "
            << s.basis_size() - rank << " k_j " << kj << "\n";
    }
    out << "k " << k << "\n";
    std::cout << out.str();
    return 0;
}

int cmd_strip(const std::string& path) {
    ScenarioFile sf = load_scenario_file(path);
    BihomForm F = assemble_F(sf.scenario);
    try {
        FactorizationRecord rec = strip_factors(F, sf.factors);
        std::ostringstream out;
        out << "content " << rec.content.str() << "\n";
        for (const auto& [f, mult] : rec.factors)
            out << "factor " << f.str() << " multiplicity " << mult << "\n";
        out << "G " << rec.G.str() << "\n";
        std::cout << out.str();
        return 0;
    } catch (const NotDivisibleError& e) {
        std::cout << "STRIP FAIL " << e.what() << "\n";
        return 1;
    }
}

int cmd_members(const std::string& path) {
    ScenarioFile sf = load_scenario_file(path);
    BihomForm F = assemble_F(sf.scenario);
    std::vector<PointProj> pts;
    for (const auto& [name, P] : sf.candidates) pts.push_back(P);
    std::vector<std::size_t> members = unexpected_locus_members(F, pts);
    std::ostringstream out;
    std::size_t next = 0;
    for (std::size_t i = 0; i < sf.candidates.size(); ++i) {
        bool is_member = next < members.size() && members[next] == i;
        if (is_member) ++next;
        out << (is_member ? "MEMBER " : "NONMEMBER ") << sf.candidates[i].first << " "
            << sf.candidates[i].second.str() << "\n";
    }
    std::cout << out.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bihomogeneous interpolation determinants"};
    app.require_subcommand(1);

    std::string path, engine = "reduced", point;
    bool all_theorems = false;

    auto* build = app.add_subcommand("build", "print the interpolation matrix with row tags");
    build->add_option("scenario", path, "scenario file")->required();

    auto* det = app.add_subcommand("det", "print the determinant in canonical form, or ZERO");
    det->add_option("scenario", path, "scenario file")->required();
    det->add_option("--engine", engine, "laplace | bareiss | reduced")
        ->check(CLI::IsMember({"laplace", "bareiss", "reduced"}));

    auto* verify = app.add_subcommand("verify", "run the theorem checks and print CHECK lines");
    verify->add_option("scenario", path, "scenario file")->required();
    verify->add_option("--point", point, "base point B as comma-separated exact rationals");
    verify->add_flag("--all-theorems", all_theorems, "also run the point-free cross-checks");

    auto* rank = app.add_subcommand("rank", "rank deficiencies of the conditions matrices at a point");
    rank->add_option("scenario", path, "scenario file")->required();
    rank->add_option("--point", point, "base point B as comma-separated exact rationals")->required();

    auto* strip = app.add_subcommand("strip", "divide out the scenario's declared factors");
    strip->add_option("scenario", path, "scenario file")->required();

    auto* members = app.add_subcommand("members", "test the scenario's candidate points for membership");
    members->add_option("scenario", path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_build(path);
        if (det->parsed()) return cmd_det(path, engine);
        if (verify->parsed()) return cmd_verify(path, point, all_theorems);
        if (rank->parsed()) return cmd_rank(path, point);
        if (strip->parsed()) return cmd_strip(path);
        if (members->parsed()) return cmd_members(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
