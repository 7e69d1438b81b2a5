#pragma once

#include "detform/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace detform {

enum class CheckStatus { Pass, Fail, HypothesisViolated };

struct CheckLine {
    std::string name;
    CheckStatus status;
    std::string details;

    std::string str() const {
        const char* s = status == CheckStatus::Pass             ? "PASS"
                        : status == CheckStatus::Fail           ? "FAIL"
                                                                : "HYPOTHESIS-VIOLATED";
        return "CHECK " + name + " " + s + " " + details;
    }
};

struct VerificationReport {
    std::vector<CheckLine> lines;

    bool any_fail() const {
        for (const auto& l : lines)
            if (l.status == CheckStatus::Fail) return true;
        return false;
    }

    std::string str() const {
        std::string out;
        for (const auto& l : lines) out += l.str() + "\n";
        return out;
    }
};

namespace detail {

inline std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

inline CheckLine check_dimension_identity_line(const Scenario& s) {
    // the constructor enforces the identity; restate both sides for the record
    std::size_t lhs = static_cast<std::size_t>(binomial(s.d() + s.n(), s.n()));
    std::size_t partials = s.partial_row_count();
    bool ok = check_dimension_identity(s.n(), s.d(), s.m(), s.r());
    std::ostringstream det;
    det << lhs << " = " << partials << " + " << s.r() << " + 1";
    return {"dimension-identity", ok ? CheckStatus::Pass : CheckStatus::Fail, det.str()};
}

inline CheckLine check_bidegree_line(const BihomForm& F) {
    if (F.is_identically_zero())
        return {"bidegree", CheckStatus::Pass, "determinant identically zero; not applicable"};
    auto expect = expected_bidegree(F.scenario);
    bool ok = F.F.is_bihomogeneous() && F.F.bidegree() == expect;
    std::ostringstream det;
    det << "(" << F.F.bidegree().first << ", " << F.F.bidegree().second << ") expected ("
        << expect.first << ", " << expect.second << ")";
    return {"bidegree", ok ? CheckStatus::Pass : CheckStatus::Fail, det.str()};
}

inline CheckLine check_zero_certification_line(const BihomForm& F) {
    if (!F.is_identically_zero())
        return {"zero-certification", CheckStatus::Pass, "determinant nonzero; certificate not required"};
    std::size_t zeros = 0;
    for (const auto& c : F.cofactors.cofactors)
        if (c.is_zero()) ++zeros;
    bool ok = zeros == F.cofactors.cofactors.size();
    std::ostringstream det;
    det << zeros << " of " << F.cofactors.cofactors.size() << " generic-row cofactors vanish identically";
    return {"zero-certification", ok ? CheckStatus::Pass : CheckStatus::Fail, det.str()};
}

inline CheckLine check_multiplicity_line(const BihomForm& F, const PointProj& B) {
    const unsigned m = F.scenario.m();
    MultiPoly FS = specialize(F, Block::Second, B);
    if (FS.is_zero())
        return {"multiplicity", CheckStatus::Pass,
                "F(a, S) is identically zero: S lies in the unexpected locus"};
    std::vector<std::size_t> orders;
    unsigned at_S = vanishing_order_at(FS, B);
    bool ok = at_S >= m;
    for (const auto& P : F.scenario.points()) {
        unsigned o = vanishing_order_at(FS, P);
        ok = ok && o >= m;
        orders.push_back(o);
    }
    std::ostringstream det;
    det << "order " << at_S << " at S; orders " << join_sizes(orders)
        << " at the configuration points (m = " << m << ")";
    return {"multiplicity", ok ? CheckStatus::Pass : CheckStatus::Fail, det.str()};
}

inline std::vector<CheckLine> check_duality_lines(const BihomForm& F, const PointProj& B) {
    const unsigned m = F.scenario.m();
    BmssReport rep = check_bmss_duality(F, B);
    std::vector<CheckLine> out;
    if (!rep.hypothesis_ok) {
        out.push_back({"duality-partials", CheckStatus::HypothesisViolated,
                       "F(B, x) vanishes identically at this base point"});
        out.push_back({"duality-cones", CheckStatus::HypothesisViolated,
                       "F(B, x) vanishes identically at this base point"});
        return out;
    }
    {
        std::ostringstream det;
        det << rep.pairs.size() << " order-" << m << " partial pairs match with sign "
            << (m % 2 ? "-1" : "+1");
        out.push_back({"duality-partials", rep.pairs_ok ? CheckStatus::Pass : CheckStatus::Fail,
                       rep.pairs_ok ? det.str() : "partial pairs disagree"});
    }
    if (!rep.cone_applicable) {
        std::ostringstream det;
        det << "multiplicity of F(B, x) at B is " << rep.order_left << ", not " << m;
        out.push_back({"duality-cones", CheckStatus::HypothesisViolated, det.str()});
    } else {
        out.push_back({"duality-cones", rep.cones_equal ? CheckStatus::Pass : CheckStatus::Fail,
                       rep.cones_equal ? "primitive tangent cones of the two specializations agree"
                                       : "tangent cones differ"});
    }
    return out;
}

inline CheckLine check_superabundance_line(const BihomForm& F, const PointProj& B) {
    SuperabundanceReport rep = superabundance(F, B);
    std::vector<std::size_t> kjs;
    for (const auto& row : rep.rows) kjs.push_back(row.k_j);
    std::ostringstream det;
    if (rep.f_zero) {
        det << "k = " << rep.k << " (k_j = " << join_sizes(kjs)
            << "); determinant identically zero, membership trivial";
    } else {
        det << "k = " << rep.k << " (k_j = " << join_sizes(kjs) << "); exact vanishing order "
            << rep.verified_order << " in the coefficient block at B";
    }
    return {"superabundance", rep.membership_ok ? CheckStatus::Pass : CheckStatus::Fail, det.str()};
}

inline CheckLine check_moment_identities_line(const BihomForm& F) {
    const Scenario& s = F.scenario;
    std::size_t want = s.partial_row_count() + 1;
    std::size_t N = s.basis_size();
    std::vector<std::vector<std::size_t>> subsets;
    {
        std::vector<std::size_t> first(want), last(want);
        std::iota(first.begin(), first.end(), 0);
        std::iota(last.begin(), last.end(), N - want);
        subsets.push_back(first);
        subsets.push_back(last);
    }
    std::mt19937_64 rng(8675309);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<std::size_t> all(N);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<std::size_t> cols(all.begin(), all.begin() + want);
        std::sort(cols.begin(), cols.end());
        subsets.push_back(std::move(cols));
    }
    bool ok = true;
    for (const auto& cols : subsets) {
        SCofactorData data = extract_monomial_cofactors(build_submatrix_S(s, cols));
        ok = ok && lemma_moment_identities(data, s.m());
    }
    std::ostringstream det;
    det << "identities of order <= " << s.m() - 1 << " hold on " << subsets.size()
        << " sampled column subsets";
    return {"moment-identities", ok ? CheckStatus::Pass : CheckStatus::Fail,
            ok ? det.str() : "a moment identity failed"};
}

inline CheckLine check_reduced_matrix_line(const BihomForm& F) {
    EulerCrossCheck chk = euler_cross_check(F);
    std::ostringstream det;
    if (F.is_identically_zero()) {
        det << "reduced determinant vanishes at " << chk.samples
            << " sample points (determinant identically zero)";
    } else {
        det << "ratio " << chk.ratio.str() << " with cleared power a_0^" << chk.cleared_power
            << " constant across " << chk.samples << " sample points";
    }
    return {"reduced-matrix", chk.consistent ? CheckStatus::Pass : CheckStatus::Fail,
            chk.consistent ? det.str() : "reduced-matrix ratio is not constant"};
}

inline CheckLine check_cofactor_reconstruction_line(const BihomForm& F) {
    InterpolationMatrix M = build_interpolation_matrix(F.scenario);
    std::size_t N = M.entries.rows();
    MultiPoly recon(F.scenario.vars_per_block());
    for (std::size_t k = 0; k < N; ++k)
        recon += M.entries(N - 1, k) * F.cofactors.cofactors[k];
    bool ok = recon == F.F;
    return {"cofactor-reconstruction", ok ? CheckStatus::Pass : CheckStatus::Fail,
            ok ? "generic-row expansion reproduces the determinant"
               : "generic-row expansion disagrees with the determinant"};
}

}  // namespace detail

// Assemble the machine-parsable check report.  Point-dependent checks run only
// when a base point is supplied; --all-theorems adds the structural
// cross-checks that do not depend on a base point.
inline VerificationReport run_verification(const BihomForm& F, const std::optional<PointProj>& B,
                                           bool all_theorems) {
    VerificationReport rep;
    rep.lines.push_back(detail::check_dimension_identity_line(F.scenario));
    rep.lines.push_back(detail::check_bidegree_line(F));
    rep.lines.push_back(detail::check_zero_certification_line(F));
    if (B) {
        rep.lines.push_back(detail::check_multiplicity_line(F, *B));
        for (auto& l : detail::check_duality_lines(F, *B)) rep.lines.push_back(std::move(l));
        rep.lines.push_back(detail::check_superabundance_line(F, *B));
    }
    if (all_theorems) {
        rep.lines.push_back(detail::check_moment_identities_line(F));
        rep.lines.push_back(detail::check_reduced_matrix_line(F));
        rep.lines.push_back(detail::check_cofactor_reconstruction_line(F));
    }
    return rep;
}

}  // namespace detform
