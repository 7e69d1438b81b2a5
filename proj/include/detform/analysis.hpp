#pragma once

#include "detform/determinant.hpp"
#include "detform/interpolation.hpp"
#include "detform/matrix.hpp"
#include "detform/multipoly.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detform {

// The bihomogeneous determinant together with its cofactor decomposition
// along the generic row: F = Σ_k w_k(x)·cof_k(a), term-exactly.
struct BihomForm {
    MultiPoly F;
    std::pair<unsigned, unsigned> bidegree;  // (0,0) when F ≡ 0
    CofactorStructure cofactors;
    Scenario scenario;

    bool is_identically_zero() const { return F.is_zero(); }
};

// Expected bidegree of a nonzero determinant: (binom(m+n-1,n)·(d-m+1), d).
inline std::pair<unsigned, unsigned> expected_bidegree(const Scenario& s) {
    return {static_cast<unsigned>(binomial(s.m() + s.n() - 1, s.n())) * (s.d() - s.m() + 1), s.d()};
}

// Build M, take the determinant by point-row reduction, and independently by
// the cofactor expansion along the generic row.  The two must agree; F ≡ 0 is
// therefore certified by every cofactor vanishing, never by sampling.
inline BihomForm assemble_F(const Scenario& s) {
    InterpolationMatrix M = build_interpolation_matrix(s);
    MultiPoly F = det_point_row_reduced(M);
    CofactorStructure cof = cofactors_last_row(M.entries);

    std::size_t N = M.entries.rows();
    MultiPoly recon(s.vars_per_block());
    for (std::size_t k = 0; k < N; ++k) recon += M.entries(N - 1, k) * cof.cofactors[k];
    if (recon != F)
        throw std::logic_error("assemble_F: cofactor expansion disagrees with point-row reduction");

    std::pair<unsigned, unsigned> bd{0, 0};
    if (!F.is_zero()) {
        bd = F.bidegree();
        if (!F.is_bihomogeneous() || bd != expected_bidegree(s))
            throw std::logic_error("assemble_F: determinant violates the bidegree law");
    }
    return {std::move(F), bd, std::move(cof), s};
}

enum class Block { First, Second };

// F_L = F(B, x): substitute the a-block, leaving a form in x.
// F_S / F_R = F(a, S): substitute the x-block, leaving a form in a.
inline MultiPoly specialize(const BihomForm& F, Block block, const PointProj& P) {
    if (P.dim() != F.scenario.vars_per_block())
        throw std::invalid_argument("specialize: wrong coordinate count");
    if (block == Block::First) return F.F.substitute(P.coords(), std::nullopt);
    return F.F.substitute(std::nullopt, P.coords());
}

namespace detail {

// Which block a one-block form lives in; rejects genuinely mixed polynomials.
inline int active_block(const MultiPoly& f) {
    auto [da, dx] = f.bidegree();
    if (da != 0 && dx != 0)
        throw std::invalid_argument("expected a polynomial in a single variable block");
    return dx != 0 ? 1 : 0;
}

inline Rational eval_in_block(const MultiPoly& f, int block, const std::vector<Rational>& coords) {
    MultiPoly v = block == 0 ? f.substitute(coords, std::nullopt) : f.substitute(std::nullopt, coords);
    return v.is_zero() ? Rational(0) : v.leading_coefficient();
}

}  // namespace detail

// Multiplicity of the hypersurface f = 0 at the projective point P: the
// smallest total order of a partial not vanishing at P, computed in the affine
// chart of P's largest-index nonzero coordinate.
inline unsigned vanishing_order_at(const MultiPoly& f, const PointProj& P) {
    if (f.is_zero()) throw std::domain_error("vanishing_order_at: zero polynomial");
    if (P.dim() != f.vars_per_block())
        throw std::invalid_argument("vanishing_order_at: wrong coordinate count");
    int block = detail::active_block(f);
    if (!f.is_homogeneous_in_block(block))
        throw std::invalid_argument("vanishing_order_at: polynomial not homogeneous");
    std::size_t nb = f.vars_per_block();
    std::size_t pivot = nb;
    for (std::size_t i = 0; i < nb; ++i)
        if (!P[i].is_zero()) pivot = i;

    std::vector<std::size_t> affine_vars;
    for (std::size_t i = 0; i < nb; ++i)
        if (i != pivot) affine_vars.push_back(i);

    unsigned max_order = f.total_degree();
    for (unsigned v = 0; v <= max_order; ++v) {
        for (const auto& t : exponents_desc(affine_vars.size(), v)) {
            std::vector<unsigned> full(nb, 0);
            for (std::size_t i = 0; i < affine_vars.size(); ++i) full[affine_vars[i]] = t[i];
            MultiPoly df = f.derivative_multi(block, full);
            if (!df.is_zero() && !detail::eval_in_block(df, block, P.coords()).is_zero()) return v;
        }
    }
    throw std::logic_error("vanishing_order_at: no nonvanishing partial found");
}

struct TangentCone {
    PointProj base;
    unsigned m;
    MultiPoly cone;  // homogeneous of degree m, always written in the x-block
};

// Taylor truncation Σ_{|j|=m} (1/j!)·∂^j f(P)·x^j — the degree-m initial form
// of f at P, i.e. the tangent cone of a multiplicity-m point.
inline TangentCone tangent_cone(const MultiPoly& f, const PointProj& P, unsigned m) {
    unsigned ord = vanishing_order_at(f, P);
    if (ord != m)
        throw std::domain_error("tangent_cone: multiplicity at the point is " + std::to_string(ord) +
                                ", not " + std::to_string(m));
    int block = detail::active_block(f);
    std::size_t nb = f.vars_per_block();
    MultiPoly cone(nb);
    for (const auto& j : exponents_desc(nb, m)) {
        MultiPoly df = f.derivative_multi(block, j);
        if (df.is_zero()) continue;
        Rational val = detail::eval_in_block(df, block, P.coords());
        if (val.is_zero()) continue;
        mpz_class fact = 1;
        for (unsigned ji : j) {
            mpz_class fj;
            mpz_fac_ui(fj.get_mpz_t(), ji);
            fact *= fj;
        }
        ExponentVec e(nb);
        for (std::size_t i = 0; i < nb; ++i) e.set_x(i, static_cast<std::uint16_t>(j[i]));
        cone += MultiPoly::monomial(e, val / Rational(fact));
    }
    return {P, m, std::move(cone)};
}

// One order-m partial pair of the two specializations.
struct DualityPair {
    std::vector<unsigned> t;
    Rational left, right;  // ∂^t F_L(B) and ∂^t F_R(B)
    bool matched;          // left == (-1)^m · right
};

struct BmssReport {
    bool hypothesis_ok;       // F_L ≢ 0
    std::vector<DualityPair> pairs;
    bool pairs_ok;
    unsigned order_left;            // vanishing order of F_L at B (when F_L ≠ 0)
    bool cone_applicable;           // hypothesis holds and order_left == m exactly
    bool cones_equal;               // primitive cones coincide (when applicable)
    std::optional<TangentCone> cone_left, cone_right;
};

// Order-m partials of the left and right specializations at B match up to
// (-1)^m, and when the multiplicity is exactly m the two tangent cones agree.
inline BmssReport check_bmss_duality(const BihomForm& F, const PointProj& B) {
    const unsigned m = F.scenario.m();
    const std::size_t nb = F.scenario.vars_per_block();
    BmssReport rep{};
    MultiPoly FL = specialize(F, Block::First, B);
    MultiPoly FR = specialize(F, Block::Second, B).swap_blocks();  // as a form in x
    rep.hypothesis_ok = !FL.is_zero();

    Rational sign = (m % 2) ? Rational(-1) : Rational(1);
    rep.pairs_ok = true;
    for (const auto& t : exponents_desc(nb, m)) {
        MultiPoly dL = FL.derivative_multi(1, t);
        MultiPoly dR = FR.derivative_multi(1, t);
        Rational vL = dL.is_zero() ? Rational(0) : detail::eval_in_block(dL, 1, B.coords());
        Rational vR = dR.is_zero() ? Rational(0) : detail::eval_in_block(dR, 1, B.coords());
        bool ok = (vL == sign * vR);
        rep.pairs_ok = rep.pairs_ok && ok;
        rep.pairs.push_back({t, vL, vR, ok});
    }

    rep.order_left = 0;
    rep.cone_applicable = false;
    rep.cones_equal = false;
    if (rep.hypothesis_ok) {
        rep.order_left = vanishing_order_at(FL, B);
        if (rep.order_left == m) {
            rep.cone_applicable = true;
            rep.cone_left = tangent_cone(FL, B, m);
            rep.cone_right = tangent_cone(FR, B, m);
            auto [cl, pl] = content_and_primitive(rep.cone_left->cone);
            auto [cr, pr] = content_and_primitive(rep.cone_right->cone);
            rep.cones_equal = (pl == pr);
        }
    }
    return rep;
}

// Lemma-style moment identities: Σ_k C_k·α_k^t = 0 for every |t| ≤ m-1, 0⁰ = 1.
inline bool lemma_moment_identities(const SCofactorData& data, unsigned m) {
    std::size_t nb = data.A.size();
    for (unsigned v = 0; v + 1 <= m; ++v) {
        for (const auto& t : exponents_desc(nb, v)) {
            Rational sum(0);
            for (std::size_t k = 0; k < data.C.size(); ++k) {
                Rational term = data.C[k];
                for (std::size_t i = 0; i < nb; ++i)
                    if (t[i]) term *= Rational(static_cast<long>(data.alpha[k][i])).pow(t[i]);
                sum += term;
            }
            if (!sum.is_zero()) return false;
        }
    }
    return true;
}

struct SuperabundanceRow {
    unsigned j;
    std::size_t row_count;   // binom(n+j-1,n) + r
    std::size_t rank;        // rank of K_j(B)
    std::size_t dim_Lj;      // N - rank
    std::size_t k_j;         // rank deficiency = excess over the expected dimension
};

struct SuperabundanceReport {
    std::vector<SuperabundanceRow> rows;
    std::size_t k;             // Σ k_j
    bool f_zero;               // F ≡ 0: membership trivial at every order
    unsigned verified_order;   // largest v: all a-partials of order < v vanish at B
    bool membership_ok;        // verified_order ≥ k (or f_zero)
};

// k_j from the rank deficiency of the conditions matrix K_j at B, and the
// direct verification that F lies in the k-th power of B's fat-point ideal.
inline SuperabundanceReport superabundance(const BihomForm& F, const PointProj& B) {
    const Scenario& s = F.scenario;
    SuperabundanceReport rep{};
    rep.k = 0;
    for (unsigned j = 1; j <= s.m(); ++j) {
        auto Kj = build_Kj(s, j);
        std::size_t rank = rank_at_point(Kj, B);
        std::size_t kj = Kj.rows() - rank;
        rep.rows.push_back({j, Kj.rows(), rank, s.basis_size() - rank, kj});
        rep.k += kj;
    }
    rep.f_zero = F.is_identically_zero();
    rep.verified_order = 0;
    if (!rep.f_zero) {
        unsigned max_order = F.bidegree.first;
        for (unsigned v = 0; v <= max_order + 1; ++v) {
            bool all_vanish = true;
            for (const auto& t : exponents_desc(s.vars_per_block(), v)) {
                MultiPoly df = F.F.derivative_multi(0, t);
                if (!df.substitute(B.coords(), std::nullopt).is_zero()) {
                    all_vanish = false;
                    break;
                }
            }
            if (!all_vanish) {
                rep.verified_order = v;
                break;
            }
        }
    }
    rep.membership_ok = rep.f_zero || rep.verified_order >= rep.k;
    return rep;
}

class NotDivisibleError : public std::runtime_error {
public:
    NotDivisibleError(std::size_t factor_index, unsigned copy_index, const std::string& factor_text)
        : std::runtime_error("not divisible by factor #" + std::to_string(factor_index + 1) +
                             " (copy " + std::to_string(copy_index) + " of " + factor_text + ")"),
          factor_index(factor_index),
          copy_index(copy_index) {}
    std::size_t factor_index;
    unsigned copy_index;
};

struct FactorizationRecord {
    std::vector<std::pair<MultiPoly, unsigned>> factors;
    MultiPoly G;        // primitive quotient
    Rational content;   // content · Π factors^mult · G = F
};

// Divide out the supplied factors one copy at a time, then normalize what is
// left.  An inexact division aborts with the offending factor identified.
inline FactorizationRecord strip_factors(const BihomForm& F,
                                         const std::vector<std::pair<MultiPoly, unsigned>>& factors) {
    if (F.is_identically_zero()) throw std::domain_error("strip_factors: F is identically zero");
    MultiPoly Q = F.F;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& [f, mult] = factors[i];
        if (f.is_zero()) throw std::domain_error("strip_factors: zero factor");
        if (f.bidegree().second != 0)
            throw std::invalid_argument("strip_factors: factor involves the x-block");
        for (unsigned c = 1; c <= mult; ++c) {
            auto q = exact_divide(Q, f);
            if (!q) throw NotDivisibleError(i, c, f.str());
            Q = std::move(*q);
        }
    }
    auto [content, G] = content_and_primitive(Q);
    return {factors, std::move(G), content};
}

// Candidates S with F(a, S) ≡ 0 — the locus where one degree-d form fails to
// be unique.  Returns indices into the candidate list.
inline std::vector<std::size_t> unexpected_locus_members(const BihomForm& F,
                                                         const std::vector<PointProj>& candidates) {
    if (F.is_identically_zero())
        throw std::domain_error("unexpected_locus_members: F is identically zero");
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (specialize(F, Block::Second, candidates[i]).is_zero()) members.push_back(i);
    return members;
}

struct EulerCrossCheck {
    bool consistent;
    unsigned cleared_power;       // E = Σ per-row prefactor exponents
    Rational ratio;               // det(cleared reduced matrix) / (a_0^E · F), when F ≠ 0
    std::size_t samples;
};

// The reduced matrix must reproduce det(M) up to one fixed scalar and the
// cleared power of a_0; checked at sample points with a_0 ≠ 0 and F ≠ 0.
inline EulerCrossCheck euler_cross_check(const BihomForm& F, std::size_t min_samples = 3,
                                         std::uint64_t seed = 424242) {
    const Scenario& s = F.scenario;
    EulerReduced red = build_euler_reduced(s);
    unsigned E = 0;
    for (unsigned e : red.prefactor_exps) E += e;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-9, 9);
    std::size_t nb = s.vars_per_block();
    EulerCrossCheck out{true, E, Rational(0), 0};
    bool have_ratio = false;
    std::size_t guard = 0;
    while (out.samples < min_samples) {
        if (++guard > 1000) throw std::logic_error("euler_cross_check: cannot find admissible sample points");
        std::vector<Rational> a_pt, x_pt;
        for (std::size_t i = 0; i < nb; ++i) a_pt.emplace_back(coord(rng));
        for (std::size_t i = 0; i < nb; ++i) x_pt.emplace_back(coord(rng));
        if (a_pt[0].is_zero()) continue;

        Mat<Rational> Ehat(red.entries.rows(), red.entries.cols(), Rational(0));
        for (std::size_t i = 0; i < red.entries.rows(); ++i)
            for (std::size_t j = 0; j < red.entries.cols(); ++j)
                Ehat(i, j) = red.entries(i, j).evaluate(a_pt, x_pt);
        Rational det_hat = det_rational(Ehat);

        if (F.is_identically_zero()) {
            // c·det(reduced) = det(M) = 0 with c ≠ 0 forces the reduced
            // determinant to vanish too
            out.consistent = out.consistent && det_hat.is_zero();
            ++out.samples;
            continue;
        }
        Rational fval = F.F.evaluate(a_pt, x_pt);
        if (fval.is_zero()) continue;
        Rational ratio = det_hat / (a_pt[0].pow(E) * fval);
        if (!have_ratio) {
            out.ratio = ratio;
            have_ratio = true;
        } else if (ratio != out.ratio) {
            out.consistent = false;
        }
        ++out.samples;
    }
    if (!F.is_identically_zero() && out.ratio.is_zero()) out.consistent = false;
    return out;
}

}  // namespace detform
