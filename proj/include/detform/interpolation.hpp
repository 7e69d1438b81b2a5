#pragma once

#include "detform/matrix.hpp"
#include "detform/multipoly.hpp"
#include "detform/rational.hpp"

#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace detform {

inline unsigned long binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    if (!b.fits_ulong_p()) throw std::overflow_error("binomial: result does not fit");
    return b.get_ui();
}

// binom(d+n,n) = binom(m+n-1,n) + r + 1: the square-matrix bookkeeping that
// makes one degree-d form through r simple points and one m-fold point.
inline bool check_dimension_identity(unsigned n, unsigned d, unsigned m, unsigned long r) {
    return binomial(d + n, n) == binomial(m + n - 1, n) + r + 1;
}

// All multi-indices over `nvars` entries with the given total, graded-lex
// descending (the one fixed enumeration used for basis monomials, partial-row
// orders, and everything else that must be reproducible).
inline std::vector<std::vector<unsigned>> exponents_desc(std::size_t nvars, unsigned total) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned remaining) -> void {
        if (cur.size() + 1 == nvars) {
            cur.push_back(remaining);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (unsigned k = remaining;; --k) {
            cur.push_back(k);
            self(self, remaining - k);
            cur.pop_back();
            if (k == 0) break;
        }
    };
    if (nvars == 0) throw std::invalid_argument("exponents_desc: no variables");
    rec(rec, total);
    return out;
}

class Scenario {
public:
    Scenario(unsigned n, unsigned d, unsigned m, std::vector<PointProj> points)
        : n_(n), d_(d), m_(m), points_(std::move(points)) {
        if (n < 1) throw std::invalid_argument("Scenario: need n >= 1");
        if (m < 1 || d < m) throw std::invalid_argument("Scenario: need d >= m >= 1");
        for (const auto& p : points_)
            if (p.dim() != n + 1)
                throw std::invalid_argument("Scenario: point has wrong coordinate count");
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (points_[i] == points_[j])
                    throw std::invalid_argument("Scenario: points " + std::to_string(i + 1) + " and " +
                                                std::to_string(j + 1) + " coincide projectively");
        if (!check_dimension_identity(n_, d_, m_, points_.size())) {
            std::ostringstream os;
            os << "Scenario: dimension identity violated: C(" << d_ + n_ << "," << n_ << ") = "
               << binomial(d_ + n_, n_) << " but C(" << m_ + n_ - 1 << "," << n_ << ") + r + 1 = "
               << binomial(m_ + n_ - 1, n_) << " + " << points_.size() << " + 1 = "
               << binomial(m_ + n_ - 1, n_) + points_.size() + 1;
            throw std::invalid_argument(os.str());
        }
    }

    unsigned n() const { return n_; }
    unsigned d() const { return d_; }
    unsigned m() const { return m_; }
    std::size_t r() const { return points_.size(); }
    const std::vector<PointProj>& points() const { return points_; }
    std::size_t vars_per_block() const { return n_ + 1; }
    std::size_t basis_size() const { return binomial(d_ + n_, n_); }         // N
    std::size_t partial_row_count() const { return binomial(m_ + n_ - 1, n_); }

private:
    unsigned n_, d_, m_;
    std::vector<PointProj> points_;
};

// The vector w: all degree-d monomials in a_0..a_n, graded-lex descending.
inline std::vector<ExponentVec> monomial_basis(unsigned n, unsigned d) {
    std::vector<ExponentVec> basis;
    for (const auto& t : exponents_desc(n + 1, d)) {
        ExponentVec e(n + 1);
        for (std::size_t i = 0; i <= n; ++i) e.set_a(i, static_cast<std::uint16_t>(t[i]));
        basis.push_back(e);
    }
    return basis;
}

// Rows w(P_i): the conditions a degree-d form must satisfy to pass through the
// given simple points.  Rank = number of independent conditions.
inline Mat<Rational> point_conditions_matrix(unsigned n, unsigned d,
                                             const std::vector<PointProj>& points) {
    auto basis = monomial_basis(n, d);
    Mat<Rational> M(points.size(), basis.size(), Rational(0));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != n + 1)
            throw std::invalid_argument("point_conditions_matrix: wrong coordinate count");
        for (std::size_t k = 0; k < basis.size(); ++k) {
            Rational v(1);
            for (std::size_t c = 0; c <= n; ++c)
                if (basis[k].a(c)) v *= points[i][c].pow(basis[k].a(c));
            M(i, k) = v;
        }
    }
    return M;
}

struct RowTag {
    enum class Kind { Partial, Point, GenericX };
    Kind kind;
    std::vector<unsigned> t;   // derivative multi-index (Partial rows)
    std::size_t point_index;   // 1-based (Point rows)

    static RowTag partial(std::vector<unsigned> t) { return {Kind::Partial, std::move(t), 0}; }
    static RowTag point(std::size_t i) { return {Kind::Point, {}, i}; }
    static RowTag generic_x() { return {Kind::GenericX, {}, 0}; }

    std::string str() const {
        switch (kind) {
            case Kind::Point:
                return "point(" + std::to_string(point_index) + ")";
            case Kind::GenericX:
                return "generic_x";
            case Kind::Partial: {
                std::string s = "partial(";
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(t[i]);
                }
                return s + ")";
            }
        }
        return "";
    }
};

struct InterpolationMatrix {
    Mat<MultiPoly> entries;
    std::vector<RowTag> tags;
    Scenario scenario;
};

namespace detail {

inline MultiPoly basis_monomial_poly(const ExponentVec& e) {
    return MultiPoly::monomial(e, Rational(1));
}

// Row of ∂^{|t|} w_k / ∂a^t across the whole basis.
inline std::vector<MultiPoly> partial_row(const std::vector<ExponentVec>& basis,
                                          const std::vector<unsigned>& t) {
    std::vector<MultiPoly> row;
    row.reserve(basis.size());
    for (const auto& e : basis) row.push_back(basis_monomial_poly(e).derivative_multi(0, t));
    return row;
}

inline std::vector<MultiPoly> point_row(const std::vector<ExponentVec>& basis, const PointProj& P) {
    std::size_t nb = basis.empty() ? 0 : basis.front().vars_per_block();
    std::vector<MultiPoly> row;
    row.reserve(basis.size());
    for (const auto& e : basis)
        row.push_back(basis_monomial_poly(e).substitute(P.coords(), std::nullopt));
    (void)nb;
    return row;
}

inline std::vector<MultiPoly> generic_x_row(const std::vector<ExponentVec>& basis) {
    std::vector<MultiPoly> row;
    row.reserve(basis.size());
    for (const auto& e : basis) row.push_back(MultiPoly::monomial(e.swapped_blocks(), Rational(1)));
    return row;
}

}  // namespace detail

// The square matrix M: order-(m-1) partial rows of w, point rows, generic-x row.
inline InterpolationMatrix build_interpolation_matrix(const Scenario& s) {
    auto basis = monomial_basis(s.n(), s.d());
    std::vector<std::vector<MultiPoly>> rows;
    std::vector<RowTag> tags;
    for (const auto& t : exponents_desc(s.n() + 1, s.m() - 1)) {
        rows.push_back(detail::partial_row(basis, t));
        tags.push_back(RowTag::partial(t));
    }
    for (std::size_t i = 0; i < s.r(); ++i) {
        rows.push_back(detail::point_row(basis, s.points()[i]));
        tags.push_back(RowTag::point(i + 1));
    }
    rows.push_back(detail::generic_x_row(basis));
    tags.push_back(RowTag::generic_x());
    return {Mat<MultiPoly>::from_rows(std::move(rows)), std::move(tags), s};
}

// K_j: the conditions matrix for the fat point jB together with Z — one row per
// order-(j-1) partial of w (these span all orders < j at a nonzero point, by
// Euler's identity) plus the r point rows.  binom(n+j-1,n) + r rows.
inline Mat<MultiPoly> build_Kj(const Scenario& s, unsigned j) {
    if (j < 1 || j > s.m()) throw std::invalid_argument("build_Kj: need 1 <= j <= m");
    auto basis = monomial_basis(s.n(), s.d());
    std::vector<std::vector<MultiPoly>> rows;
    for (const auto& t : exponents_desc(s.n() + 1, j - 1))
        rows.push_back(detail::partial_row(basis, t));
    for (const auto& P : s.points()) rows.push_back(detail::point_row(basis, P));
    return Mat<MultiPoly>::from_rows(std::move(rows));
}

// Square submatrix used in the duality argument: the partial rows and the
// generic-x row, restricted to binom(m+n-1,n)+1 chosen columns.
inline Mat<MultiPoly> build_submatrix_S(const Scenario& s, const std::vector<std::size_t>& columns) {
    std::size_t want = s.partial_row_count() + 1;
    if (columns.size() != want)
        throw std::invalid_argument("build_submatrix_S: need exactly " + std::to_string(want) + " columns");
    std::set<std::size_t> uniq(columns.begin(), columns.end());
    if (uniq.size() != columns.size())
        throw std::invalid_argument("build_submatrix_S: repeated column index");
    if (*uniq.rbegin() >= s.basis_size())
        throw std::invalid_argument("build_submatrix_S: column index out of range");
    auto basis = monomial_basis(s.n(), s.d());
    std::vector<std::vector<MultiPoly>> rows;
    for (const auto& t : exponents_desc(s.n() + 1, s.m() - 1))
        rows.push_back(detail::partial_row(basis, t));
    rows.push_back(detail::generic_x_row(basis));
    return Mat<MultiPoly>::from_rows(std::move(rows)).select_columns(columns);
}

struct EulerReduced {
    Mat<MultiPoly> entries;                 // rows with the a_0 prefactor cleared
    std::vector<unsigned> prefactor_exps;   // e per row: the row carries a_0^{-e}
};

// The reduced matrix: Euler's identity trades the ∂/∂a_0 direction for powers
// of a_0, so derivative rows only use a_1..a_n and carry a_0^{-e} prefactors.
// Row order: derivative order j = 0..m-1 (multi-indices over a_1..a_n graded-lex
// descending within each j, prefactor e = m-1-j), then point rows, then the
// generic-x row.
inline EulerReduced build_euler_reduced(const Scenario& s) {
    auto basis = monomial_basis(s.n(), s.d());
    std::vector<std::vector<MultiPoly>> rows;
    std::vector<unsigned> pref;
    for (unsigned j = 0; j < s.m(); ++j) {
        for (const auto& t_tail : exponents_desc(s.n(), j)) {
            std::vector<unsigned> t(s.n() + 1, 0);
            for (std::size_t i = 0; i < t_tail.size(); ++i) t[i + 1] = t_tail[i];
            rows.push_back(detail::partial_row(basis, t));
            pref.push_back(s.m() - 1 - j);
        }
    }
    for (const auto& P : s.points()) rows.push_back(detail::point_row(basis, P));
    pref.insert(pref.end(), s.r(), 0);
    rows.push_back(detail::generic_x_row(basis));
    pref.push_back(0);
    return {Mat<MultiPoly>::from_rows(std::move(rows)), std::move(pref)};
}

}  // namespace detform
