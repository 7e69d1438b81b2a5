#pragma once

#include "detform/interpolation.hpp"
#include "detform/matrix.hpp"
#include "detform/multipoly.hpp"
#include "detform/prime_field.hpp"
#include "detform/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace detform {

namespace detail {

inline std::size_t ring_width(const Mat<MultiPoly>& A) {
    if (A.rows() == 0 || A.cols() == 0) throw std::invalid_argument("determinant: empty matrix");
    return A(0, 0).vars_per_block();
}

}  // namespace detail

// Reference implementation: cofactor expansion with column-subset memoization.
// Intended for small matrices; refuses sides beyond the cap.
inline MultiPoly det_laplace(const Mat<MultiPoly>& A, std::size_t cap = 8) {
    if (!A.is_square()) throw std::invalid_argument("det_laplace: matrix not square");
    std::size_t n = A.rows();
    if (n > cap) throw std::invalid_argument("det_laplace: side " + std::to_string(n) +
                                             " exceeds cap " + std::to_string(cap));
    std::size_t nb = detail::ring_width(A);
    std::map<std::uint32_t, MultiPoly> memo;
    auto rec = [&](auto&& self, std::uint32_t mask, std::size_t row) -> MultiPoly {
        if (mask == 0) return MultiPoly::constant(nb, Rational(1));
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        MultiPoly acc(nb);
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;  // sign alternates over available columns only
            if (!A(row, j).is_zero()) {
                MultiPoly sub = self(self, mask & ~(1u << j), row + 1);
                MultiPoly term = A(row, j) * sub;
                acc += sign > 0 ? term : term * Rational(-1);
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, (n >= 32 ? ~0u : (1u << n) - 1u), 0);
}

// Fraction-free one-step elimination with full pivoting.  Pivot choice: lowest
// total degree among nonzero candidates, ties by column then row index —
// deterministic and keeps intermediate minors small.  A structurally singular
// matrix exits early with 0.
inline MultiPoly det_bareiss(Mat<MultiPoly> A) {
    if (!A.is_square()) throw std::invalid_argument("det_bareiss: matrix not square");
    std::size_t n = A.rows();
    std::size_t nb = detail::ring_width(A);
    MultiPoly prev = MultiPoly::constant(nb, Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pi = n, pj = n;
        unsigned best_deg = 0;
        for (std::size_t j = k; j < n; ++j)
            for (std::size_t i = k; i < n; ++i) {
                if (A(i, j).is_zero()) continue;
                unsigned deg = A(i, j).total_degree();
                if (pi == n || deg < best_deg) { best_deg = deg; pi = i; pj = j; }
            }
        if (pi == n) return MultiPoly(nb);  // no nonzero entry left: det = 0
        if (pi != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(pi, j), A(k, j));
            sign = -sign;
        }
        if (pj != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(A(i, pj), A(i, k));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = A(k, k) * A(i, j) - A(i, k) * A(k, j);
                auto q = exact_divide(num, prev);
                if (!q) throw std::logic_error("det_bareiss: inexact division (should be impossible)");
                A(i, j) = std::move(*q);
            }
        prev = A(k, k);
    }
    MultiPoly det = A(n - 1, n - 1);
    return sign < 0 ? det * Rational(-1) : det;
}

// Determinant that first eliminates rows of constants (the point rows) by
// exact rational pivoting — each such row contributes a scalar factor and a
// sign — then finishes the remaining polynomial block with det_bareiss.
inline MultiPoly det_point_row_reduced(Mat<MultiPoly> A) {
    if (!A.is_square()) throw std::invalid_argument("det_point_row_reduced: matrix not square");
    std::size_t nb = detail::ring_width(A);
    Rational factor(1);

    while (A.rows() > 0) {
        std::size_t n = A.rows();
        std::size_t ci = n;
        for (std::size_t i = 0; i < n && ci == n; ++i) {
            bool constant = true;
            for (std::size_t j = 0; j < n; ++j)
                constant = constant && (A(i, j).is_zero() || A(i, j).total_degree() == 0);
            if (constant) ci = i;
        }
        if (ci == n) break;
        std::size_t cj = n;
        for (std::size_t j = 0; j < n && cj == n; ++j)
            if (!A(ci, j).is_zero()) cj = j;
        if (cj == n) return MultiPoly(nb);  // zero row
        Rational pivot = A(ci, cj).leading_coefficient();
        // clear column cj with row ci (adding polynomial multiples of a row
        // leaves the determinant unchanged), then expand along that column
        for (std::size_t i = 0; i < n; ++i) {
            if (i == ci || A(i, cj).is_zero()) continue;
            MultiPoly q = A(i, cj) * pivot.inverse();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == cj || A(ci, j).is_zero()) continue;
                A(i, j) -= q * A(ci, j);
            }
            A(i, cj) = MultiPoly(nb);
        }
        factor *= ((ci + cj) % 2 ? -pivot : pivot);
        A = A.without_row_col(ci, cj);
    }
    if (A.rows() == 0) return MultiPoly::constant(nb, factor);
    return det_bareiss(std::move(A)) * factor;
}

inline MultiPoly det_point_row_reduced(const InterpolationMatrix& M) {
    return det_point_row_reduced(M.entries);
}

// Signed cofactors of the last row: det = Σ_k entry(N-1, k) · cofactors[k].
struct CofactorStructure {
    std::vector<MultiPoly> cofactors;
};

inline CofactorStructure cofactors_last_row(const Mat<MultiPoly>& A) {
    if (!A.is_square()) throw std::invalid_argument("cofactors_last_row: matrix not square");
    std::size_t n = A.rows();
    CofactorStructure cs;
    cs.cofactors.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        MultiPoly minor = det_point_row_reduced(A.without_row_col(n - 1, k));
        cs.cofactors.push_back(((n - 1) + k) % 2 ? minor * Rational(-1) : std::move(minor));
    }
    return cs;
}

// Monomial-shaped cofactor data for the duality submatrices: cofactor k is the
// single term C_k · a^{A − α_k}, where x^{α_k} is the last-row monomial of
// column k and A is one fixed exponent vector shared by all columns.
struct SCofactorData {
    std::vector<Rational> C;
    std::vector<std::vector<unsigned>> alpha;
    std::vector<unsigned> A;
};

inline SCofactorData extract_monomial_cofactors(const Mat<MultiPoly>& S) {
    std::size_t n = S.rows();
    std::size_t nb = detail::ring_width(S);
    CofactorStructure cs = cofactors_last_row(S);
    SCofactorData data;
    data.A.assign(nb, 0);
    bool have_A = false;
    for (std::size_t k = 0; k < n; ++k) {
        const MultiPoly& last = S(n - 1, k);
        if (last.num_terms() != 1 || last.leading_coefficient() != Rational(1) ||
            last.leading_exponent().block_degree(0) != 0)
            throw std::domain_error("extract_monomial_cofactors: last row is not plain x-monomials");
        std::vector<unsigned> alpha(nb);
        for (std::size_t i = 0; i < nb; ++i) alpha[i] = last.leading_exponent().x(i);

        const MultiPoly& cof = cs.cofactors[k];
        if (cof.is_zero()) {
            data.C.emplace_back(0);
            data.alpha.push_back(std::move(alpha));
            continue;
        }
        if (cof.num_terms() != 1 || cof.leading_exponent().block_degree(1) != 0)
            throw std::domain_error("extract_monomial_cofactors: cofactor " + std::to_string(k) +
                                    " is not a single a-monomial");
        std::vector<unsigned> A_k(nb);
        for (std::size_t i = 0; i < nb; ++i) A_k[i] = cof.leading_exponent().a(i) + alpha[i];
        if (!have_A) {
            data.A = A_k;
            have_A = true;
        } else if (data.A != A_k) {
            throw std::domain_error("extract_monomial_cofactors: exponent balance violated at column " +
                                    std::to_string(k));
        }
        data.C.push_back(cof.leading_coefficient());
        data.alpha.push_back(std::move(alpha));
    }
    return data;
}

// Exact rank of a rational matrix by Gaussian elimination.
inline std::size_t exact_rank(Mat<Rational> A) {
    std::size_t rows = A.rows(), cols = A.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = rank; i < rows; ++i)
            if (!A(i, c).is_zero()) { pivot = i; break; }
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(A(pivot, j), A(rank, j));
        Rational inv = A(rank, c).inverse();
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (A(i, c).is_zero()) continue;
            Rational f = A(i, c) * inv;
            for (std::size_t j = c; j < cols; ++j) A(i, j) -= f * A(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Evaluate a-block-only polynomial rows at the point B, then take exact rank.
inline std::size_t rank_at_point(const Mat<MultiPoly>& rows, const PointProj& B) {
    Mat<Rational> E(rows.rows(), rows.cols(), Rational(0));
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) {
            const MultiPoly& p = rows(i, j);
            if (p.bidegree().second != 0)
                throw std::invalid_argument("rank_at_point: entry involves the x-block");
            MultiPoly v = p.substitute(B.coords(), std::nullopt);
            E(i, j) = v.is_zero() ? Rational(0) : v.leading_coefficient();
        }
    return exact_rank(E);
}

inline Rational det_rational(Mat<Rational> A) {
    if (!A.is_square()) throw std::invalid_argument("det_rational: matrix not square");
    std::size_t n = A.rows();
    Rational det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i)
            if (!A(i, k).is_zero()) { pivot = i; break; }
        if (pivot == n) return Rational(0);
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(A(pivot, j), A(k, j));
            det = -det;
        }
        det *= A(k, k);
        Rational inv = A(k, k).inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (A(i, k).is_zero()) continue;
            Rational f = A(i, k) * inv;
            for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return det;
}

// Fast screen: determinant of the fully evaluated matrix in F_p.  A nonzero
// value certifies det ≢ 0; zero values prove nothing on their own.
inline std::uint64_t det_modular_probe(const Mat<MultiPoly>& A, std::uint64_t p,
                                       const std::vector<Rational>& a_point,
                                       const std::vector<Rational>& x_point) {
    if (!A.is_square()) throw std::invalid_argument("det_modular_probe: matrix not square");
    PrimeField f(p);
    std::size_t n = A.rows();
    Mat<std::uint64_t> E(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            E(i, j) = f.reduce(A(i, j).evaluate(a_point, x_point));
    std::uint64_t det = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i)
            if (E(i, k) != 0) { pivot = i; break; }
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(E(pivot, j), E(k, j));
            sign = -sign;
        }
        det = f.mul(det, E(k, k));
        std::uint64_t inv = f.inv(E(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (E(i, k) == 0) continue;
            std::uint64_t fac = f.mul(E(i, k), inv);
            for (std::size_t j = k; j < n; ++j) E(i, j) = f.sub(E(i, j), f.mul(fac, E(k, j)));
        }
    }
    return sign < 0 ? f.neg(det) : det;
}

}  // namespace detform
