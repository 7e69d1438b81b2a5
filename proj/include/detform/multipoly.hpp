#pragma once

#include "detform/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detform {

// Exponent vector over the two variable blocks a_0..a_n and x_0..x_n,
// stored flat: positions 0..n are the a-block, n+1..2n+1 the x-block.
class ExponentVec {
public:
    explicit ExponentVec(std::size_t vars_per_block)
        : e_(2 * vars_per_block, 0) {}

    std::size_t vars_per_block() const { return e_.size() / 2; }
    std::size_t size() const { return e_.size(); }

    std::uint16_t operator[](std::size_t i) const { return e_[i]; }
    std::uint16_t& operator[](std::size_t i) { return e_[i]; }

    std::uint16_t a(std::size_t i) const { return e_[i]; }
    std::uint16_t x(std::size_t i) const { return e_[vars_per_block() + i]; }
    void set_a(std::size_t i, std::uint16_t v) { e_[i] = v; }
    void set_x(std::size_t i, std::uint16_t v) { e_[vars_per_block() + i] = v; }

    unsigned total_degree() const {
        return std::accumulate(e_.begin(), e_.end(), 0u);
    }
    unsigned block_degree(int block) const {
        std::size_t nb = vars_per_block();
        auto first = e_.begin() + (block == 0 ? 0 : nb);
        return std::accumulate(first, first + nb, 0u);
    }

    ExponentVec swapped_blocks() const {
        ExponentVec r(vars_per_block());
        std::size_t nb = vars_per_block();
        for (std::size_t i = 0; i < nb; ++i) {
            r.e_[i] = e_[nb + i];
            r.e_[nb + i] = e_[i];
        }
        return r;
    }

    friend bool operator==(const ExponentVec& p, const ExponentVec& q) { return p.e_ == q.e_; }
    friend bool operator!=(const ExponentVec& p, const ExponentVec& q) { return p.e_ != q.e_; }

    const std::vector<std::uint16_t>& raw() const { return e_; }

private:
    std::vector<std::uint16_t> e_;
};

// Graded lexicographic, a-block first, a_0 > a_1 > ... > x_n, largest first.
struct GradedLexDesc {
    bool operator()(const ExponentVec& p, const ExponentVec& q) const {
        unsigned dp = p.total_degree(), dq = q.total_degree();
        if (dp != dq) return dp > dq;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != q[i]) return p[i] > q[i];
        return false;
    }
};

// Projective point with a declared affine representative.  Matrix entries use
// the representative verbatim; only equality tests renormalize.
class PointProj {
public:
    explicit PointProj(std::vector<Rational> coords) : coords_(std::move(coords)) {
        bool nonzero = false;
        for (const auto& c : coords_) nonzero = nonzero || !c.is_zero();
        if (!nonzero) throw std::invalid_argument("PointProj: all coordinates zero");
    }

    std::size_t dim() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Rational>& coords() const { return coords_; }

    // Scale so the first nonzero coordinate is 1 (for equality only).
    std::vector<Rational> canonical() const {
        std::vector<Rational> r = coords_;
        for (const auto& c : r) {
            if (!c.is_zero()) {
                Rational inv = c.inverse();
                for (auto& v : r) v *= inv;
                break;
            }
        }
        return r;
    }

    friend bool operator==(const PointProj& p, const PointProj& q) {
        return p.dim() == q.dim() && p.canonical() == q.canonical();
    }
    friend bool operator!=(const PointProj& p, const PointProj& q) { return !(p == q); }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += coords_[i].str();
        }
        return s + ")";
    }

private:
    std::vector<Rational> coords_;
};

// Sparse polynomial in Q[a_0..a_n, x_0..x_n].  Invariant: no zero coefficients
// stored; terms ordered graded-lex descending for deterministic iteration.
class MultiPoly {
public:
    using TermMap = std::map<ExponentVec, Rational, GradedLexDesc>;

    explicit MultiPoly(std::size_t vars_per_block) : nb_(vars_per_block) {}

    static MultiPoly zero(std::size_t nb) { return MultiPoly(nb); }

    static MultiPoly constant(std::size_t nb, const Rational& c) {
        MultiPoly p(nb);
        if (!c.is_zero()) p.terms_.emplace(ExponentVec(nb), c);
        return p;
    }

    static MultiPoly monomial(const ExponentVec& e, const Rational& c) {
        MultiPoly p(e.vars_per_block());
        if (!c.is_zero()) p.terms_.emplace(e, c);
        return p;
    }

    // block 0 = a-variables, block 1 = x-variables
    static MultiPoly variable(std::size_t nb, int block, std::size_t idx) {
        if (idx >= nb) throw std::invalid_argument("MultiPoly::variable: index out of range");
        ExponentVec e(nb);
        e[(block == 0 ? 0 : nb) + idx] = 1;
        return monomial(e, Rational(1));
    }

    std::size_t vars_per_block() const { return nb_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }

    const ExponentVec& leading_exponent() const {
        require_nonzero("leading_exponent");
        return terms_.begin()->first;
    }
    const Rational& leading_coefficient() const {
        require_nonzero("leading_coefficient");
        return terms_.begin()->second;
    }

    Rational coefficient(const ExponentVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
        return d;
    }

    // (max a-degree over terms, max x-degree over terms)
    std::pair<unsigned, unsigned> bidegree() const {
        unsigned da = 0, dx = 0;
        for (const auto& [e, c] : terms_) {
            da = std::max(da, e.block_degree(0));
            dx = std::max(dx, e.block_degree(1));
        }
        return {da, dx};
    }

    bool is_bihomogeneous() const {
        if (terms_.empty()) return true;
        unsigned da = terms_.begin()->first.block_degree(0);
        unsigned dx = terms_.begin()->first.block_degree(1);
        for (const auto& [e, c] : terms_)
            if (e.block_degree(0) != da || e.block_degree(1) != dx) return false;
        return true;
    }

    bool is_homogeneous_in_block(int block) const {
        if (terms_.empty()) return true;
        unsigned d = terms_.begin()->first.block_degree(block);
        for (const auto& [e, c] : terms_)
            if (e.block_degree(block) != d) return false;
        return true;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }
    friend MultiPoly operator-(const MultiPoly& a) { return a * Rational(-1); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly r(a.nb_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                ExponentVec e(a.nb_);
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend MultiPoly operator*(MultiPoly a, const Rational& c) {
        if (c.is_zero()) return MultiPoly(a.nb_);
        for (auto& [e, v] : a.terms_) v *= c;
        return a;
    }
    friend MultiPoly operator*(const Rational& c, const MultiPoly& a) { return a * c; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nb_ == b.nb_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(nb_, Rational(1));
        for (unsigned i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    // Iterated formal partial derivative in one variable.
    MultiPoly derivative(int block, std::size_t var, unsigned order = 1) const {
        if (var >= nb_) throw std::invalid_argument("MultiPoly::derivative: index out of range");
        std::size_t pos = (block == 0 ? 0 : nb_) + var;
        MultiPoly r(nb_);
        for (const auto& [e, c] : terms_) {
            if (e[pos] < order) continue;
            Rational f = c;
            for (unsigned k = 0; k < order; ++k) f *= Rational(static_cast<long>(e[pos] - k));
            ExponentVec d = e;
            d[pos] = static_cast<std::uint16_t>(d[pos] - order);
            r.add_term(d, f);
        }
        return r;
    }

    // Mixed partial ∂^{|t|}/∂v_0^{t_0}...∂v_n^{t_n} over one block.
    MultiPoly derivative_multi(int block, const std::vector<unsigned>& t) const {
        if (t.size() != nb_) throw std::invalid_argument("MultiPoly::derivative_multi: bad multi-index size");
        MultiPoly r = *this;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i]) r = r.derivative(block, i, t[i]);
        return r;
    }

    // Substitute rationals for one or both blocks; the result lives in the same
    // ring with the substituted block's exponents cleared.
    MultiPoly substitute(const std::optional<std::vector<Rational>>& a_vals,
                         const std::optional<std::vector<Rational>>& x_vals) const {
        if (!a_vals && !x_vals) throw std::invalid_argument("MultiPoly::substitute: nothing to substitute");
        if (a_vals && a_vals->size() != nb_) throw std::invalid_argument("MultiPoly::substitute: a-block size");
        if (x_vals && x_vals->size() != nb_) throw std::invalid_argument("MultiPoly::substitute: x-block size");
        MultiPoly r(nb_);
        for (const auto& [e, c] : terms_) {
            Rational v = c;
            ExponentVec d = e;
            if (a_vals) {
                for (std::size_t i = 0; i < nb_; ++i) {
                    if (e.a(i)) v *= (*a_vals)[i].pow(e.a(i));
                    d.set_a(i, 0);
                }
            }
            if (x_vals) {
                for (std::size_t i = 0; i < nb_; ++i) {
                    if (e.x(i)) v *= (*x_vals)[i].pow(e.x(i));
                    d.set_x(i, 0);
                }
            }
            r.add_term(d, v);
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& a_vals, const std::vector<Rational>& x_vals) const {
        MultiPoly c = substitute(a_vals, x_vals);
        if (c.is_zero()) return Rational(0);
        return c.terms_.begin()->second;
    }

    MultiPoly swap_blocks() const {
        MultiPoly r(nb_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e.swapped_blocks(), c);
        return r;
    }

    std::string str() const;
    static MultiPoly parse(const std::string& text, std::size_t vars_per_block);

private:
    void require_nonzero(const char* who) const {
        if (terms_.empty()) throw std::domain_error(std::string("MultiPoly::") + who + ": zero polynomial");
    }
    void check_compatible(const MultiPoly& o) const {
        if (nb_ != o.nb_) throw std::invalid_argument("MultiPoly: variable-count mismatch");
    }
    void add_term(const ExponentVec& e, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::size_t nb_;
    TermMap terms_;
};

// Exact single-divisor division: returns f/g when g divides f, nullopt otherwise.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
    if (f.vars_per_block() != g.vars_per_block())
        throw std::invalid_argument("exact_divide: variable-count mismatch");
    MultiPoly q(f.vars_per_block());
    MultiPoly r = f;
    const ExponentVec& lg = g.leading_exponent();
    const Rational& cg = g.leading_coefficient();
    while (!r.is_zero()) {
        const ExponentVec& lr = r.leading_exponent();
        ExponentVec e(lr.vars_per_block());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (lr[i] < lg[i]) return std::nullopt;
            e[i] = static_cast<std::uint16_t>(lr[i] - lg[i]);
        }
        MultiPoly t = MultiPoly::monomial(e, r.leading_coefficient() / cg);
        q += t;
        r -= t * g;
    }
    return q;
}

// f = content * primitive with primitive having coprime integer coefficients
// and positive leading coefficient.
inline std::pair<Rational, MultiPoly> content_and_primitive(const MultiPoly& f) {
    if (f.is_zero()) throw std::domain_error("content_and_primitive: zero polynomial");
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : f.terms()) {
        g = gcd(g, c.num());
        l = lcm(l, c.den());
    }
    Rational content(g, l);
    if (f.leading_coefficient().sign() < 0) content = -content;
    MultiPoly prim = f * content.inverse();
    return {content, prim};
}

namespace detail {

inline std::string var_name(std::size_t nb, int block, std::size_t idx) {
    if (nb == 3) {  // n = 2: the classical aliases
        static const char* a_names[] = {"a", "b", "c"};
        static const char* x_names[] = {"x", "y", "z"};
        return (block == 0 ? a_names : x_names)[idx];
    }
    return (block == 0 ? "a_" : "x_") + std::to_string(idx);
}

// Resolve a variable token to (block, index), or nullopt if not a variable.
inline std::optional<std::pair<int, std::size_t>> resolve_var(const std::string& name, std::size_t nb) {
    if (name.size() >= 3 && (name[0] == 'a' || name[0] == 'x') && name[1] == '_') {
        std::size_t idx = 0;
        for (std::size_t i = 2; i < name.size(); ++i) {
            if (name[i] < '0' || name[i] > '9') return std::nullopt;
            idx = idx * 10 + static_cast<std::size_t>(name[i] - '0');
        }
        if (idx >= nb) throw std::invalid_argument("MultiPoly::parse: variable index out of range: " + name);
        return std::make_pair(name[0] == 'a' ? 0 : 1, idx);
    }
    if (name.size() == 1 && nb == 3) {
        const std::string a_alias = "abc", x_alias = "xyz";
        auto pa = a_alias.find(name[0]);
        if (pa != std::string::npos) return std::make_pair(0, pa);
        auto px = x_alias.find(name[0]);
        if (px != std::string::npos) return std::make_pair(1, px);
    }
    return std::nullopt;
}

}  // namespace detail

inline std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            int block = i < nb_ ? 0 : 1;
            mono += detail::var_name(nb_, block, i % nb_) + "^" + std::to_string(e[i]);
        }
        Rational mag = c.abs();
        std::string body = mono.empty() ? mag.str()
                         : (mag == Rational(1) ? mono : mag.str() + "*" + mono);
        if (first) {
            out += (c.sign() < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

inline MultiPoly MultiPoly::parse(const std::string& text, std::size_t vars_per_block) {
    const std::size_t nb = vars_per_block;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_uint = [&]() -> unsigned long {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) throw std::invalid_argument("MultiPoly::parse: expected digits at offset " + std::to_string(i));
        return std::stoul(text.substr(start, i - start));
    };

    MultiPoly result(nb);
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("MultiPoly::parse: empty input");
    bool expect_term = true;
    int pending_sign = 1;
    while (i < text.size()) {
        skip_ws();
        if (i == text.size()) break;
        if (!expect_term) {
            if (text[i] == '+') pending_sign = 1;
            else if (text[i] == '-') pending_sign = -1;
            else throw std::invalid_argument("MultiPoly::parse: expected '+' or '-' at offset " + std::to_string(i));
            ++i;
            expect_term = true;
            continue;
        }
        // optional extra sign directly before a term ("+ -3*x" is rejected, leading '-' accepted)
        if (text[i] == '-') { pending_sign = -pending_sign; ++i; skip_ws(); }
        else if (text[i] == '+') { ++i; skip_ws(); }

        Rational coeff(pending_sign);
        ExponentVec expo(nb);
        bool saw_factor = false;
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                std::size_t start = i;
                parse_uint();
                std::string num = text.substr(start, i - start);
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    std::size_t dstart = i;
                    parse_uint();
                    num += "/" + text.substr(dstart, i - dstart);
                }
                coeff *= Rational::parse(num);
                saw_factor = true;
            } else if (i < text.size() && ((text[i] >= 'a' && text[i] <= 'z') || (text[i] >= 'A' && text[i] <= 'Z'))) {
                std::size_t start = i;
                while (i < text.size() &&
                       ((text[i] >= 'a' && text[i] <= 'z') || (text[i] >= 'A' && text[i] <= 'Z') ||
                        (text[i] >= '0' && text[i] <= '9') || text[i] == '_'))
                    ++i;
                std::string name = text.substr(start, i - start);
                auto var = detail::resolve_var(name, nb);
                if (!var) throw std::invalid_argument("MultiPoly::parse: unknown variable '" + name + "'");
                unsigned long e = 1;
                skip_ws();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip_ws();
                    e = parse_uint();
                }
                std::size_t pos = (var->first == 0 ? 0 : nb) + var->second;
                expo[pos] = static_cast<std::uint16_t>(expo[pos] + e);
                saw_factor = true;
            } else {
                throw std::invalid_argument("MultiPoly::parse: expected factor at offset " + std::to_string(i));
            }
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; continue; }
            break;
        }
        if (!saw_factor) throw std::invalid_argument("MultiPoly::parse: empty term");
        result += MultiPoly::monomial(expo, coeff);
        pending_sign = 1;
        expect_term = false;
    }
    if (expect_term) throw std::invalid_argument("MultiPoly::parse: dangling operator");
    return result;
}

}  // namespace detform
