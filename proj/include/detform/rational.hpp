#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace detform {

// Exact rational scalar.  Invariants: denominator > 0, gcd(numerator, denominator) == 1.
// These hold after every constructor and every arithmetic operation.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, integer literals are rationals
    Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}
    explicit Rational(mpz_class n) : v_(std::move(n)) {}
    Rational(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }

    // Accepts an optional sign, digits, and an optional "/digits" tail.  Anything
    // else (floats, exponents, signed denominators, empty fields) is rejected.
    static Rational parse(const std::string& s) {
        std::size_t i = 0;
        auto digits_from = [&](std::size_t start) {
            std::size_t j = start;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            return j;
        };
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t num_end = digits_from(i);
        if (num_end == i) throw std::invalid_argument("Rational: bad literal '" + s + "'");
        std::string num_str = s.substr(0, num_end);
        if (num_str[0] == '+') num_str.erase(0, 1);  // mpz_set_str rejects leading '+'
        if (num_end == s.size())
            return Rational(mpz_class(num_str));
        if (s[num_end] != '/') throw std::invalid_argument("Rational: bad literal '" + s + "'");
        std::size_t den_begin = num_end + 1;
        std::size_t den_end = digits_from(den_begin);
        if (den_end == den_begin || den_end != s.size())
            throw std::invalid_argument("Rational: bad literal '" + s + "'");
        mpz_class num(num_str);
        mpz_class den(s.substr(den_begin));
        return Rational(num, den);
    }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const {
        Rational r;
        r.v_ = ::abs(v_);
        return r;
    }

    Rational pow(unsigned long e) const {
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), e);
        Rational r;
        r.v_ = mpq_class(n, d);  // already canonical: powers of coprime values stay coprime
        return r;
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        Rational r;
        r.v_ = 1 / v_;
        return r;
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace detform
