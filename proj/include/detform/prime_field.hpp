#pragma once

#include "detform/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace detform {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs (Sinclair witness set).
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Largest prime <= n.
inline std::uint64_t prev_prime_u64(std::uint64_t n) {
    if (n < 2) throw std::domain_error("prev_prime_u64: no prime below 2");
    if (n == 2) return 2;
    if ((n & 1) == 0) --n;
    while (!is_prime_u64(n)) n -= 2;
    return n;
}

// Distinct word-sized primes for modular probing, descending from 2^61 - 1
// (itself prime, so products fit comfortably in __int128 arithmetic).
inline std::vector<std::uint64_t> det_probe_primes(std::size_t count) {
    std::vector<std::uint64_t> primes;
    std::uint64_t p = (1ULL << 61) - 1;
    while (primes.size() < count) {
        p = prev_prime_u64(p);
        primes.push_back(p);
        --p;
    }
    return primes;
}

// A rational has no image mod p when its reduced denominator is divisible by p.
class BadPrimeError : public std::runtime_error {
public:
    explicit BadPrimeError(const std::string& what) : std::runtime_error(what) {}
};

class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime_u64(p)) throw std::invalid_argument("PrimeField: modulus is not prime");
    }

    std::uint64_t p() const { return p_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;  // p < 2^62, no overflow
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mulmod_u64(a, b, p_); }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const { return powmod_u64(a, e, p_); }
    std::uint64_t inv(std::uint64_t a) const {
        if (a % p_ == 0) throw BadPrimeError("PrimeField: inverse of zero");
        return pow(a % p_, p_ - 2);
    }

    std::uint64_t reduce_int(const mpz_class& n) const {
        return mpz_fdiv_ui(n.get_mpz_t(), p_);
    }

    std::uint64_t reduce(const Rational& r) const {
        std::uint64_t den = reduce_int(r.den());
        if (den == 0)
            throw BadPrimeError("PrimeField: denominator of " + r.str() + " vanishes mod " + std::to_string(p_));
        return mul(reduce_int(r.num()), inv(den));
    }

private:
    std::uint64_t p_;
};

inline std::uint64_t reduce_mod(const Rational& r, std::uint64_t p) {
    return PrimeField(p).reduce(r);
}

}  // namespace detform
