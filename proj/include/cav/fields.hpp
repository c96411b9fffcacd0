#pragma once

// Coefficient fields for the polynomial layer: exact rationals and prime
// fields F_p with p < 2^63.  Both expose the same value-type interface
// (zero/one/add/sub/mul/inv/...) so polynomial code is generic over either.

#include "cav/arith.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace cav {

struct RationalField {
    using Elem = BigRat;

    BigInt characteristic() const { return 0; }

    Elem zero() const { return BigRat(0); }
    Elem one() const { return BigRat(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("RationalField: inverse of zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem from_int(long long v) const { return BigRat(v); }
    Elem from_bigint(const BigInt& v) const { return BigRat(v); }
    Elem from_rat(const BigRat& v) const { return v; }

    std::string to_string(const Elem& a) const { return a.str(); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

// F_p for prime p < 2^63 (so that add/sub stay inside uint64 and products fit
// in __int128).  Larger moduli are refused outright rather than wrapped.
class PrimeField {
public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (1ull << 63))
            throw std::invalid_argument("PrimeField: modulus must be below 2^63");
        if (!is_prime_u64(p))
            throw std::invalid_argument("PrimeField: modulus must be prime");
    }
    explicit PrimeField(const BigInt& p)
        : PrimeField(p > 0 && p < BigInt(1) << 63 ? p.convert_to<std::uint64_t>()
                                                  : throw_too_large(p)) {}

    std::uint64_t modulus() const { return p_; }
    BigInt characteristic() const { return BigInt(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return p_ == 1 ? 0 : 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool is_one(Elem a) const { return a == one(); }
    bool equal(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem mul(Elem a, Elem b) const { return detail::mulmod_u64(a, b, p_); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        // Extended Euclid; all intermediates are bounded by p < 2^63.
        long long t = 0, new_t = 1;
        long long r = static_cast<long long>(p_), new_r = static_cast<long long>(a);
        while (new_r != 0) {
            long long q = r / new_r;
            t -= q * new_t; std::swap(t, new_t);
            r -= q * new_r; std::swap(r, new_r);
        }
        return t < 0 ? static_cast<Elem>(t + static_cast<long long>(p_)) : static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const { return detail::powmod_u64(a, e, p_); }

    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p_);
        return m < 0 ? static_cast<Elem>(m + static_cast<long long>(p_)) : static_cast<Elem>(m);
    }
    Elem from_bigint(const BigInt& v) const {
        BigInt m = v % BigInt(p_);
        if (m < 0) m += p_;
        return m.convert_to<std::uint64_t>();
    }
    // Defined exactly when p does not divide the denominator.
    Elem from_rat(const BigRat& v) const {
        Elem d = from_bigint(den(v));
        if (d == 0) throw std::domain_error("PrimeField: denominator vanishes mod p");
        return mul(from_bigint(num(v)), inv(d));
    }

    std::string to_string(Elem a) const { return std::to_string(a); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    static std::uint64_t throw_too_large(const BigInt&) {
        throw std::invalid_argument("PrimeField: modulus must be a prime below 2^63");
    }
    std::uint64_t p_;
};

} // namespace cav
