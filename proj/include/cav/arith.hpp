#pragma once

// Exact integer and rational arithmetic plus the number-theoretic helpers the
// rest of the toolkit leans on: p-adic valuations, base-p digit sums, exact
// binomials, primality testing and integer factorization with an explicit
// effort bound.  Rationals are always kept reduced with positive denominator.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cav {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt num(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const BigRat& q) { return boost::multiprecision::denominator(q); }

// Reduced rational from a signed pair.  The two-argument cpp_rational
// constructor requires a positive denominator, so normalize first.
inline BigRat make_rat(BigInt n, BigInt d) {
    if (d == 0) throw std::invalid_argument("make_rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    return BigRat(std::move(n), std::move(d));
}

// p-adic valuation value: a non-negative integer or +infinity (valuation of 0).
class Valuation {
public:
    static Valuation infinite() { return Valuation(true, 0); }
    static Valuation finite(long long v) { return Valuation(false, v); }

    bool is_infinite() const { return inf_; }
    long long value() const {
        if (inf_) throw std::logic_error("Valuation: value() of +infinity");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a == b || a < b; }

    std::string to_string() const { return inf_ ? "+inf" : std::to_string(v_); }

private:
    Valuation(bool inf, long long v) : inf_(inf), v_(v) {}
    bool inf_;
    long long v_;
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = m == 1 ? 0 : 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Strong probable-prime test to base a; n odd, n > 2, 1 < a < n-1.
inline bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool miller_rabin_big(const BigInt& n, const BigInt& a) {
    BigInt d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    BigInt x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // These twelve bases decide primality for every n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!detail::miller_rabin_u64(n, a)) return false;
    return true;
}

// Deterministic below 2^64.  Above, 64 Miller-Rabin rounds with bases derived
// from n itself, so the answer is reproducible; error probability < 4^-64.
inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return is_prime_u64(n.convert_to<std::uint64_t>());
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return false;
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    for (unsigned limb = 0; limb < 4; ++limb)
        seed ^= ((n >> (64 * limb)) & std::numeric_limits<std::uint64_t>::max()).convert_to<std::uint64_t>() + (seed << 6) + (seed >> 2);
    for (int round = 0; round < 64; ++round) {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        BigInt a = 2 + BigInt(seed) % (n - 3);
        if (!detail::miller_rabin_big(n, a)) return false;
    }
    return true;
}

// True when is_prime's verdict for n is proven rather than probabilistic.
inline bool primality_is_certain(const BigInt& n) {
    return n <= std::numeric_limits<std::uint64_t>::max() || !is_prime(n);
}

inline std::uint64_t next_prime_u64(std::uint64_t n) {
    std::uint64_t c = n < 2 ? 2 : n + 1;
    while (!is_prime_u64(c)) ++c;
    return c;
}

inline Valuation vp_int(const BigInt& n, const BigInt& p) {
    if (!is_prime(p)) throw std::invalid_argument("vp_int: p must be prime");
    if (n == 0) return Valuation::infinite();
    BigInt m = boost::multiprecision::abs(n);
    long long v = 0;
    while (m % p == 0) { m /= p; ++v; }
    return Valuation::finite(v);
}

inline Valuation vp_rat(const BigRat& q, const BigInt& p) {
    if (!is_prime(p)) throw std::invalid_argument("vp_rat: p must be prime");
    if (q == 0) return Valuation::infinite();
    return Valuation::finite(vp_int(num(q), p).value() - vp_int(den(q), p).value());
}

inline BigInt digit_sum(const BigInt& n, const BigInt& p) {
    if (n < 0) throw std::invalid_argument("digit_sum: n must be non-negative");
    if (p < 2) throw std::invalid_argument("digit_sum: base must be at least 2");
    BigInt s = 0, m = n;
    while (m > 0) { s += m % p; m /= p; }
    return s;
}

// v_p(binomial(n, j)) = (s_p(j) + s_p(n-j) - s_p(n)) / (p-1).
inline BigInt vp_binomial(const BigInt& n, const BigInt& j, const BigInt& p) {
    if (!is_prime(p)) throw std::invalid_argument("vp_binomial: p must be prime");
    if (j < 0 || j > n) throw std::invalid_argument("vp_binomial: need 0 <= j <= n");
    return (digit_sum(j, p) + digit_sum(n - j, p) - digit_sum(n, p)) / (p - 1);
}

// Exact binomial coefficient; 0 when j is out of range.
inline BigInt binomial(const BigInt& n, const BigInt& j) {
    if (j < 0 || j > n || n < 0) return 0;
    BigInt k = j;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (BigInt i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

struct FactorResult {
    std::vector<std::pair<BigInt, int>> factors;  // (prime, multiplicity), ascending
    std::vector<BigInt> residues;                 // composite leftovers the effort bound did not split
    bool complete() const { return residues.empty(); }

    BigInt reassemble() const {
        BigInt r = 1;
        for (const auto& [p, e] : factors)
            for (int i = 0; i < e; ++i) r *= p;
        for (const auto& c : residues) r *= c;
        return r;
    }
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        const std::uint32_t limit = 1'000'000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<std::uint32_t> ps;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            ps.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
                sieve[static_cast<std::size_t>(j)] = false;
        }
        return ps;
    }();
    return primes;
}

// Brent's cycle variant of Pollard rho.  Consumes at most `budget` squaring
// steps (shared across restarts via the reference); returns a nontrivial
// factor of composite odd n, or nullopt if the budget ran out.
inline std::optional<BigInt> pollard_brent(const BigInt& n, std::uint64_t& budget) {
    using boost::multiprecision::gcd;
    for (BigInt c = 1; budget > 0; ++c) {
        BigInt y = 2, q = 1, g = 1, x, ys;
        std::uint64_t r = 1;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                std::uint64_t m = std::min<std::uint64_t>(128, r - k);
                m = std::min(m, budget);
                for (std::uint64_t i = 0; i < m; ++i) {
                    y = (y * y + c) % n;
                    BigInt d = x - y;
                    if (d < 0) d = -d;
                    q = q * d % n;
                    --budget;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time to recover the factor.
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                BigInt d = x - ys;
                if (d < 0) d = -d;
                g = gcd(d, n);
            }
        }
        if (g > 1 && g < n) return g;
    }
    return std::nullopt;
}

} // namespace detail

// Trial division by all primes below 10^6, then Pollard-Brent within the
// effort bound.  Residues that would not split are reported, never dropped.
inline FactorResult factor(const BigInt& n, std::uint64_t effort = (1ull << 27)) {
    if (n < 1) throw std::invalid_argument("factor: n must be positive");
    FactorResult out;
    std::map<BigInt, int> mult;
    BigInt m = n;
    for (std::uint32_t p : detail::small_primes()) {
        if (BigInt(p) * p > m) break;
        while (m % p == 0) { ++mult[p]; m /= p; }
    }
    std::vector<BigInt> pending;
    if (m > 1) pending.push_back(m);
    std::uint64_t budget = effort;
    while (!pending.empty()) {
        BigInt c = pending.back();
        pending.pop_back();
        if (is_prime(c)) { ++mult[c]; continue; }
        auto d = detail::pollard_brent(c, budget);
        if (!d) { out.residues.push_back(c); continue; }
        pending.push_back(*d);
        pending.push_back(c / *d);
    }
    for (auto& [p, e] : mult) out.factors.emplace_back(p, e);
    std::sort(out.residues.begin(), out.residues.end());
    return out;
}

} // namespace cav
