#pragma once

// Independent reference implementations for the test suite.  Everything here
// is written the naive way on purpose (trial division, Laplace expansion,
// dense maps, brute-force enumeration) so that agreement with the library is
// meaningful.  Keep this file free of cav/ includes except for field/poly
// types used as plain containers.

#include "cav/fields.hpp"
#include "cav/poly.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

inline bool is_prime_slow(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::map<cav::BigInt, int> trial_factor(cav::BigInt n) {
    std::map<cav::BigInt, int> out;
    if (n < 0) n = -n;
    for (cav::BigInt d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    if (n > 1) ++out[n];
    return out;
}

// Stirling partition numbers by the standard recurrence.
inline cav::BigInt stirling2(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    std::vector<std::vector<cav::BigInt>> s(static_cast<std::size_t>(n) + 1,
                                            std::vector<cav::BigInt>(static_cast<std::size_t>(n) + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j)
            s[i][j] = cav::BigInt(j) * s[i - 1][j] + s[i - 1][j - 1];
    return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

inline cav::BigInt bell(int n) {
    cav::BigInt total = 0;
    for (int k = 0; k <= n; ++k) total += stirling2(n, k);
    return total;
}

// Every restricted growth string of the given length, by filtering the full
// cube; intended for small lengths only.
inline std::vector<std::vector<int>> all_rgs(int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(len), 0);
    while (true) {
        bool ok = cur[0] == 0;
        int mx = 0;
        for (std::size_t i = 1; ok && i < cur.size(); ++i) {
            if (cur[i] > mx + 1) ok = false;
            mx = std::max(mx, cur[i]);
        }
        if (ok) out.push_back(cur);
        std::size_t i = cur.size();
        while (i > 0 && cur[i - 1] == len - 1) cur[--i] = 0;
        if (i == 0) break;
        ++cur[i - 1];
    }
    return out;
}

// v_p(n!) by Legendre's sum of floors.
inline cav::BigInt legendre_vp_factorial(const cav::BigInt& n, const cav::BigInt& p) {
    cav::BigInt total = 0, q = p;
    while (q <= n) {
        total += n / q;
        q *= p;
    }
    return total;
}

// Laplace (cofactor) determinant over the integers.
inline cav::BigInt laplace_det(const std::vector<std::vector<cav::BigInt>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    cav::BigInt det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<cav::BigInt>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<cav::BigInt> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        cav::BigInt term = m[0][c] * laplace_det(minor);
        det += (c % 2 == 0) ? term : -term;
    }
    return det;
}

// Dense multivariate polynomials as exponent-vector maps.
template <class F>
struct DensePoly {
    using Elem = typename F::Elem;
    std::map<std::vector<std::uint32_t>, Elem> terms;

    static DensePoly from(const cav::Poly<F>& p) {
        DensePoly out;
        const std::size_t n = p.ring()->arity();
        for (const auto& t : p.terms()) {
            std::vector<std::uint32_t> e(n);
            for (std::size_t i = 0; i < n; ++i) e[i] = t.mono[i];
            out.terms[e] = t.coeff;
        }
        return out;
    }

    static DensePoly mul(const F& fld, const DensePoly& a, const DensePoly& b) {
        DensePoly out;
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                std::vector<std::uint32_t> e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                auto it = out.terms.find(e);
                Elem v = fld.mul(ca, cb);
                if (it == out.terms.end()) {
                    out.terms.emplace(std::move(e), v);
                } else {
                    it->second = fld.add(it->second, v);
                    if (fld.is_zero(it->second)) out.terms.erase(it);
                }
            }
        return out;
    }

    static DensePoly add(const F& fld, const DensePoly& a, const DensePoly& b) {
        DensePoly out = a;
        for (const auto& [e, c] : b.terms) {
            auto it = out.terms.find(e);
            if (it == out.terms.end()) {
                out.terms.emplace(e, c);
            } else {
                it->second = fld.add(it->second, c);
                if (fld.is_zero(it->second)) out.terms.erase(it);
            }
        }
        return out;
    }

    friend bool operator==(const DensePoly& x, const DensePoly& y) { return x.terms == y.terms; }
};

// Random sparse polynomial with small exponents and nonzero coefficients.
template <class F>
cav::Poly<F> random_poly(const cav::RingPtr<F>& ring, std::mt19937_64& rng, int max_terms,
                         std::uint32_t max_exp) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<std::uint32_t> exp(0, max_exp);
    std::uniform_int_distribution<long long> coeff(-9, 9);
    std::vector<typename cav::Poly<F>::Term> terms;
    const int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        cav::Monomial m(ring->arity());
        for (std::size_t i = 0; i < ring->arity(); ++i) m.set(i, exp(rng));
        long long c = coeff(rng);
        if (c == 0) c = 1;
        terms.push_back({m, ring->field.from_int(c)});
    }
    return cav::Poly<F>::from_terms(ring, std::move(terms));
}

// The jth Hasse derivative of a dense univariate polynomial straight from the
// binomial-coefficient definition.
template <class F>
std::vector<typename F::Elem> hasse_dense(const F& fld, const std::vector<typename F::Elem>& c,
                                          int j) {
    std::vector<typename F::Elem> out;
    for (std::size_t k = j >= 0 ? static_cast<std::size_t>(j) : 0; k < c.size(); ++k) {
        cav::BigInt binom = cav::binomial(cav::BigInt(k), cav::BigInt(j));
        out.push_back(fld.mul(c[k], fld.from_bigint(binom)));
    }
    if (j == 0) out = c;
    return out;
}

} // namespace oracle
