#pragma once

// Direct checks on a concrete univariate polynomial: is it a CA-polynomial
// (shares a root with each Hasse derivative of order 1..d-1), is it a d-th
// power of a linear form, which scenarios does it realize.
//
// Root-level questions need the roots themselves, so they are answered only
// when f splits over the base field; otherwise Unsupported is thrown rather
// than guessing.  The CA property alone is also decidable without any root
// finding through resultants, which is exact over any field.

#include "cav/arith.hpp"
#include "cav/poly.hpp"
#include "cav/resultant.hpp"
#include "cav/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace cav {

struct Unsupported : std::runtime_error {
    explicit Unsupported(const std::string& why) : std::runtime_error(why) {}
};

// ---- dense univariate layer (coefficients ascending, high zeros trimmed) ----

template <class F>
std::vector<typename F::Elem> dense_from_poly(const Poly<F>& f) {
    if (f.ring()->arity() != 1) throw std::invalid_argument("dense_from_poly: univariate ring required");
    std::vector<typename F::Elem> c;
    for (const auto& t : f.terms()) {
        std::size_t e = t.mono[0];
        if (c.size() <= e) c.resize(e + 1, f.field().zero());
        c[e] = t.coeff;
    }
    return c;
}

template <class F>
Poly<F> poly_from_dense(const RingPtr<F>& ring, const std::vector<typename F::Elem>& c) {
    if (ring->arity() != 1) throw std::invalid_argument("poly_from_dense: univariate ring required");
    std::vector<typename Poly<F>::Term> terms;
    for (std::size_t e = 0; e < c.size(); ++e) {
        if (ring->field.is_zero(c[e])) continue;
        Monomial m(1);
        m.set(0, static_cast<int>(e));
        terms.push_back({m, c[e]});
    }
    return Poly<F>::from_terms(ring, std::move(terms));
}

template <class F>
void uni_trim(const F& field, std::vector<typename F::Elem>& c) {
    while (!c.empty() && field.is_zero(c.back())) c.pop_back();
}

template <class F>
typename F::Elem uni_eval(const F& field, const std::vector<typename F::Elem>& c,
                          const typename F::Elem& a) {
    typename F::Elem acc = field.zero();
    for (std::size_t k = c.size(); k-- > 0;) acc = field.add(field.mul(acc, a), c[k]);
    return acc;
}

// Hasse derivative of order j: coefficient k picks up binom(k+j, j).
template <class F>
std::vector<typename F::Elem> uni_hasse(const F& field, const std::vector<typename F::Elem>& c,
                                        int j) {
    if (j < 0) throw std::invalid_argument("uni_hasse: negative order");
    std::vector<typename F::Elem> out;
    if (static_cast<std::size_t>(j) >= c.size()) return out;
    out.reserve(c.size() - j);
    for (std::size_t k = 0; k + j < c.size(); ++k)
        out.push_back(field.mul(field.from_bigint(binomial(BigInt(k) + j, BigInt(j))), c[k + j]));
    uni_trim(field, out);
    return out;
}

// Synthetic division by (x - a); the caller promises a is a root.
template <class F>
std::vector<typename F::Elem> uni_deflate(const F& field, const std::vector<typename F::Elem>& c,
                                          const typename F::Elem& a) {
    if (c.size() < 2) throw std::invalid_argument("uni_deflate: degree too small");
    std::vector<typename F::Elem> q(c.size() - 1, field.zero());
    typename F::Elem carry = field.zero();
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        carry = field.add(c[k], field.mul(carry, a));
        q[k - 1] = carry;
    }
    if (!field.is_zero(field.add(c[0], field.mul(carry, a))))
        throw std::logic_error("uni_deflate: not a root");
    return q;
}

// ---- root finding ----

template <class F>
struct RootList {
    std::vector<typename F::Elem> roots;  // distinct
    std::vector<int> multiplicity;
    bool splits = false;                  // multiplicities sum to the degree
};

namespace detail {

inline void push_root(RootList<PrimeField>& out, std::uint64_t r, int m) {
    out.roots.push_back(r);
    out.multiplicity.push_back(m);
}

inline std::vector<BigInt> divisors_from(const FactorResult& fr, std::size_t cap) {
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : fr.factors) {
        std::size_t base = divs.size();
        BigInt pw = 1;
        for (int k = 1; k <= e; ++k) {
            pw *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pw);
                if (divs.size() > cap) throw Unsupported("too many divisor candidates for root search");
            }
        }
    }
    return divs;
}

} // namespace detail

inline constexpr std::uint64_t kRootScanBound = 1'000'000;

// Exhaustive root scan; restricted to moduli small enough to enumerate.
inline RootList<PrimeField> find_roots(const PrimeField& field,
                                       std::vector<std::uint64_t> c) {
    uni_trim(field, c);
    if (c.empty()) throw std::invalid_argument("find_roots: zero polynomial");
    if (field.modulus() > kRootScanBound)
        throw Unsupported("root search over F_p is exhaustive and needs p <= 10^6");
    RootList<PrimeField> out;
    std::size_t degree = c.size() - 1;
    for (std::uint64_t a = 0; a < field.modulus() && c.size() > 1; ++a) {
        if (!field.is_zero(uni_eval(field, c, a))) continue;
        int m = 0;
        while (c.size() > 1 && field.is_zero(uni_eval(field, c, a))) {
            c = uni_deflate(field, c, a);
            ++m;
        }
        detail::push_root(out, a, m);
    }
    std::size_t found = 0;
    for (int m : out.multiplicity) found += static_cast<std::size_t>(m);
    out.splits = (found == degree);
    return out;
}

// Rational roots through the rational root theorem; requires complete
// factorization of the outer coefficients, otherwise refuses.
inline RootList<RationalField> find_roots(const RationalField& field, std::vector<BigRat> c) {
    uni_trim(field, c);
    if (c.empty()) throw std::invalid_argument("find_roots: zero polynomial");
    RootList<RationalField> out;
    std::size_t degree = c.size() - 1;

    // Common denominator out, then the x^k factor.
    BigInt l = 1;
    for (const auto& q : c) l = boost::multiprecision::lcm(l, den(q));
    std::vector<BigInt> z;
    z.reserve(c.size());
    for (const auto& q : c) z.push_back(num(q) * (l / den(q)));
    std::size_t k = 0;
    while (k < z.size() && z[k] == 0) ++k;
    if (k > 0) {
        out.roots.push_back(BigRat(0));
        out.multiplicity.push_back(static_cast<int>(k));
        z.erase(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (z.size() > 1) {
        BigInt a0 = boost::multiprecision::abs(z.front());
        BigInt an = boost::multiprecision::abs(z.back());
        FactorResult f0 = factor(a0);
        FactorResult fn = factor(an);
        if (!f0.complete() || !fn.complete())
            throw Unsupported("rational root search needs the outer coefficients factored");
        auto ps = detail::divisors_from(f0, 1u << 20);
        auto qs = detail::divisors_from(fn, 1u << 20);
        std::vector<BigRat> found;
        for (const auto& p : ps)
            for (const auto& q : qs) {
                for (int sign : {1, -1}) {
                    BigRat cand = make_rat(sign * p, q);
                    if (std::find(found.begin(), found.end(), cand) != found.end()) continue;
                    if (field.is_zero(uni_eval(field, c, cand))) found.push_back(cand);
                }
            }
        std::sort(found.begin(), found.end());
        for (const auto& r : found) {
            int m = 0;
            std::vector<BigRat> w = c;
            while (w.size() > 1 && field.is_zero(uni_eval(field, w, r))) {
                w = uni_deflate(field, w, r);
                ++m;
            }
            out.roots.push_back(r);
            out.multiplicity.push_back(m);
        }
        // 0 was peeled before candidate generation; re-sort for a stable order.
        std::vector<std::size_t> idx(out.roots.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return out.roots[a] < out.roots[b]; });
        RootList<RationalField> sorted;
        for (std::size_t i : idx) {
            sorted.roots.push_back(out.roots[i]);
            sorted.multiplicity.push_back(out.multiplicity[i]);
        }
        out = std::move(sorted);
    }
    std::size_t total = 0;
    for (int m : out.multiplicity) total += static_cast<std::size_t>(m);
    out.splits = (total == degree);
    return out;
}

// ---- root profile: which roots each Hasse derivative vanishes at ----

template <class F>
struct RootProfile {
    int degree = 0;
    RootList<F> roots;
    // shares[j-1] is a bitmask over roots: bit r set when H^j(f)(root r) = 0.
    std::vector<std::uint64_t> shares;
    std::uint64_t all_mask = 0;

    bool ca() const {
        for (auto m : shares)
            if (m == 0) return false;
        return true;
    }
};

template <class F>
RootProfile<F> root_profile(const Poly<F>& f) {
    auto c = dense_from_poly(f);
    uni_trim(f.field(), c);
    if (c.size() < 2) throw std::invalid_argument("root_profile: degree >= 1 required");
    RootProfile<F> out;
    out.degree = static_cast<int>(c.size()) - 1;
    out.roots = find_roots(f.field(), c);
    if (!out.roots.splits)
        throw Unsupported("polynomial does not split over the base field; "
                          "root-level questions would be guesses");
    std::size_t n = out.roots.roots.size();
    if (n > 63) throw Unsupported("too many distinct roots for bitmask bookkeeping");
    out.all_mask = n == 0 ? 0 : ((std::uint64_t{1} << n) - 1);
    for (int j = 1; j < out.degree; ++j) {
        auto h = uni_hasse(f.field(), c, j);
        std::uint64_t mask = 0;
        if (h.empty()) {
            mask = out.all_mask;  // zero derivative vanishes everywhere
        } else {
            for (std::size_t r = 0; r < n; ++r)
                if (f.field().is_zero(uni_eval(f.field(), h, out.roots.roots[r])))
                    mask |= std::uint64_t{1} << r;
        }
        out.shares.push_back(mask);
    }
    return out;
}

// ---- CA property without roots: Res(f, H^j f) = 0 for every j ----

template <class F>
bool is_ca_resultant(const Poly<F>& f) {
    auto c = dense_from_poly(f);
    uni_trim(f.field(), c);
    if (c.size() < 2) throw std::invalid_argument("is_ca_resultant: degree >= 1 required");
    int d = static_cast<int>(c.size()) - 1;
    Poly<F> fc = poly_from_dense(f.ring(), c);
    for (int j = 1; j < d; ++j) {
        auto h = uni_hasse(f.field(), c, j);
        if (h.empty()) continue;          // zero derivative: shared trivially
        if (h.size() == 1) return false;  // nonzero constant: no root at all
        Poly<F> hp = poly_from_dense(f.ring(), h);
        if (!resultant(fc, hp, 0).is_zero()) return false;
    }
    return true;
}

// f == c * (x - a)^d for some a in the base field.  In characteristic p the
// witness coefficient is read at index d - p^v with v = v_p(d), where the
// binomial is a unit; x -> x^(p^v) fixes the base field, so a pops out.
template <class F>
bool is_linear_power(const Poly<F>& f) {
    auto c = dense_from_poly(f);
    uni_trim(f.field(), c);
    if (c.size() < 2) throw std::invalid_argument("is_linear_power: degree >= 1 required");
    const F& fld = f.field();
    int d = static_cast<int>(c.size()) - 1;
    BigInt j = 1;
    if (fld.characteristic() != 0) {
        BigInt p = fld.characteristic();
        Valuation v = vp_int(BigInt(d), p);
        j = 1;
        for (long long i = 0; i < v.value(); ++i) j *= p;
    }
    auto jj = static_cast<std::size_t>(j);
    typename F::Elem binj = fld.from_bigint(binomial(BigInt(d), j));
    // c_{d-j} = lead * binom(d, j) * (-a)^j and (-a)^j = -a on the base field.
    typename F::Elem neg_a = fld.div(c[c.size() - 1 - jj], fld.mul(c.back(), binj));
    typename F::Elem a = fld.neg(neg_a);
    std::vector<typename F::Elem> pw{fld.neg(a), fld.one()};
    std::vector<typename F::Elem> acc{c.back()};
    for (int i = 0; i < d; ++i) {
        std::vector<typename F::Elem> next(acc.size() + 1, fld.zero());
        for (std::size_t s = 0; s < acc.size(); ++s) {
            next[s] = fld.add(next[s], fld.mul(acc[s], pw[0]));
            next[s + 1] = fld.add(next[s + 1], fld.mul(acc[s], pw[1]));
        }
        acc = std::move(next);
    }
    if (acc.size() != c.size()) return false;
    for (std::size_t s = 0; s < c.size(); ++s)
        if (!(fld.is_zero(fld.sub(acc[s], c[s])))) return false;
    return true;
}

// ---- scenario extraction and matching ----

// Lexicographically smallest scenario realized by f: depth-first over the
// shared-root choices, trying previously used labels in increasing order and
// then each fresh root; the first complete assignment is the lex minimum.
template <class F>
std::optional<Scenario> scen_of(const RootProfile<F>& profile) {
    if (!profile.ca()) return std::nullopt;
    int len = profile.degree - 1;
    std::size_t n = profile.roots.roots.size();
    std::vector<int> s(static_cast<std::size_t>(len), -1);
    std::vector<std::size_t> label_root;  // label -> root index

    auto dfs = [&](auto&& self, int pos) -> bool {
        if (pos == len) return true;
        std::uint64_t mask = profile.shares[static_cast<std::size_t>(pos)];
        for (std::size_t v = 0; v < label_root.size(); ++v) {
            if (mask & (std::uint64_t{1} << label_root[v])) {
                s[static_cast<std::size_t>(pos)] = static_cast<int>(v);
                if (self(self, pos + 1)) return true;
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (!(mask & (std::uint64_t{1} << r))) continue;
            bool used = false;
            for (std::size_t u : label_root) used = used || u == r;
            if (used) continue;
            label_root.push_back(r);
            s[static_cast<std::size_t>(pos)] = static_cast<int>(label_root.size()) - 1;
            if (self(self, pos + 1)) return true;
            label_root.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;
    return Scenario::from_ints(s);
}

// Minimal scenario type over all realizations: the smallest hitting set of
// the share masks, minus one.  Subsets are scanned in increasing popcount.
template <class F>
std::optional<int> type_of_poly(const RootProfile<F>& profile) {
    if (!profile.ca()) return std::nullopt;
    std::size_t n = profile.roots.roots.size();
    if (n > 20) throw Unsupported("too many distinct roots for hitting-set scan");
    std::uint64_t full = (n == 0) ? 0 : ((std::uint64_t{1} << n) - 1);
    int best = -1;
    for (std::uint64_t sub = 1; sub <= full; ++sub) {
        int size = std::popcount(sub);
        if (best >= 0 && size >= best) continue;
        bool hits = true;
        for (auto m : profile.shares) hits = hits && (m & sub) != 0;
        if (hits) best = size;
    }
    if (best < 0) return std::nullopt;
    return best - 1;
}

// Does f realize scenario s with an injective assignment of labels to roots?
// Candidate mask for label v is the intersection of shares over positions
// carrying v; then a system of distinct representatives must exist.
template <class F>
bool matches(const RootProfile<F>& profile, const Scenario& s) {
    if (s.degree() != profile.degree) return false;
    if (!profile.ca()) return false;
    int t = s.type();
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(t) + 1, profile.all_mask);
    for (int j = 1; j <= profile.degree - 1; ++j)
        cand[static_cast<std::size_t>(s.entry(j))] &= profile.shares[static_cast<std::size_t>(j - 1)];
    std::uint64_t used = 0;
    auto sdr = [&](auto&& self, std::size_t v) -> bool {
        if (v == cand.size()) return true;
        std::uint64_t avail = cand[v] & ~used;
        while (avail) {
            std::uint64_t bit = avail & (~avail + 1);
            used |= bit;
            if (self(self, v + 1)) return true;
            used &= ~bit;
            avail &= ~bit;
        }
        return false;
    };
    return sdr(sdr, 0);
}

} // namespace cav
