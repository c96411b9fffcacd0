#pragma once

// Power products in up to kMaxVars variables with fixed-width exponent
// storage, plus the two term orders the Groebner engine uses: graded reverse
// lexicographic, and a block elimination order whose dominant block is the
// tail of the variable list.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace cav {

inline constexpr std::size_t kMaxVars = 24;
inline constexpr std::uint32_t kMaxExponent = 0xffff;

class Monomial {
public:
    Monomial() : n_(0) { e_.fill(0); }
    explicit Monomial(std::size_t arity) : n_(static_cast<std::uint8_t>(arity)) {
        if (arity > kMaxVars) throw std::invalid_argument("Monomial: too many variables");
        e_.fill(0);
    }

    std::size_t arity() const { return n_; }
    std::uint16_t operator[](std::size_t i) const { return e_[i]; }

    void set(std::size_t i, std::uint32_t v) {
        if (i >= n_) throw std::out_of_range("Monomial: variable index");
        if (v > kMaxExponent) throw std::overflow_error("Monomial: exponent overflow");
        e_[i] = static_cast<std::uint16_t>(v);
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (std::size_t i = 0; i < n_; ++i) d += e_[i];
        return d;
    }
    std::uint32_t degree_on(std::size_t lo, std::size_t hi) const {
        std::uint32_t d = 0;
        for (std::size_t i = lo; i < hi; ++i) d += e_[i];
        return d;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] != 0) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.check_same_arity(b));
        for (std::size_t i = 0; i < r.n_; ++i) {
            std::uint32_t s = static_cast<std::uint32_t>(a.e_[i]) + b.e_[i];
            if (s > kMaxExponent) throw std::overflow_error("Monomial: exponent overflow");
            r.e_[i] = static_cast<std::uint16_t>(s);
        }
        return r;
    }

    bool divides(const Monomial& m) const {
        check_same_arity(m);
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }

    // this / m; requires m.divides(*this).
    Monomial divided_by(const Monomial& m) const {
        Monomial r(check_same_arity(m));
        for (std::size_t i = 0; i < n_; ++i) {
            if (m.e_[i] > e_[i]) throw std::domain_error("Monomial: not divisible");
            r.e_[i] = static_cast<std::uint16_t>(e_[i] - m.e_[i]);
        }
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.check_same_arity(b));
        for (std::size_t i = 0; i < r.n_; ++i)
            r.e_[i] = a.e_[i] > b.e_[i] ? a.e_[i] : b.e_[i];
        return r;
    }

    static bool coprime(const Monomial& a, const Monomial& b) {
        a.check_same_arity(b);
        for (std::size_t i = 0; i < a.n_; ++i)
            if (a.e_[i] != 0 && b.e_[i] != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

    std::size_t hash() const {
        std::size_t h = n_;
        for (std::size_t i = 0; i < n_; ++i)
            h = h * 1099511628211ull + e_[i];
        return h;
    }

private:
    std::size_t check_same_arity(const Monomial& m) const {
        if (n_ != m.n_) throw std::invalid_argument("Monomial: arity mismatch");
        return n_;
    }
    std::uint8_t n_;
    std::array<std::uint16_t, kMaxVars> e_;
};

// cmp conventions: negative means a < b in the order, zero equal, positive a > b.
namespace detail {

// Grevlex on the variable window [lo, hi): higher total degree wins; on ties
// the monomial whose rightmost differing exponent is smaller wins.
inline int cmp_grevlex_window(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint32_t da = a.degree_on(lo, hi), db = b.degree_on(lo, hi);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace detail

class MonomialOrder {
public:
    static MonomialOrder grevlex() { return MonomialOrder(0); }

    // Variables at index >= split form the dominant block; within each block
    // the comparison is grevlex.  With split == 0 this degenerates to plain
    // grevlex on the whole variable list.
    static MonomialOrder block_elim(std::size_t split) { return MonomialOrder(split); }

    std::size_t split() const { return split_; }
    bool is_plain_grevlex() const { return split_ == 0; }

    int cmp(const Monomial& a, const Monomial& b) const {
        if (a.arity() != b.arity()) throw std::invalid_argument("MonomialOrder: arity mismatch");
        if (split_ > 0 && split_ < a.arity()) {
            int c = detail::cmp_grevlex_window(a, b, split_, a.arity());
            if (c != 0) return c;
            return detail::cmp_grevlex_window(a, b, 0, split_);
        }
        return detail::cmp_grevlex_window(a, b, 0, a.arity());
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }
    bool equal(const Monomial& a, const Monomial& b) const { return cmp(a, b) == 0; }

    friend bool operator==(const MonomialOrder& x, const MonomialOrder& y) {
        return x.split_ == y.split_;
    }

private:
    explicit MonomialOrder(std::size_t split) : split_(split) {}
    std::size_t split_;
};

} // namespace cav

template <>
struct std::hash<cav::Monomial> {
    std::size_t operator()(const cav::Monomial& m) const { return m.hash(); }
};
