#pragma once

// Resultants through Sylvester matrices, evaluated by fraction-free Bareiss
// elimination.  Every division in Bareiss is exact, so the routine works over
// any integral domain given an exact-division callback; here it is used with
// integer entries and with polynomial entries.

#include "cav/poly.hpp"

#include <functional>
#include <vector>

namespace cav {

// One-step fraction-free Gaussian elimination.  `div` must perform exact
// division (the algorithm guarantees divisibility).
template <class T, class MulFn, class SubFn, class DivFn, class ZeroFn, class NegFn>
T bareiss_determinant(std::vector<std::vector<T>> a, T one, MulFn mul, SubFn sub, DivFn div,
                      ZeroFn is_zero, NegFn neg) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("bareiss: matrix not square");
    if (n == 0) return one;
    T prev = one;
    bool flip = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(a[k][k])) {
            std::size_t pivot = k + 1;
            while (pivot < n && is_zero(a[pivot][k])) ++pivot;
            if (pivot == n) {
                // Column k has no pivot: singular.
                return sub(one, one);
            }
            std::swap(a[k], a[pivot]);
            flip = !flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = div(sub(mul(a[k][k], a[i][j]), mul(a[i][k], a[k][j])), prev);
            a[i][k] = sub(a[i][k], a[i][k]);
        }
        prev = a[k][k];
    }
    return flip ? neg(a[n - 1][n - 1]) : a[n - 1][n - 1];
}

inline BigInt det_integer_matrix(std::vector<std::vector<BigInt>> m) {
    return bareiss_determinant<BigInt>(
        std::move(m), BigInt(1), [](const BigInt& a, const BigInt& b) { return a * b; },
        [](const BigInt& a, const BigInt& b) { return a - b; },
        [](const BigInt& a, const BigInt& b) { return a / b; },
        [](const BigInt& a) { return a == 0; }, [](const BigInt& a) { return -a; });
}

template <class F>
Poly<F> det_poly_matrix(std::vector<std::vector<Poly<F>>> m) {
    if (m.empty()) throw std::invalid_argument("det_poly_matrix: empty matrix");
    RingPtr<F> ring = m[0][0].ring();
    return bareiss_determinant<Poly<F>>(
        std::move(m), Poly<F>::one(ring), [](const Poly<F>& a, const Poly<F>& b) { return a * b; },
        [](const Poly<F>& a, const Poly<F>& b) { return a - b; },
        [](const Poly<F>& a, const Poly<F>& b) { return exact_div(a, b); },
        [](const Poly<F>& a) { return a.is_zero(); }, [](const Poly<F>& a) { return -a; });
}

// Res_var(f, g).  Requires at least one of f, g to have positive degree in
// var; a degree-zero argument follows the convention Res(c, g) = c^deg(g).
template <class F>
Poly<F> resultant(const Poly<F>& f, const Poly<F>& g, std::size_t var) {
    f.check_ring(g);
    if (f.is_zero() || g.is_zero()) return Poly<F>::zero(f.ring());
    const std::uint32_t m = f.degree_in(var), n = g.degree_in(var);
    if (m == 0 && n == 0)
        throw std::invalid_argument("resultant: both arguments constant in the variable");
    if (m == 0) return f.pow(n);
    if (n == 0) return g.pow(m);

    auto fc = coeffs_in(f, var);  // ascending, size m+1
    auto gc = coeffs_in(g, var);  // ascending, size n+1
    const std::size_t size = m + n;
    std::vector<std::vector<Poly<F>>> syl(size, std::vector<Poly<F>>(size, Poly<F>::zero(f.ring())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t k = 0; k <= m; ++k) syl[i][i + k] = fc[m - k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::uint32_t k = 0; k <= n; ++k) syl[n + i][i + k] = gc[n - k];
    return det_poly_matrix(std::move(syl));
}

} // namespace cav
