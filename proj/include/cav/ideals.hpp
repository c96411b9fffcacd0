#pragma once

// Ideal constructions for scenario verification.  For a scenario s of degree
// d and type t >= 1, the affine scenario ideal lives in
// R = k[P_1..P_{t-1}, A_1..A_{d-2-t}] under the normalization P_0 = 0 and
// P_t = 1, with
//   F = x^2 (x-P_1)...(x-P_t) (x^{d-2-t} + A_1 x^{d-3-t} + ... + A_{d-2-t})
// and generators F_H^(j)(P_{s_j}) for j = 2..d-1.  The variety is empty over
// the algebraic closure exactly when the ideal is the unit ideal.
//
// The speedup chain mirrors the verification algorithm: generators coming
// from a leading run of zero entries collapse to single A-variables, those
// A's are substituted away elsewhere, and the first surviving generator
// loses one factor of P_1.  Both steps enlarge the ideal in a way that is
// only sound when lower types were already handled and the scenario list is
// descendant-closed; the pipeline enforces that discipline.
//
// The resultant route is an independent construction of the whole type-t
// slice: Res_x(F, F_H^(j)) for j = 2..d-1, with no scenario decomposition.

#include "cav/poly.hpp"
#include "cav/resultant.hpp"
#include "cav/scenario.hpp"

#include <string>
#include <vector>

namespace cav {

template <class F>
struct ScenarioIdeal {
    Scenario scenario;
    RingPtr<F> ring;              // P_1..P_{t-1}, A_1..A_{d-2-t}
    std::vector<Poly<F>> gens;    // index j-2 holds the generator for j
    MonomialOrder order;          // eliminates the A-block first
    std::vector<std::string> notes;
};

namespace detail {

inline std::vector<std::string> scenario_vars(int d, int t, bool with_x) {
    std::vector<std::string> vars;
    for (int v = 1; v <= t - 1; ++v) vars.push_back("P" + std::to_string(v));
    for (int i = 1; i <= d - 2 - t; ++i) vars.push_back("A" + std::to_string(i));
    if (with_x) vars.push_back("x");
    return vars;
}

} // namespace detail

template <class F>
RingPtr<F> scenario_ring(const F& field, int d, int t, bool with_x) {
    if (d < 3 || d > 25) throw std::invalid_argument("scenario_ring: degree out of range");
    if (t < 1 || t > d - 2) throw std::invalid_argument("scenario_ring: type out of range");
    return make_ring(field, detail::scenario_vars(d, t, with_x));
}

// F as above, in a ring whose last variable is x.
template <class F>
Poly<F> scenario_product(int d, int t, const RingPtr<F>& S) {
    const std::size_t x = S->arity() - 1;
    Poly<F> f = Poly<F>::variable(S, x, 2);
    for (int v = 1; v <= t - 1; ++v)
        f = f * (Poly<F>::variable(S, x) - Poly<F>::variable(S, "P" + std::to_string(v)));
    f = f * (Poly<F>::variable(S, x) - Poly<F>::one(S));
    std::vector<typename Poly<F>::Term> g;
    {
        Monomial lead(S->arity());
        lead.set(x, static_cast<std::uint32_t>(d - 2 - t));
        g.push_back({lead, S->field.one()});
    }
    for (int i = 1; i <= d - 2 - t; ++i) {
        Monomial m(S->arity());
        m.set(*S->var_index("A" + std::to_string(i)), 1);
        m.set(x, static_cast<std::uint32_t>(d - 2 - t - i));
        g.push_back({m, S->field.one()});
    }
    return f * Poly<F>::from_terms(S, std::move(g));
}

// Every generator is jointly linear in the A-block; a violation means the
// construction itself is broken.
template <class F>
void check_a_linearity(const ScenarioIdeal<F>& ideal, int t) {
    const std::size_t a_lo = static_cast<std::size_t>(t - 1);
    for (const auto& g : ideal.gens)
        for (const auto& term : g.terms())
            if (term.mono.degree_on(a_lo, ideal.ring->arity()) > 1)
                throw std::logic_error("scenario ideal: generator not linear in the A-block");
}

template <class F>
ScenarioIdeal<F> build_scenario_ideal(const Scenario& s, const F& field, bool speedups = true) {
    const int d = s.degree();
    const int t = s.type();
    if (t < 1)
        throw std::invalid_argument(
            "build_scenario_ideal: type 0 forces a linear power and has no ideal model");

    RingPtr<F> R = scenario_ring(field, d, t, false);
    RingPtr<F> S = scenario_ring(field, d, t, true);
    const std::size_t x = S->arity() - 1;
    Poly<F> product = scenario_product(d, t, S);

    auto label_value = [&](int v) -> Poly<F> {
        if (v == 0) return Poly<F>::zero(R);
        if (v == t) return Poly<F>::one(R);
        return Poly<F>::variable(R, "P" + std::to_string(v));
    };

    ScenarioIdeal<F> ideal{s, R, {}, MonomialOrder::block_elim(static_cast<std::size_t>(t - 1)), {}};
    for (int j = 2; j <= d - 1; ++j) {
        auto hj = hasse_derivative(product, x, static_cast<std::uint32_t>(j));
        ideal.gens.push_back(specialize(hj, {{"x", label_value(s.entry(j))}}));
    }

    if (speedups) {
        int j0 = 2;
        while (j0 <= d - 1 && s.entry(j0) == 0) ++j0;
        std::vector<std::size_t> killed;
        for (int j = 2; j < j0; ++j) {
            const std::string name = "A" + std::to_string(d - t - j);
            ideal.gens[static_cast<std::size_t>(j - 2)] = Poly<F>::variable(R, name);
            killed.push_back(*R->var_index(name));
            ideal.notes.push_back("generator " + std::to_string(j) + " collapsed to " + name);
        }
        for (int j = j0; j <= d - 1; ++j)
            for (std::size_t v : killed)
                ideal.gens[static_cast<std::size_t>(j - 2)] =
                    substitute(ideal.gens[static_cast<std::size_t>(j - 2)], v, Poly<F>::zero(R));
        if (t >= 2 && j0 <= d - 1) {
            ideal.gens[static_cast<std::size_t>(j0 - 2)] =
                exact_div(ideal.gens[static_cast<std::size_t>(j0 - 2)], Poly<F>::variable(R, "P1"));
            ideal.notes.push_back("generator " + std::to_string(j0) + " divided by P1");
        }
    }

    check_a_linearity(ideal, t);
    return ideal;
}

// Scenario-free slice of fixed type: Res_x(F, F_H^(j)) for j = 2..d-1 in R.
// Unit ideal over the algebraic closure iff no CA-polynomial of degree d
// exists over that field.  Sylvester determinants grow quickly; kept small.
template <class F>
std::vector<Poly<F>> resultant_system(int d, int t, const F& field) {
    if (d < 3 || d > 8) throw std::invalid_argument("resultant_system: degree out of range (3..8)");
    if (t < 1 || t > d - 2) throw std::invalid_argument("resultant_system: type out of range");
    RingPtr<F> R = scenario_ring(field, d, t, false);
    RingPtr<F> S = scenario_ring(field, d, t, true);
    const std::size_t x = S->arity() - 1;
    Poly<F> product = scenario_product(d, t, S);
    std::vector<Poly<F>> gens;
    for (int j = 2; j <= d - 1; ++j) {
        auto hj = hasse_derivative(product, x, static_cast<std::uint32_t>(j));
        Poly<F> res = hj.is_zero() ? Poly<F>::zero(S) : resultant(product, hj, x);
        gens.push_back(specialize(res, {{"x", Poly<F>::zero(R)}}));
    }
    return gens;
}

} // namespace cav
