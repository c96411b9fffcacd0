#pragma once

// Buchberger engine over an exact field: sugar selection strategy backed by
// the normal strategy for ties, Gebauer-Moller pair pruning, full normal
// forms, content scaling over Q and monic scaling over F_p, explicit
// pair/time budgets, and optional cofactor tracking so a unit ideal yields an
// exact Nullstellensatz certificate 1 = sum g_i * f_i that is re-verified by
// multiplication.
//
// Sugar (the degree the computation would have if the inputs had been
// homogenized) keeps pair selection sane under orders that are not degree
// compatible: plain smallest-lcm-degree selection diverges badly on block
// elimination orders, growing the basis one element per pair.
//
// Determinism: pair selection breaks ties on (lcm degree, lcm order,
// indices), reducers are searched in basis order, and the final basis is the
// reduced Groebner basis, so results do not depend on scheduling.

#include "cav/poly.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace cav {

struct GroebnerBudget {
    std::uint64_t max_pairs = 10'000'000;          // S-pairs processed
    std::optional<double> max_seconds = std::nullopt;
};

enum class GBStatus { complete, pair_budget_exceeded, time_budget_exceeded };

struct GroebnerStats {
    std::uint64_t pairs_processed = 0;
    std::uint64_t zero_reductions = 0;
    std::uint64_t basis_additions = 0;
    double seconds = 0.0;
};

template <class F>
struct GroebnerResult {
    GBStatus status = GBStatus::complete;
    std::vector<Poly<F>> basis;           // reduced basis, meaningful when complete
    GroebnerStats stats;
};

enum class UnitVerdict { unit, not_unit, indeterminate };

inline const char* to_string(UnitVerdict v) {
    switch (v) {
        case UnitVerdict::unit: return "unit";
        case UnitVerdict::not_unit: return "not_unit";
        default: return "indeterminate";
    }
}

struct Certificate {
    std::vector<Poly<RationalField>> cofactors;  // one per input generator
};

struct CertificateOutcome {
    UnitVerdict verdict = UnitVerdict::indeterminate;
    GBStatus status = GBStatus::pair_budget_exceeded;
    std::optional<Certificate> certificate;  // present iff verdict == unit
    GroebnerStats stats;
};

namespace detail {

template <class F, bool WithRep>
class Buchberger {
    using Elem = typename F::Elem;
    using Term = typename Poly<F>::Term;

    struct Row {
        std::vector<Term> terms;        // sorted descending in the active order
        std::vector<Poly<F>> rep;       // coordinates w.r.t. the input generators
        std::uint32_t sugar = 0;        // phantom homogenized degree
        bool alive = true;
    };

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::uint32_t deg;
        std::uint32_t sugar;
    };

public:
    Buchberger(const std::vector<Poly<F>>& gens, MonomialOrder order, GroebnerBudget budget)
        : order_(order), budget_(budget) {
        for (const auto& g : gens) {
            if (ring_ == nullptr) ring_ = g.ring();
            g.check_ring(Poly<F>(ring_));
        }
        if (ring_ == nullptr) throw std::invalid_argument("groebner: no generators");
        inputs_ = &gens;
    }

    GroebnerResult<F> run_basis() {
        auto t0 = std::chrono::steady_clock::now();
        GroebnerResult<F> out;
        out.status = main_loop();
        if (out.status == GBStatus::complete && !unit_row_) reduce_final();
        out.stats = stats_;
        out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (out.status == GBStatus::complete) {
            if (unit_row_) {
                out.basis.push_back(Poly<F>::one(ring_));
            } else {
                for (auto& row : g_)
                    if (row.alive) out.basis.push_back(to_poly(row));
            }
        }
        return out;
    }

    // Unit verdict plus (when WithRep) the certificate cofactors.
    CertificateOutcome run_unit() {
        auto t0 = std::chrono::steady_clock::now();
        CertificateOutcome out;
        out.status = main_loop();
        stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.stats = stats_;
        if (unit_row_) {
            out.verdict = UnitVerdict::unit;
            out.status = GBStatus::complete;
            if constexpr (WithRep) {
                Certificate cert;
                const Row& u = *unit_row_;
                Elem c = u.terms.front().coeff;  // the constant itself
                for (const auto& r : u.rep) cert.cofactors.push_back(r.scaled(field().inv(c)));
                verify_certificate(cert);
                out.certificate = std::move(cert);
            }
        } else if (out.status == GBStatus::complete) {
            out.verdict = UnitVerdict::not_unit;
        } else {
            out.verdict = UnitVerdict::indeterminate;
        }
        return out;
    }

private:
    const F& field() const { return ring_->field; }

    // ---- term-vector helpers (all keep descending active order) ----

    std::vector<Term> from_poly(const Poly<F>& p) const {
        std::vector<Term> t(p.terms().begin(), p.terms().end());
        std::sort(t.begin(), t.end(),
                  [&](const Term& a, const Term& b) { return order_.greater(a.mono, b.mono); });
        return t;
    }

    Poly<F> to_poly(const Row& row) const {
        std::vector<Term> t(row.terms);
        return Poly<F>::from_terms(ring_, std::move(t));
    }

    std::vector<Term> mult(const std::vector<Term>& ts, const Monomial& m, const Elem& c) const {
        std::vector<Term> out;
        out.reserve(ts.size());
        for (const auto& t : ts) out.push_back({t.mono * m, field().mul(t.coeff, c)});
        return out;
    }

    std::vector<Term> sub_merged(const std::vector<Term>& a, const std::vector<Term>& b) const {
        std::vector<Term> out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            int c;
            if (i == a.size()) c = -1;
            else if (j == b.size()) c = 1;
            else c = order_.cmp(a[i].mono, b[j].mono);
            if (c > 0) {
                out.push_back(a[i++]);
            } else if (c < 0) {
                out.push_back({b[j].mono, field().neg(b[j].coeff)});
                ++j;
            } else {
                Elem v = field().sub(a[i].coeff, b[j].coeff);
                if (!field().is_zero(v)) out.push_back({a[i].mono, std::move(v)});
                ++i, ++j;
            }
        }
        return out;
    }

    Poly<F> term_poly(const Monomial& m, const Elem& c) const {
        std::vector<Term> one{{m, c}};
        return Poly<F>::from_terms(ring_, std::move(one));
    }

    // Content scaling over Q, monic scaling elsewhere; rep scales along.
    void canonical_scale(Row& row) const {
        if (row.terms.empty()) return;
        if constexpr (std::is_same_v<F, RationalField>) {
            using boost::multiprecision::gcd;
            using boost::multiprecision::lcm;
            BigInt l = 1, g = 0;
            for (const auto& t : row.terms) l = lcm(l, den(t.coeff));
            for (const auto& t : row.terms) g = gcd(g, num(t.coeff) * (l / den(t.coeff)));
            BigRat scale = make_rat(g, l);
            if (row.terms.front().coeff < 0) scale = -scale;
            for (auto& t : row.terms) t.coeff /= scale;
            if constexpr (WithRep) {
                BigRat inv_scale = 1 / scale;
                for (auto& r : row.rep) r = r.scaled(inv_scale);
            }
        } else {
            Elem c = field().inv(row.terms.front().coeff);
            for (auto& t : row.terms) t.coeff = field().mul(t.coeff, c);
            if constexpr (WithRep) {
                for (auto& r : row.rep) r = r.scaled(c);
            }
        }
    }

    // Full normal form of row against the current basis (in place).
    void normal_form(Row& row) {
        std::vector<Term> done;
        while (!row.terms.empty()) {
            const Monomial& lm = row.terms.front().mono;
            const Row* red = nullptr;
            for (const auto& cand : g_) {
                if (cand.terms.front().mono.divides(lm)) {
                    red = &cand;
                    break;
                }
            }
            if (!red) {
                done.push_back(row.terms.front());
                row.terms.erase(row.terms.begin());
                continue;
            }
            Elem c = field().div(row.terms.front().coeff, red->terms.front().coeff);
            Monomial m = lm.divided_by(red->terms.front().mono);
            row.sugar = std::max(row.sugar, m.total_degree() + red->sugar);
            row.terms = sub_merged(row.terms, mult(red->terms, m, c));
            if constexpr (WithRep) {
                Poly<F> shift = term_poly(m, c);
                for (std::size_t k = 0; k < row.rep.size(); ++k)
                    row.rep[k] = row.rep[k] - shift * red->rep[k];
            }
            // Keep numbers small while nothing has been moved to the tail yet.
            if (done.empty()) canonical_scale(row);
        }
        row.terms = std::move(done);
    }

    bool is_unit_row(const Row& row) const {
        return row.terms.size() == 1 && row.terms.front().mono.is_identity();
    }

    // Gebauer-Moller UPDATE: prune the new pairs among themselves, apply the
    // coprimality criterion, drop superseded old pairs, then install the row.
    void install(Row row) {
        const std::size_t t = g_.size();
        const Monomial& lmh = row.terms.front().mono;

        struct Cand {
            std::size_t i;
            Monomial lcm;
            std::uint32_t sugar;
            bool coprime;
        };
        std::vector<Cand> cand;
        for (std::size_t i = 0; i < t; ++i) {
            if (!g_[i].alive) continue;
            const Monomial& lmi = g_[i].terms.front().mono;
            Monomial l = Monomial::lcm(lmi, lmh);
            std::uint32_t s = std::max(g_[i].sugar + l.total_degree() - lmi.total_degree(),
                                       row.sugar + l.total_degree() - lmh.total_degree());
            cand.push_back({i, std::move(l), s, Monomial::coprime(lmi, lmh)});
        }
        std::vector<Cand> kept;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            bool drop = false;
            if (!cand[a].coprime) {
                for (std::size_t b = 0; b < cand.size() && !drop; ++b) {
                    if (a == b) continue;
                    if (!cand[b].lcm.divides(cand[a].lcm)) continue;
                    if (!(cand[b].lcm == cand[a].lcm)) drop = true;          // proper divisor wins
                    else if (cand[b].coprime) drop = true;                    // coprime twin kills
                    else if (b < a) drop = true;                              // one per lcm class
                }
            }
            if (!drop) kept.push_back(cand[a]);
        }
        std::vector<Pair> survivors;
        for (const auto& p : pairs_) {
            Monomial l1 = Monomial::lcm(g_[p.i].terms.front().mono, lmh);
            Monomial l2 = Monomial::lcm(g_[p.j].terms.front().mono, lmh);
            bool superseded = lmh.divides(p.lcm) && !(l1 == p.lcm) && !(l2 == p.lcm);
            if (!superseded) survivors.push_back(p);
        }
        pairs_ = std::move(survivors);
        for (const auto& c : kept)
            if (!c.coprime) pairs_.push_back({c.i, t, c.lcm, c.lcm.total_degree(), c.sugar});

        for (std::size_t i = 0; i < t; ++i)
            if (g_[i].alive && lmh.divides(g_[i].terms.front().mono)) g_[i].alive = false;
        g_.push_back(std::move(row));
        ++stats_.basis_additions;
    }

    std::size_t select_pair() const {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k) {
            const Pair& a = pairs_[k];
            const Pair& b = pairs_[best];
            int c = 0;
            if (a.sugar != b.sugar) c = a.sugar < b.sugar ? -1 : 1;
            if (c == 0 && a.deg != b.deg) c = a.deg < b.deg ? -1 : 1;
            if (c == 0) c = order_.cmp(a.lcm, b.lcm);
            if (c == 0 && a.i != b.i) c = a.i < b.i ? -1 : 1;
            if (c == 0) c = a.j < b.j ? -1 : 1;
            if (c < 0) best = k;
        }
        return best;
    }

    Row make_spair(const Pair& p) {
        const Row& f = g_[p.i];
        const Row& g = g_[p.j];
        Monomial uf = p.lcm.divided_by(f.terms.front().mono);
        Monomial ug = p.lcm.divided_by(g.terms.front().mono);
        Elem cf = field().inv(f.terms.front().coeff);
        Elem cg = field().inv(g.terms.front().coeff);
        Row r;
        r.sugar = std::max(f.sugar + uf.total_degree(), g.sugar + ug.total_degree());
        r.terms = sub_merged(mult(f.terms, uf, cf), mult(g.terms, ug, cg));
        if constexpr (WithRep) {
            Poly<F> sf = term_poly(uf, cf);
            Poly<F> sg = term_poly(ug, cg);
            r.rep.reserve(f.rep.size());
            for (std::size_t k = 0; k < f.rep.size(); ++k)
                r.rep.push_back(sf * f.rep[k] - sg * g.rep[k]);
        }
        return r;
    }

    GBStatus main_loop() {
        const std::size_t n = inputs_->size();
        for (std::size_t i = 0; i < n; ++i) {
            const Poly<F>& gen = (*inputs_)[i];
            if (gen.is_zero()) continue;
            Row row;
            row.terms = from_poly(gen);
            for (const auto& t : row.terms)
                row.sugar = std::max(row.sugar, t.mono.total_degree());
            if constexpr (WithRep) {
                for (std::size_t k = 0; k < n; ++k)
                    row.rep.push_back(k == i ? Poly<F>::one(ring_) : Poly<F>::zero(ring_));
            }
            canonical_scale(row);
            normal_form(row);
            if (row.terms.empty()) continue;
            canonical_scale(row);
            if (is_unit_row(row)) {
                unit_row_ = std::move(row);
                return GBStatus::complete;
            }
            install(std::move(row));
        }

        auto started = std::chrono::steady_clock::now();
        while (!pairs_.empty()) {
            if (stats_.pairs_processed >= budget_.max_pairs) return GBStatus::pair_budget_exceeded;
            if (budget_.max_seconds && (stats_.pairs_processed & 63) == 0) {
                double elapsed =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
                if (elapsed > *budget_.max_seconds) return GBStatus::time_budget_exceeded;
            }
            std::size_t k = select_pair();
            Pair p = pairs_[k];
            pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(k));
            ++stats_.pairs_processed;
            Row r = make_spair(p);
            normal_form(r);
            if (r.terms.empty()) {
                ++stats_.zero_reductions;
                continue;
            }
            canonical_scale(r);
            if (is_unit_row(r)) {
                unit_row_ = std::move(r);
                return GBStatus::complete;
            }
            install(std::move(r));
        }
        return GBStatus::complete;
    }

    // Minimalize and tail-reduce into the reduced basis (leading coefficient 1).
    void reduce_final() {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < g_.size(); ++i)
            if (g_[i].alive) keep.push_back(i);
        // Minimal basis: no leading monomial divides another.
        for (std::size_t a : keep)
            for (std::size_t b : keep) {
                if (a == b || !g_[a].alive || !g_[b].alive) continue;
                if (g_[a].terms.front().mono.divides(g_[b].terms.front().mono)) g_[b].alive = false;
            }
        std::vector<Row> reduced;
        for (std::size_t i = 0; i < g_.size(); ++i) {
            if (!g_[i].alive) continue;
            Row row = std::move(g_[i]);
            g_[i].alive = false;  // not a reducer for itself
            std::vector<Row> others;
            for (const auto& r : reduced) others.push_back(clone_terms(r));
            for (std::size_t j = 0; j < g_.size(); ++j)
                if (g_[j].alive) others.push_back(clone_terms(g_[j]));
            std::swap(g_, others);
            normal_form(row);
            std::swap(g_, others);
            canonical_scale(row);
            if (!row.terms.empty()) {
                // Leading coefficient exactly 1 in the reduced basis.
                Elem c = field().inv(row.terms.front().coeff);
                for (auto& t : row.terms) t.coeff = field().mul(t.coeff, c);
                if constexpr (WithRep)
                    for (auto& r : row.rep) r = r.scaled(c);
                reduced.push_back(std::move(row));
            }
        }
        std::sort(reduced.begin(), reduced.end(), [&](const Row& a, const Row& b) {
            return order_.less(a.terms.front().mono, b.terms.front().mono);
        });
        for (auto& r : reduced) r.alive = true;
        g_ = std::move(reduced);
    }

    Row clone_terms(const Row& r) const {
        Row out;
        out.terms = r.terms;
        out.alive = true;
        return out;
    }

    void verify_certificate(const Certificate& cert) const {
        if constexpr (std::is_same_v<F, RationalField>) {
            Poly<F> acc(ring_);
            for (std::size_t i = 0; i < cert.cofactors.size(); ++i)
                acc = acc + cert.cofactors[i] * (*inputs_)[i];
            if (!(acc == Poly<F>::one(ring_)))
                throw std::logic_error("groebner: certificate failed exact re-verification");
        }
    }

    RingPtr<F> ring_;
    const std::vector<Poly<F>>* inputs_;
    MonomialOrder order_;
    GroebnerBudget budget_;
    std::vector<Row> g_;
    std::vector<Pair> pairs_;
    std::optional<Row> unit_row_;
    GroebnerStats stats_;
};

} // namespace detail

template <class F>
GroebnerResult<F> groebner_basis(const std::vector<Poly<F>>& gens, const MonomialOrder& order,
                                 const GroebnerBudget& budget = {}) {
    if (gens.empty()) return {};
    detail::Buchberger<F, false> engine(gens, order, budget);
    return engine.run_basis();
}

// Unit-ideal verdict with early exit as soon as a nonzero constant appears.
// An empty or all-zero generator list is the zero ideal: not the unit ideal.
template <class F>
UnitVerdict unit_ideal_verdict(const std::vector<Poly<F>>& gens, const MonomialOrder& order,
                               const GroebnerBudget& budget = {}, GroebnerStats* stats = nullptr) {
    bool all_zero = true;
    for (const auto& g : gens) all_zero = all_zero && g.is_zero();
    if (gens.empty() || all_zero) return UnitVerdict::not_unit;
    detail::Buchberger<F, false> engine(gens, order, budget);
    auto out = engine.run_unit();
    if (stats) *stats = out.stats;
    return out.verdict;
}

// Certificate-carrying variant over Q.
inline CertificateOutcome unit_certificate(const std::vector<Poly<RationalField>>& gens,
                                           const MonomialOrder& order,
                                           const GroebnerBudget& budget = {}) {
    bool all_zero = true;
    for (const auto& g : gens) all_zero = all_zero && g.is_zero();
    if (gens.empty() || all_zero) {
        CertificateOutcome out;
        out.verdict = UnitVerdict::not_unit;
        out.status = GBStatus::complete;
        return out;
    }
    detail::Buchberger<RationalField, true> engine(gens, order, budget);
    return engine.run_unit();
}

// Normal form of p against a fixed list of nonzero polynomials.
template <class F>
Poly<F> normal_form(const Poly<F>& p, const std::vector<Poly<F>>& basis, const MonomialOrder& order) {
    Poly<F> rem(p.ring());
    Poly<F> work = p;
    while (!work.is_zero()) {
        const auto& lt = work.leading_term(order);
        const Poly<F>* red = nullptr;
        for (const auto& b : basis)
            if (!b.is_zero() && b.leading_term(order).mono.divides(lt.mono)) {
                red = &b;
                break;
            }
        if (!red) {
            auto t = lt;
            std::vector<typename Poly<F>::Term> single{t};
            Poly<F> moved = Poly<F>::from_terms(p.ring(), std::move(single));
            rem = rem + moved;
            work = work - moved;
            continue;
        }
        const auto& ltb = red->leading_term(order);
        std::vector<typename Poly<F>::Term> single{
            {lt.mono.divided_by(ltb.mono), p.field().div(lt.coeff, ltb.coeff)}};
        work = work - Poly<F>::from_terms(p.ring(), std::move(single)) * *red;
    }
    return rem;
}

// Buchberger criterion re-check: inputs reduce to zero and every S-pair of
// the basis reduces to zero.  Intended for small instances in audits.
template <class F>
bool verify_groebner_basis(const std::vector<Poly<F>>& gens, const std::vector<Poly<F>>& basis,
                           const MonomialOrder& order) {
    if (basis.empty()) {
        for (const auto& g : gens)
            if (!g.is_zero()) return false;
        return true;
    }
    for (const auto& g : gens)
        if (!normal_form(g, basis, order).is_zero()) return false;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const auto& ti = basis[i].leading_term(order);
            const auto& tj = basis[j].leading_term(order);
            Monomial l = Monomial::lcm(ti.mono, tj.mono);
            const F& fld = basis[i].field();
            std::vector<typename Poly<F>::Term> ui{{l.divided_by(ti.mono), fld.inv(ti.coeff)}};
            std::vector<typename Poly<F>::Term> uj{{l.divided_by(tj.mono), fld.inv(tj.coeff)}};
            Poly<F> s = Poly<F>::from_terms(basis[i].ring(), std::move(ui)) * basis[i] -
                        Poly<F>::from_terms(basis[j].ring(), std::move(uj)) * basis[j];
            if (!normal_form(s, basis, order).is_zero()) return false;
        }
    return true;
}

} // namespace cav
