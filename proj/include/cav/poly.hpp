#pragma once

// Sparse multivariate polynomials over an exact field.  Terms are kept
// strictly sorted in a fixed structural order (grevlex over the full variable
// list) with no zero coefficients, so equality is term-wise; the Groebner
// engine re-sorts into its own active order internally.

#include "cav/fields.hpp"
#include "cav/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cav {

template <class F>
struct Ring {
    F field;
    std::vector<std::string> vars;

    std::size_t arity() const { return vars.size(); }
    std::optional<std::size_t> var_index(std::string_view name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        return std::nullopt;
    }
};

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <class F>
RingPtr<F> make_ring(F field, std::vector<std::string> vars) {
    if (vars.size() > kMaxVars) throw std::invalid_argument("make_ring: too many variables");
    for (const auto& v : vars) {
        if (v.empty() || (!std::isalpha(static_cast<unsigned char>(v[0])) && v[0] != '_'))
            throw std::invalid_argument("make_ring: bad variable name '" + v + "'");
        for (char c : v)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw std::invalid_argument("make_ring: bad variable name '" + v + "'");
    }
    auto sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("make_ring: duplicate variable name");
    return std::make_shared<const Ring<F>>(Ring<F>{std::move(field), std::move(vars)});
}

template <class F>
bool same_ring(const RingPtr<F>& a, const RingPtr<F>& b) {
    if (a == b) return true;
    return a && b && a->vars == b->vars && a->field == b->field;
}

inline const MonomialOrder& canonical_order() {
    static const MonomialOrder o = MonomialOrder::grevlex();
    return o;
}

template <class F>
class Poly {
public:
    using Elem = typename F::Elem;
    struct Term {
        Monomial mono;
        Elem coeff;
    };

    explicit Poly(RingPtr<F> ring) : ring_(std::move(ring)) {
        if (!ring_) throw std::invalid_argument("Poly: null ring");
    }

    static Poly zero(RingPtr<F> ring) { return Poly(std::move(ring)); }

    static Poly constant(RingPtr<F> ring, Elem c) {
        Poly p(std::move(ring));
        if (!p.field().is_zero(c))
            p.terms_.push_back(Term{Monomial(p.ring_->arity()), std::move(c)});
        return p;
    }

    static Poly one(RingPtr<F> ring) {
        auto c = ring->field.one();
        return constant(std::move(ring), c);
    }

    static Poly variable(RingPtr<F> ring, std::size_t idx, std::uint32_t exp = 1) {
        if (idx >= ring->arity()) throw std::out_of_range("Poly::variable: index");
        Poly p(ring);
        if (exp == 0) return one(std::move(ring));
        Monomial m(ring->arity());
        m.set(idx, exp);
        p.terms_.push_back(Term{m, ring->field.one()});
        return p;
    }

    static Poly variable(RingPtr<F> ring, std::string_view name, std::uint32_t exp = 1) {
        auto idx = ring->var_index(name);
        if (!idx) throw std::invalid_argument("Poly::variable: unknown variable");
        return variable(std::move(ring), *idx, exp);
    }

    // Sorts, merges duplicate monomials, drops zeros.
    static Poly from_terms(RingPtr<F> ring, std::vector<Term> terms) {
        Poly p(std::move(ring));
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
            return canonical_order().greater(a.mono, b.mono);
        });
        const F& f = p.field();
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff = f.add(p.terms_.back().coeff, t.coeff);
                if (f.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
            } else if (!f.is_zero(t.coeff)) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const RingPtr<F>& ring() const { return ring_; }
    const F& field() const { return ring_->field; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t n_terms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_identity());
    }
    // The constant coefficient (zero polynomial gives 0).
    Elem constant_value() const {
        for (const auto& t : terms_)
            if (t.mono.is_identity()) return t.coeff;
        return field().zero();
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }
    std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.mono[var]);
        return d;
    }
    bool uses_var(std::size_t var) const {
        for (const auto& t : terms_)
            if (t.mono[var] != 0) return true;
        return false;
    }

    Elem coeff_of(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.mono == m) return t.coeff;
        return field().zero();
    }

    // Leading term under an arbitrary order; the canonical order hits the
    // fast path.  Zero polynomial has no leading term.
    const Term& leading_term(const MonomialOrder& ord) const {
        if (terms_.empty()) throw std::domain_error("Poly: leading term of zero");
        if (ord == canonical_order()) return terms_.front();
        const Term* best = &terms_[0];
        for (const auto& t : terms_)
            if (ord.greater(t.mono, best->mono)) best = &t;
        return *best;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_ring(b);
        Poly r(a.ring_);
        const F& f = a.field();
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() ||
                (i < a.terms_.size() && canonical_order().greater(a.terms_[i].mono, b.terms_[j].mono))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() ||
                       canonical_order().greater(b.terms_[j].mono, a.terms_[i].mono)) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                Elem c = f.add(a.terms_[i].coeff, b.terms_[j].coeff);
                if (!f.is_zero(c)) r.terms_.push_back(Term{a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_ring(b);
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        const F& f = a.field();
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_)
                prod.push_back(Term{ta.mono * tb.mono, f.mul(ta.coeff, tb.coeff)});
        return from_terms(a.ring_, std::move(prod));
    }

    Poly scaled(const Elem& c) const {
        const F& f = field();
        if (f.is_zero(c)) return Poly(ring_);
        Poly r(*this);
        for (auto& t : r.terms_) t.coeff = f.mul(t.coeff, c);
        return r;
    }

    Poly pow(std::uint32_t e) const {
        Poly base(*this), r = one(ring_);
        while (e) {
            if (e & 1) r = r * base;
            if (e >>= 1) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (!same_ring(a.ring_, b.ring_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        const F& f = a.field();
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono) ||
                !f.equal(a.terms_[i].coeff, b.terms_[i].coeff))
                return false;
        return true;
    }

    Elem eval(const std::vector<Elem>& point) const {
        if (point.size() != ring_->arity()) throw std::invalid_argument("Poly::eval: point arity");
        const F& f = field();
        Elem acc = f.zero();
        for (const auto& t : terms_) {
            Elem v = t.coeff;
            for (std::size_t i = 0; i < ring_->arity(); ++i)
                for (std::uint32_t e = 0; e < t.mono[i]; ++e) v = f.mul(v, point[i]);
            acc = f.add(acc, v);
        }
        return acc;
    }

    void check_ring(const Poly& other) const {
        if (!same_ring(ring_, other.ring_)) throw std::invalid_argument("Poly: ring mismatch");
    }

private:
    RingPtr<F> ring_;
    std::vector<Term> terms_;
};

// j-th Hasse derivative in the given variable: x^e maps to C(e, j) x^(e-j).
// Over F_p binomial coefficients are reduced mod p, so terms can vanish.
template <class F>
Poly<F> hasse_derivative(const Poly<F>& f, std::size_t var, std::uint32_t j) {
    if (var >= f.ring()->arity()) throw std::out_of_range("hasse_derivative: variable index");
    std::vector<typename Poly<F>::Term> out;
    const F& fld = f.field();
    for (const auto& t : f.terms()) {
        std::uint32_t e = t.mono[var];
        if (e < j) continue;
        auto c = fld.mul(t.coeff, fld.from_bigint(binomial(e, j)));
        if (fld.is_zero(c)) continue;
        Monomial m = t.mono;
        m.set(var, e - j);
        out.push_back({m, std::move(c)});
    }
    return Poly<F>::from_terms(f.ring(), std::move(out));
}

// Same-ring substitution of one variable by a polynomial.
template <class F>
Poly<F> substitute(const Poly<F>& f, std::size_t var, const Poly<F>& value) {
    f.check_ring(value);
    std::vector<Poly<F>> powers{Poly<F>::one(f.ring())};
    auto power = [&](std::uint32_t e) -> const Poly<F>& {
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        return powers[e];
    };
    Poly<F> acc(f.ring());
    for (const auto& t : f.terms()) {
        Monomial rest = t.mono;
        std::uint32_t e = rest[var];
        rest.set(var, 0);
        std::vector<typename Poly<F>::Term> one_term{{rest, t.coeff}};
        acc = acc + Poly<F>::from_terms(f.ring(), std::move(one_term)) * power(e);
    }
    return acc;
}

// Ring of the remaining variables after deleting `dropped` (order preserved).
template <class F>
RingPtr<F> reduced_ring(const RingPtr<F>& ring, const std::vector<std::string>& dropped) {
    std::vector<std::string> keep;
    for (const auto& v : ring->vars) {
        bool gone = false;
        for (const auto& d : dropped) {
            if (!ring->var_index(d)) throw std::invalid_argument("reduced_ring: unknown variable " + d);
            if (v == d) gone = true;
        }
        if (!gone) keep.push_back(v);
    }
    return make_ring(ring->field, std::move(keep));
}

// Simultaneous substitution; assigned values live in the ring of the
// remaining variables and the result does too.
template <class F>
Poly<F> specialize(const Poly<F>& f, const std::map<std::string, Poly<F>>& assignments) {
    std::vector<std::string> dropped;
    for (const auto& [name, _] : assignments) dropped.push_back(name);
    RingPtr<F> target = reduced_ring(f.ring(), dropped);
    for (const auto& [name, val] : assignments)
        if (!same_ring(val.ring(), target))
            throw std::invalid_argument("specialize: value for " + name + " in wrong ring");

    // old index -> new index, or the assignment for dropped variables
    const std::size_t n = f.ring()->arity();
    std::vector<std::optional<std::size_t>> remap(n);
    std::vector<const Poly<F>*> assigned(n, nullptr);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& name = f.ring()->vars[i];
        if (auto it = assignments.find(name); it != assignments.end())
            assigned[i] = &it->second;
        else
            remap[i] = *target->var_index(name);
    }

    std::vector<std::vector<Poly<F>>> powers(n);
    auto power = [&](std::size_t var, std::uint32_t e) -> const Poly<F>& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(Poly<F>::one(target));
        while (cache.size() <= e) cache.push_back(cache.back() * *assigned[var]);
        return cache[e];
    };

    Poly<F> acc(target);
    for (const auto& t : f.terms()) {
        Monomial kept(target->arity());
        Poly<F> piece = Poly<F>::constant(target, t.coeff);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t e = t.mono[i];
            if (e == 0) continue;
            if (remap[i])
                kept.set(*remap[i], e);
            else
                piece = piece * power(i, e);
        }
        std::vector<typename Poly<F>::Term> shift{{kept, f.field().one()}};
        acc = acc + piece * Poly<F>::from_terms(target, std::move(shift));
    }
    return acc;
}

// Coefficients of f as a polynomial in `var`: entry e is the coefficient of
// var^e, living in the same ring with the var-exponent cleared.
template <class F>
std::vector<Poly<F>> coeffs_in(const Poly<F>& f, std::size_t var) {
    std::vector<std::vector<typename Poly<F>::Term>> buckets(f.degree_in(var) + 1);
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        std::uint32_t e = m[var];
        m.set(var, 0);
        buckets[e].push_back({m, t.coeff});
    }
    std::vector<Poly<F>> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Poly<F>::from_terms(f.ring(), std::move(b)));
    return out;
}

// Quotient f/g when g divides f exactly; throws std::domain_error otherwise.
template <class F>
Poly<F> exact_div(const Poly<F>& f, const Poly<F>& g) {
    f.check_ring(g);
    if (g.is_zero()) throw std::domain_error("exact_div: division by zero");
    const F& fld = f.field();
    Poly<F> rem = f, quot(f.ring());
    const auto& ord = canonical_order();
    while (!rem.is_zero()) {
        const Monomial lead = rem.terms().front().mono;  // copy: rem moves below
        const typename F::Elem lc = rem.terms().front().coeff;
        const auto& lt_g = g.terms().front();
        if (!lt_g.mono.divides(lead)) throw std::domain_error("exact_div: not divisible");
        std::vector<typename Poly<F>::Term> t{{lead.divided_by(lt_g.mono), fld.div(lc, lt_g.coeff)}};
        Poly<F> step = Poly<F>::from_terms(f.ring(), std::move(t));
        quot = quot + step;
        rem = rem - step * g;
        if (!rem.is_zero() && !ord.less(rem.terms().front().mono, lead))
            throw std::logic_error("exact_div: no progress");
    }
    return quot;
}

// Content/primitive scaling over Q: f = scale * primitive where primitive has
// coprime integer coefficients and positive leading (canonical) coefficient.
inline std::pair<BigRat, Poly<RationalField>> primitive_scale(const Poly<RationalField>& f) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (f.is_zero()) return {BigRat(0), f};
    BigInt l = 1, g = 0;
    for (const auto& t : f.terms()) l = lcm(l, den(t.coeff));
    for (const auto& t : f.terms()) g = gcd(g, num(t.coeff) * (l / den(t.coeff)));
    BigRat scale = make_rat(g, l);
    if (f.terms().front().coeff < 0) scale = -scale;
    std::vector<Poly<RationalField>::Term> out;
    for (const auto& t : f.terms()) out.push_back({t.mono, t.coeff / scale});
    return {scale, Poly<RationalField>::from_terms(f.ring(), std::move(out))};
}

// ---- text form ----------------------------------------------------------

namespace detail {

template <class F>
void render_coeff(std::ostringstream& os, const F& fld, const typename F::Elem& c,
                  bool lead_var, bool first) {
    std::string s = fld.to_string(c);
    bool negative = !s.empty() && s[0] == '-';
    std::string mag = negative ? s.substr(1) : s;
    if (first)
        os << (negative ? "-" : "");
    else
        os << (negative ? " - " : " + ");
    if (!lead_var || mag != "1") {
        os << mag;
        if (lead_var) os << "*";
    }
}

} // namespace detail

template <class F>
std::string render(const Poly<F>& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms()) {
        bool has_vars = !t.mono.is_identity();
        detail::render_coeff(os, f.field(), t.coeff, has_vars, first);
        bool lead = true;
        for (std::size_t i = 0; i < f.ring()->arity(); ++i) {
            if (t.mono[i] == 0) continue;
            if (!lead) os << "*";
            os << f.ring()->vars[i];
            if (t.mono[i] > 1) os << "^" << t.mono[i];
            lead = false;
        }
        first = false;
    }
    return os.str();
}

namespace detail {

template <class F>
class PolyParser {
public:
    PolyParser(RingPtr<F> ring, std::string_view src) : ring_(std::move(ring)), src_(src) {}

    Poly<F> run() {
        Poly<F> p = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what);
    }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    BigInt parse_nat() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected number");
        return BigInt(std::string(src_.substr(start, pos_ - start)));
    }

    Poly<F> parse_expr() {
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        else (void)eat('+');
        Poly<F> acc = parse_product();
        if (neg) acc = -acc;
        while (true) {
            char c = peek();
            if (c == '+') { ++pos_; acc = acc + parse_product(); }
            else if (c == '-') { ++pos_; acc = acc - parse_product(); }
            else break;
        }
        return acc;
    }

    Poly<F> parse_product() {
        Poly<F> acc = parse_power();
        while (peek() == '*') {
            ++pos_;
            acc = acc * parse_power();
        }
        return acc;
    }

    Poly<F> parse_power() {
        Poly<F> base = parse_atom();
        if (peek() == '^') {
            ++pos_;
            BigInt e = parse_nat();
            if (e > kMaxExponent) fail("exponent too large");
            base = base.pow(e.template convert_to<std::uint32_t>());
        }
        return base;
    }

    Poly<F> parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Poly<F> inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt n = parse_nat();
            if (peek() == '/') {
                ++pos_;
                BigInt d = parse_nat();
                if (d == 0) fail("zero denominator");
                return Poly<F>::constant(ring_, ring_->field.from_rat(BigRat(n, d)));
            }
            return Poly<F>::constant(ring_, ring_->field.from_bigint(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name(src_.substr(start, pos_ - start));
            auto idx = ring_->var_index(name);
            if (!idx) fail("unknown variable '" + name + "'");
            return Poly<F>::variable(ring_, *idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    RingPtr<F> ring_;
    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace detail

template <class F>
Poly<F> parse_poly(RingPtr<F> ring, std::string_view text) {
    return detail::PolyParser<F>(std::move(ring), text).run();
}

} // namespace cav
