// Monomials, orders, sparse polynomial arithmetic, Hasse derivatives,
// substitution, exact division, resultants.

#include "cav/poly.hpp"
#include "cav/resultant.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using cav::BigInt;
using cav::BigRat;
using cav::Monomial;
using cav::MonomialOrder;
using cav::Poly;
using cav::PrimeField;
using cav::RationalField;

namespace {

Monomial random_mono(std::mt19937_64& rng, std::size_t arity, std::uint32_t max_exp) {
    std::uniform_int_distribution<std::uint32_t> exp(0, max_exp);
    Monomial m(arity);
    for (std::size_t i = 0; i < arity; ++i) m.set(i, exp(rng));
    return m;
}

} // namespace

TEST_CASE("monomial order axioms hold for both kinds", "[mpoly]") {
    std::mt19937_64 rng(7);
    std::vector<MonomialOrder> orders{MonomialOrder::grevlex(), MonomialOrder::block_elim(2),
                                      MonomialOrder::block_elim(5)};
    const std::size_t arity = 6;
    const Monomial one(arity);
    for (const auto& ord : orders) {
        for (int k = 0; k < 2000; ++k) {
            Monomial a = random_mono(rng, arity, 6);
            Monomial b = random_mono(rng, arity, 6);
            Monomial w = random_mono(rng, arity, 6);
            int c = ord.cmp(a, b);
            REQUIRE(c == -ord.cmp(b, a));                    // antisymmetry
            REQUIRE((c == 0) == (a == b));                   // totality
            REQUIRE(ord.cmp(a * w, b * w) == c);             // multiplicative
            REQUIRE(ord.cmp(one, a) <= 0);                   // 1 is minimal
            Monomial x = random_mono(rng, arity, 4);
            Monomial y = random_mono(rng, arity, 4);
            Monomial z = random_mono(rng, arity, 4);
            if (ord.cmp(x, y) <= 0 && ord.cmp(y, z) <= 0)    // transitivity
                REQUIRE(ord.cmp(x, z) <= 0);
        }
    }
}

TEST_CASE("block order eliminates the trailing window first", "[mpoly]") {
    // split 2: variables 2,3 dominate regardless of total degree.
    auto ord = MonomialOrder::block_elim(2);
    Monomial a(4), b(4);
    a.set(0, 5);
    a.set(1, 5);            // v0^5 v1^5
    b.set(2, 1);            // v2
    REQUIRE(ord.greater(b, a));
    REQUIRE(MonomialOrder::grevlex().greater(a, b));
}

TEST_CASE("monomial divisibility, lcm, coprimality", "[mpoly]") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 500; ++k) {
        Monomial a = random_mono(rng, 5, 5);
        Monomial b = random_mono(rng, 5, 5);
        Monomial l = Monomial::lcm(a, b);
        REQUIRE(a.divides(l));
        REQUIRE(b.divides(l));
        REQUIRE(l.divided_by(a) == [&] {  // lcm/a has b's surplus only
            Monomial r(5);
            for (std::size_t i = 0; i < 5; ++i) r.set(i, b[i] > a[i] ? b[i] - a[i] : 0);
            return r;
        }());
        bool cop = true;
        for (std::size_t i = 0; i < 5; ++i) cop = cop && (a[i] == 0 || b[i] == 0);
        REQUIRE(Monomial::coprime(a, b) == cop);
    }
}

TEMPLATE_TEST_CASE("polynomial products agree with a dense reference", "[mpoly]",
                   cav::RationalField, cav::PrimeField) {
    auto field = [] {
        if constexpr (std::is_same_v<TestType, PrimeField>) return PrimeField(101);
        else return RationalField{};
    }();
    auto ring = cav::make_ring(field, {"u", "v", "w"});
    std::mt19937_64 rng(13);
    using DP = oracle::DensePoly<TestType>;
    for (int k = 0; k < 60; ++k) {
        auto a = oracle::random_poly(ring, rng, 6, 4);
        auto b = oracle::random_poly(ring, rng, 6, 4);
        auto c = oracle::random_poly(ring, rng, 6, 4);
        REQUIRE(DP::from(a * b) == DP::mul(field, DP::from(a), DP::from(b)));
        REQUIRE(DP::from(a + b) == DP::add(field, DP::from(a), DP::from(b)));
        REQUIRE((a + b) * c == a * c + b * c);
        REQUIRE(a * b == b * a);
        REQUIRE(a - a == Poly<TestType>::zero(ring));
    }
}

TEMPLATE_TEST_CASE("render and parse round trip", "[mpoly]", cav::RationalField, cav::PrimeField) {
    auto field = [] {
        if constexpr (std::is_same_v<TestType, PrimeField>) return PrimeField(97);
        else return RationalField{};
    }();
    auto ring = cav::make_ring(field, {"P1", "A1", "x"});
    std::mt19937_64 rng(17);
    for (int k = 0; k < 80; ++k) {
        auto f = oracle::random_poly(ring, rng, 8, 5);
        REQUIRE(cav::parse_poly(ring, cav::render(f)) == f);
    }
    REQUIRE(cav::parse_poly(ring, "0") == Poly<TestType>::zero(ring));
}

TEST_CASE("parsing accepts rational coefficients and powers", "[mpoly]") {
    auto ring = cav::make_ring(RationalField{}, {"x"});
    auto f = cav::parse_poly(ring, "1/3*x^2 - x + 5/2");
    auto x = Poly<RationalField>::variable(ring, 0);
    auto want = x * x * Poly<RationalField>::constant(ring, BigRat(1, 3)) - x +
                Poly<RationalField>::constant(ring, BigRat(5, 2));
    REQUIRE(f == want);
}

TEMPLATE_TEST_CASE("Hasse derivatives compose with a binomial factor", "[mpoly]",
                   cav::RationalField, cav::PrimeField) {
    // H^i(H^j f) = C(i+j, i) * H^(i+j) f, also in small characteristic.
    auto field = [] {
        if constexpr (std::is_same_v<TestType, PrimeField>) return PrimeField(5);
        else return RationalField{};
    }();
    auto ring = cav::make_ring(field, {"x", "y"});
    std::mt19937_64 rng(19);
    for (int k = 0; k < 40; ++k) {
        auto f = oracle::random_poly(ring, rng, 6, 7);
        for (std::size_t var = 0; var < 2; ++var)
            for (std::uint32_t i = 0; i <= 3; ++i)
                for (std::uint32_t j = 0; j <= 3; ++j) {
                    auto lhs = cav::hasse_derivative(cav::hasse_derivative(f, var, j), var, i);
                    auto rhs = cav::hasse_derivative(f, var, i + j)
                                   .scaled(field.from_bigint(
                                       cav::binomial(BigInt(i) + j, BigInt(i))));
                    CAPTURE(k, var, i, j);
                    REQUIRE(lhs == rhs);
                }
    }
}

TEST_CASE("univariate Hasse derivative matches the binomial definition", "[mpoly]") {
    PrimeField f7(7);
    auto ring = cav::make_ring(f7, {"x"});
    std::mt19937_64 rng(23);
    for (int k = 0; k < 50; ++k) {
        auto f = oracle::random_poly(ring, rng, 5, 9);
        std::vector<std::uint64_t> dense(10, 0);
        for (const auto& t : f.terms()) dense[t.mono[0]] = f7.add(dense[t.mono[0]], t.coeff);
        while (dense.size() > 1 && dense.back() == 0) dense.pop_back();
        for (int j = 0; j <= 4; ++j) {
            auto want = oracle::hasse_dense(f7, dense, j);
            auto got = cav::hasse_derivative(f, 0, static_cast<std::uint32_t>(j));
            std::vector<std::uint64_t> got_dense(want.size(), 0);
            for (const auto& t : got.terms()) {
                REQUIRE(t.mono[0] < want.size());
                got_dense[t.mono[0]] = t.coeff;
            }
            while (want.size() > 0 && want.back() == 0 && got_dense.back() == 0) {
                want.pop_back();
                got_dense.pop_back();
            }
            REQUIRE(got_dense == want);
        }
    }
}

TEST_CASE("evaluation is a ring homomorphism", "[mpoly]") {
    PrimeField f101(101);
    auto ring = cav::make_ring(f101, {"u", "v"});
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::uint64_t> pt(0, 100);
    for (int k = 0; k < 60; ++k) {
        auto a = oracle::random_poly(ring, rng, 5, 4);
        auto b = oracle::random_poly(ring, rng, 5, 4);
        std::vector<std::uint64_t> point{pt(rng), pt(rng)};
        REQUIRE((a * b).eval(point) == f101.mul(a.eval(point), b.eval(point)));
        REQUIRE((a + b).eval(point) == f101.add(a.eval(point), b.eval(point)));
    }
}

TEST_CASE("specialization substitutes and collapses the ring", "[mpoly]") {
    RationalField q;
    auto ring = cav::make_ring(q, {"P1", "A1", "x"});
    auto f = cav::parse_poly(ring, "x^2*P1 + A1*x + P1*A1");
    auto small = cav::make_ring(q, std::vector<std::string>{"P1", "x"});
    std::map<std::string, Poly<RationalField>> sub{
        {"A1", cav::parse_poly(small, "P1 - 1")}};
    auto got = cav::specialize(f, sub);
    REQUIRE(got == cav::parse_poly(small, "x^2*P1 + (P1-1)*x + P1*(P1-1)"));

    // substituting everything gives a constant
    std::map<std::string, Poly<RationalField>> all;
    auto empty_ring = cav::make_ring(q, std::vector<std::string>{});
    all.emplace("P1", Poly<RationalField>::constant(empty_ring, BigRat(2)));
    all.emplace("A1", Poly<RationalField>::constant(empty_ring, BigRat(3)));
    all.emplace("x", Poly<RationalField>::constant(empty_ring, BigRat(1)));
    // x^2*P1 + A1*x + P1*A1 at (P1,A1,x) = (2,3,1) is 2 + 3 + 6.
    auto val = cav::specialize(f, all);
    REQUIRE(val == Poly<RationalField>::constant(empty_ring, BigRat(2 + 3 + 6)));
}

TEMPLATE_TEST_CASE("exact division inverts multiplication", "[mpoly]", cav::RationalField,
                   cav::PrimeField) {
    auto field = [] {
        if constexpr (std::is_same_v<TestType, PrimeField>) return PrimeField(10'000'019);
        else return RationalField{};
    }();
    auto ring = cav::make_ring(field, {"u", "v", "w"});
    std::mt19937_64 rng(31);
    for (int k = 0; k < 60; ++k) {
        auto f = oracle::random_poly(ring, rng, 5, 3);
        auto g = oracle::random_poly(ring, rng, 5, 3);
        if (g.is_zero()) continue;
        REQUIRE(cav::exact_div(f * g, g) == f);
    }
    auto u = Poly<TestType>::variable(ring, 0);
    REQUIRE_THROWS_AS(cav::exact_div(u + Poly<TestType>::one(ring), u * u),
                      std::domain_error);
}

TEST_CASE("resultant of split polynomials is the product of values", "[mpoly]") {
    PrimeField f(10007);
    auto ring = cav::make_ring(f, {"x"});
    auto x = Poly<PrimeField>::variable(ring, 0);
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<std::uint64_t> pt(0, 10006);
    for (int k = 0; k < 25; ++k) {
        std::vector<std::uint64_t> roots{pt(rng), pt(rng), pt(rng)};
        auto fp = Poly<PrimeField>::one(ring);
        for (auto r : roots) fp = fp * (x - Poly<PrimeField>::constant(ring, r));
        auto g = oracle::random_poly(ring, rng, 4, 4);
        if (g.is_zero() || g.degree_in(0) == 0) continue;
        auto res = cav::resultant(fp, g, 0);
        std::uint64_t want = 1;
        for (auto r : roots) want = f.mul(want, g.eval({r}));
        REQUIRE(res == Poly<PrimeField>::constant(ring, want));
    }
}

TEST_CASE("resultant with parameters", "[mpoly]") {
    RationalField q;
    auto ring = cav::make_ring(q, {"u", "v", "x"});
    auto u = Poly<RationalField>::variable(ring, 0);
    auto v = Poly<RationalField>::variable(ring, 1);
    auto x = Poly<RationalField>::variable(ring, 2);
    REQUIRE(cav::resultant(x - u, x - v, 2) == u - v);
    // swap sign: deg f * deg g = 1
    REQUIRE(cav::resultant(x - v, x - u, 2) == v - u);
    // common factor forces a zero resultant
    auto fg = (x - u) * (x - v);
    REQUIRE(cav::resultant(fg, x - u, 2).is_zero());
}

TEST_CASE("integer determinant agrees with Laplace expansion", "[mpoly]") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k < 30; ++k) {
            std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(n),
                                               std::vector<BigInt>(static_cast<std::size_t>(n)));
            for (auto& row : m)
                for (auto& e : row) e = entry(rng);
            CAPTURE(n, k);
            REQUIRE(cav::det_integer_matrix(m) == oracle::laplace_det(m));
        }
    // a singular matrix
    std::vector<std::vector<BigInt>> sing{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    REQUIRE(cav::det_integer_matrix(sing) == 0);
}

TEST_CASE("leading terms follow the active order", "[mpoly]") {
    RationalField q;
    auto ring = cav::make_ring(q, {"a", "b"});
    auto f = cav::parse_poly(ring, "a^3*b + b^2 + a");
    auto grev = f.leading_term(MonomialOrder::grevlex());
    REQUIRE(grev.mono[0] == 3);
    REQUIRE(grev.mono[1] == 1);  // total degree 4 beats 2
    auto blk = f.leading_term(MonomialOrder::block_elim(1));
    REQUIRE(blk.mono[0] == 0);   // the trailing b-window dominates
    REQUIRE(blk.mono[1] == 2);
}
