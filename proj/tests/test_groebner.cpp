#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "cav/groebner.hpp"
#include "cav/ideals.hpp"
#include "oracles.hpp"

using cav::GBStatus;
using cav::GroebnerBudget;
using cav::MonomialOrder;
using cav::PrimeField;
using cav::RationalField;
using cav::Scenario;
using cav::UnitVerdict;

namespace {

template <class F>
std::vector<std::string> rendered(const std::vector<cav::Poly<F>>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(cav::render(p));
    return out;
}

}  // namespace

TEST_CASE("unit ideal detection on one-variable examples", "[groebner]") {
    RationalField q;
    auto R = cav::make_ring(q, {"A"});
    auto g1 = cav::parse_poly(R, "2*A + 3");
    auto g2 = cav::parse_poly(R, "A + 3");

    auto res = cav::groebner_basis<RationalField>({g1, g2}, MonomialOrder::grevlex());
    REQUIRE(res.status == GBStatus::complete);
    REQUIRE(rendered(res.basis) == std::vector<std::string>{"1"});
    REQUIRE(cav::unit_ideal_verdict<RationalField>({g1, g2}, MonomialOrder::grevlex()) ==
            UnitVerdict::unit);

    auto cert = cav::unit_certificate({g1, g2}, MonomialOrder::grevlex());
    REQUIRE(cert.verdict == UnitVerdict::unit);
    REQUIRE(cert.certificate.has_value());
    const auto& cof = cert.certificate->cofactors;
    REQUIRE(cof.size() == 2);
    REQUIRE(cav::render(cof[0]) == "-1/3");
    REQUIRE(cav::render(cof[1]) == "2/3");
    auto sum = cof[0] * g1 + cof[1] * g2;
    REQUIRE(cav::render(sum) == "1");
}

TEST_CASE("proportional generators collapse to a principal ideal", "[groebner]") {
    PrimeField f3(3);
    auto R = cav::make_ring(f3, {"A"});
    auto g1 = cav::parse_poly(R, "2*A");
    auto g2 = cav::parse_poly(R, "A");
    auto res = cav::groebner_basis<PrimeField>({g1, g2}, MonomialOrder::grevlex());
    REQUIRE(res.status == GBStatus::complete);
    REQUIRE(rendered(res.basis) == std::vector<std::string>{"A"});
    REQUIRE(cav::unit_ideal_verdict<PrimeField>({g1, g2}, MonomialOrder::grevlex()) ==
            UnitVerdict::not_unit);
}

TEST_CASE("edge cases of the verdict function", "[groebner]") {
    RationalField q;
    auto R = cav::make_ring(q, {"x", "y"});
    auto one = cav::Poly<RationalField>::one(R);
    auto zero = cav::Poly<RationalField>::zero(R);

    REQUIRE(cav::unit_ideal_verdict<RationalField>({}, MonomialOrder::grevlex()) ==
            UnitVerdict::not_unit);
    REQUIRE(cav::unit_ideal_verdict<RationalField>({zero, zero}, MonomialOrder::grevlex()) ==
            UnitVerdict::not_unit);
    REQUIRE(cav::unit_ideal_verdict<RationalField>({one}, MonomialOrder::grevlex()) ==
            UnitVerdict::unit);
    auto res = cav::groebner_basis<RationalField>({cav::parse_poly(R, "5")},
                                                  MonomialOrder::grevlex());
    REQUIRE(rendered(res.basis) == std::vector<std::string>{"1"});
}

TEST_CASE("computed bases pass the Buchberger criterion recheck", "[groebner]") {
    RationalField q;
    for (int d = 4; d <= 5; ++d)
        for (const auto& s : cav::all_scenarios(d)) {
            if (s.type() < 1) continue;
            auto ideal = cav::build_scenario_ideal(s, q);
            auto res = cav::groebner_basis(ideal.gens, ideal.order);
            REQUIRE(res.status == GBStatus::complete);
            REQUIRE(cav::verify_groebner_basis(ideal.gens, res.basis, ideal.order));
        }

    // Tampering with a basis must be caught.
    auto R = cav::make_ring(q, {"x", "y"});
    std::vector<cav::Poly<RationalField>> gens = {cav::parse_poly(R, "x^2 - y"),
                                                  cav::parse_poly(R, "x*y - 1")};
    auto res = cav::groebner_basis(gens, MonomialOrder::grevlex());
    REQUIRE(res.status == GBStatus::complete);
    REQUIRE(cav::verify_groebner_basis(gens, res.basis, MonomialOrder::grevlex()));
    auto broken = res.basis;
    broken.pop_back();
    REQUIRE_FALSE(cav::verify_groebner_basis(gens, broken, MonomialOrder::grevlex()));
    std::vector<cav::Poly<RationalField>> unrelated = {cav::parse_poly(R, "x + 1")};
    REQUIRE_FALSE(cav::verify_groebner_basis(gens, unrelated, MonomialOrder::grevlex()));
}

TEST_CASE("random prime field ideals verify and answer membership", "[groebner]") {
    PrimeField fp(101);
    auto R = cav::make_ring(fp, {"x", "y", "z"});
    std::mt19937_64 rng(902);
    for (int rep = 0; rep < 12; ++rep) {
        std::vector<cav::Poly<PrimeField>> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(oracle::random_poly(R, rng, 4, 3));
        auto res = cav::groebner_basis(gens, MonomialOrder::grevlex(),
                                       GroebnerBudget{20000, std::nullopt});
        if (res.status != GBStatus::complete) continue;
        REQUIRE(cav::verify_groebner_basis(gens, res.basis, MonomialOrder::grevlex()));
        // Any combination of the generators reduces to zero.
        auto combo = gens[0] * oracle::random_poly(R, rng, 3, 2) +
                     gens[1] * oracle::random_poly(R, rng, 3, 2) +
                     gens[2] * oracle::random_poly(R, rng, 3, 2);
        REQUIRE(cav::normal_form(combo, res.basis, MonomialOrder::grevlex()).is_zero());
    }
}

TEST_CASE("reduced basis invariants", "[groebner]") {
    PrimeField fp(13);
    auto R = cav::make_ring(fp, {"x", "y"});
    std::vector<cav::Poly<PrimeField>> gens = {cav::parse_poly(R, "x^3 - 2*x*y"),
                                               cav::parse_poly(R, "x^2*y - 2*y^2 + x")};
    auto res = cav::groebner_basis(gens, MonomialOrder::grevlex());
    REQUIRE(res.status == GBStatus::complete);
    auto ord = MonomialOrder::grevlex();
    for (std::size_t i = 0; i < res.basis.size(); ++i) {
        REQUIRE(fp.is_one(res.basis[i].leading_term(ord).coeff));
        for (std::size_t j = 0; j < res.basis.size(); ++j) {
            if (i == j) continue;
            const auto& lmj = res.basis[j].leading_term(ord).mono;
            for (const auto& t : res.basis[i].terms())
                REQUIRE_FALSE(lmj.divides(t.mono));
        }
    }
}

TEST_CASE("same input always yields the same basis", "[groebner]") {
    RationalField q;
    Scenario s({0, 1, 2, 1});
    auto ideal = cav::build_scenario_ideal(s, q);
    auto first = cav::groebner_basis(ideal.gens, ideal.order);
    for (int rep = 0; rep < 3; ++rep) {
        auto again = cav::groebner_basis(ideal.gens, ideal.order);
        REQUIRE(rendered(again.basis) == rendered(first.basis));
    }
    PrimeField fp(10007);
    auto ip = cav::build_scenario_ideal(s, fp);
    auto bp = cav::groebner_basis(ip.gens, ip.order);
    for (int rep = 0; rep < 3; ++rep)
        REQUIRE(rendered(cav::groebner_basis(ip.gens, ip.order).basis) == rendered(bp.basis));
}

TEST_CASE("pair budget exhaustion reports indeterminate", "[groebner]") {
    RationalField q;
    auto R = cav::make_ring(q, {"x", "y"});
    std::vector<cav::Poly<RationalField>> gens = {cav::parse_poly(R, "x^2 + y"),
                                                  cav::parse_poly(R, "x*y + x")};
    GroebnerBudget tiny{0, std::nullopt};
    REQUIRE(cav::unit_ideal_verdict(gens, MonomialOrder::grevlex(), tiny) ==
            UnitVerdict::indeterminate);
    auto res = cav::groebner_basis(gens, MonomialOrder::grevlex(), tiny);
    REQUIRE(res.status == GBStatus::pair_budget_exceeded);
    // A roomy budget resolves the same input.
    REQUIRE(cav::unit_ideal_verdict(gens, MonomialOrder::grevlex()) == UnitVerdict::not_unit);
}

TEST_CASE("certificates from scenario ideals recheck independently", "[groebner]") {
    RationalField q;
    for (int d = 4; d <= 5; ++d)
        for (const auto& s : cav::all_scenarios(d)) {
            if (s.type() < 1) continue;
            auto ideal = cav::build_scenario_ideal(s, q);
            auto out = cav::unit_certificate(ideal.gens, ideal.order);
            REQUIRE(out.verdict == UnitVerdict::unit);  // no witnesses in characteristic zero
            REQUIRE(out.certificate.has_value());
            const auto& cof = out.certificate->cofactors;
            REQUIRE(cof.size() == ideal.gens.size());
            cav::Poly<RationalField> sum(ideal.ring);
            for (std::size_t i = 0; i < cof.size(); ++i) sum = sum + cof[i] * ideal.gens[i];
            REQUIRE(cav::render(sum) == "1");
        }
}

TEST_CASE("normal form against a basis behaves like a remainder", "[groebner]") {
    PrimeField fp(7);
    auto R = cav::make_ring(fp, {"x", "y"});
    std::vector<cav::Poly<PrimeField>> gens = {cav::parse_poly(R, "x^2 - y"),
                                               cav::parse_poly(R, "y^2 - x")};
    auto res = cav::groebner_basis(gens, MonomialOrder::grevlex());
    REQUIRE(res.status == GBStatus::complete);
    for (const auto& g : gens)
        REQUIRE(cav::normal_form(g, res.basis, MonomialOrder::grevlex()).is_zero());
    auto one = cav::Poly<PrimeField>::one(R);
    REQUIRE(cav::render(cav::normal_form(one, res.basis, MonomialOrder::grevlex())) == "1");
    // Remainder is invariant under adding ideal elements.
    auto p = cav::parse_poly(R, "x^3*y + 2*x + 1");
    auto shifted = p + gens[0] * cav::parse_poly(R, "x*y - 3") + gens[1] * cav::parse_poly(R, "y");
    auto r1 = cav::normal_form(p, res.basis, MonomialOrder::grevlex());
    auto r2 = cav::normal_form(shifted, res.basis, MonomialOrder::grevlex());
    REQUIRE(cav::render(r1) == cav::render(r2));
}
