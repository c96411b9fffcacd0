#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "cav/badprimes.hpp"
#include "cav/groebner.hpp"
#include "cav/ideals.hpp"

using cav::BigInt;
using cav::UnitVerdict;

TEST_CASE("degree three has exactly one bad prime", "[badprimes]") {
    auto report = cav::bad_primes(3);
    REQUIRE(report.complete());
    REQUIRE(report.bad == std::vector<BigInt>{2});
    REQUIRE(report.not_bad.empty());
    REQUIRE(report.undecided.empty());
    REQUIRE(report.harvest.unfactored.empty());
}

TEST_CASE("degree four bad primes and their witnesses", "[badprimes]") {
    auto report = cav::bad_primes(4);
    REQUIRE(report.complete());
    REQUIRE(report.bad == std::vector<BigInt>{3, 5, 7});
    REQUIRE(report.witnesses.size() == 3);
    for (const auto& [p, w] : report.witnesses) {
        // Re-confirm each witness directly: its ideal mod p has a solution.
        cav::PrimeField f(static_cast<std::uint64_t>(p));
        auto ideal = cav::build_scenario_ideal(w, f);
        REQUIRE(cav::unit_ideal_verdict(ideal.gens, ideal.order) == UnitVerdict::not_unit);
    }
}

TEST_CASE("degree five bad primes", "[badprimes]") {
    auto report = cav::bad_primes(5);
    REQUIRE(report.complete());
    REQUIRE(report.bad == std::vector<BigInt>{2, 3, 7, 11, 131, 193, 599, 3541, 8009});
    // Candidates that survive the confirmation campaigns are not bad.
    for (const auto& p : report.not_bad) {
        auto c = cav::campaign_mod_p(5, p);
        REQUIRE(c.overall == UnitVerdict::unit);
    }
}

TEST_CASE("mod p campaigns stop at the first witness in campaign order", "[badprimes]") {
    auto c = cav::campaign_mod_p(4, BigInt(3));
    REQUIRE(c.overall == UnitVerdict::not_unit);
    REQUIRE(c.witness.has_value());
    REQUIRE(c.witness->to_string() == "0,0,1");
    REQUIRE(c.scenarios == 1);  // first scenario of type 1 already decides it

    auto clean = cav::campaign_mod_p(4, BigInt(11));
    REQUIRE(clean.overall == UnitVerdict::unit);
    REQUIRE_FALSE(clean.witness.has_value());
    REQUIRE(clean.scenarios == 4);  // every type >= 1 scenario ran
}

TEST_CASE("mod p campaigns validate the modulus", "[badprimes]") {
    REQUIRE_THROWS_AS(cav::campaign_mod_p(4, BigInt(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(cav::campaign_mod_p(4, BigInt(1) << 63), std::invalid_argument);
    REQUIRE_THROWS_AS(cav::campaign_mod_p(4, BigInt(4)), std::invalid_argument);  // composite
}

TEST_CASE("smallest prime with no witness, small degrees", "[badprimes]") {
    auto s4 = cav::smallest_nonbad_prime(4);
    REQUIRE(s4.decided);
    REQUIRE(s4.prime == BigInt(11));
    REQUIRE(s4.skipped == std::vector<BigInt>{2});
    REQUIRE(s4.bad_below == std::vector<BigInt>{3, 5, 7});

    auto s5 = cav::smallest_nonbad_prime(5);
    REQUIRE(s5.decided);
    REQUIRE(s5.prime == BigInt(13));
    REQUIRE(s5.skipped == std::vector<BigInt>{5});
    REQUIRE(s5.bad_below == std::vector<BigInt>{2, 3, 7, 11});

    auto s6 = cav::smallest_nonbad_prime(6);
    REQUIRE(s6.decided);
    REQUIRE(s6.prime == BigInt(17));
    REQUIRE(s6.skipped == std::vector<BigInt>{2, 3});
    REQUIRE(s6.bad_below == std::vector<BigInt>{5, 7, 11, 13});
}

TEST_CASE("the search walks exactly the confirmed bad primes", "[badprimes]") {
    // Consistency between the two entry points: for degree 4 the bad set
    // below the found prime, minus divisors of the degree, must agree.
    auto report = cav::bad_primes(4);
    auto search = cav::smallest_nonbad_prime(4);
    std::vector<BigInt> below;
    for (const auto& p : report.bad)
        if (p < search.prime && BigInt(4) % p != 0) below.push_back(p);
    REQUIRE(below == search.bad_below);
}

TEST_CASE("starved budgets surface as incompleteness, never as answers", "[badprimes]") {
    cav::GroebnerBudget tiny{0, std::nullopt};
    auto harvest = cav::harvest_candidates(5, tiny);
    REQUIRE_FALSE(harvest.complete);
    REQUIRE_FALSE(harvest.uncertified.empty());

    auto report = cav::bad_primes(5, tiny);
    REQUIRE_FALSE(report.complete());

    auto search = cav::smallest_nonbad_prime(5, tiny);
    REQUIRE_FALSE(search.decided);
}
