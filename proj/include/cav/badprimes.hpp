#pragma once

// Bad primes of a degree.  A prime p is bad when the scenario campaign in
// characteristic p finds a non-unit ideal, i.e. a CA-polynomial beyond the
// linear powers exists over an extension of F_p.
//
// Route: run the characteristic-0 campaign once, demanding a Nullstellensatz
// certificate 1 = sum g_i f_i per scenario.  A prime not dividing any
// cofactor denominator reduces the certificate mod p, so the ideal stays the
// unit ideal there: only denominator primes can be bad.  Each candidate is
// then confirmed or cleared by a full campaign mod p.  Candidate sets depend
// on the certificates found; the confirmed bad set does not.

#include "cav/filters.hpp"
#include "cav/groebner.hpp"
#include "cav/ideals.hpp"
#include "cav/scenario.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace cav {

// Observer hook for progress reporting; called after each scenario.
using ScenarioObserver = std::function<void(const Scenario&, UnitVerdict)>;

namespace detail {

inline std::vector<Scenario> campaign_scenarios(int d) {
    std::vector<Scenario> all = all_scenarios(d);
    std::vector<Scenario> out;
    for (auto& s : all)
        if (s.type() >= 1) out.push_back(std::move(s));  // type 0 has no ideal: linear powers only
    std::sort(out.begin(), out.end(), campaign_less);
    return out;
}

} // namespace detail

struct CandidateHarvest {
    std::vector<BigInt> primes;       // sorted, distinct denominator primes
    std::vector<BigInt> unfactored;   // residues the factorizer could not split
    bool complete = true;             // every scenario certified and every denominator factored
    std::uint64_t scenarios = 0;
    std::vector<Scenario> uncertified;  // scenarios with no certificate (budget or non-unit)
};

// Characteristic-0 campaign with certificates; collects denominator primes.
inline CandidateHarvest harvest_candidates(int d, const GroebnerBudget& budget = {},
                                           const ScenarioObserver& observer = nullptr,
                                           std::uint64_t factor_effort = std::uint64_t{1} << 27) {
    RationalField Q;
    CandidateHarvest out;
    std::vector<BigInt> primes, residues;
    for (const Scenario& s : detail::campaign_scenarios(d)) {
        ScenarioIdeal<RationalField> ideal = build_scenario_ideal(s, Q);
        CertificateOutcome cert = unit_certificate(ideal.gens, ideal.order, budget);
        ++out.scenarios;
        if (observer) observer(s, cert.verdict);
        if (cert.verdict != UnitVerdict::unit) {
            out.complete = false;
            out.uncertified.push_back(s);
            continue;
        }
        for (const auto& cof : cert.certificate->cofactors)
            for (const auto& t : cof.terms()) {
                BigInt dn = den(t.coeff);
                if (dn == 1) continue;
                FactorResult fr = factor(dn, factor_effort);
                for (const auto& [p, e] : fr.factors) primes.push_back(p);
                for (const auto& r : fr.residues) residues.push_back(r);
            }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    if (!residues.empty()) out.complete = false;
    out.primes = std::move(primes);
    out.unfactored = std::move(residues);
    return out;
}

struct ModPCampaign {
    UnitVerdict overall = UnitVerdict::indeterminate;  // not_unit means p is bad
    std::optional<Scenario> witness;                   // first non-unit scenario, campaign order
    std::uint64_t scenarios = 0;
};

// Full campaign in characteristic p.  Unfiltered by default so the verdict
// rests on the ideal computations alone; opt-in filters are sound reductions
// but shrink the evidence trail.
inline ModPCampaign campaign_mod_p(int d, const BigInt& p, const GroebnerBudget& budget = {},
                                   const FilterOptions* filters = nullptr,
                                   const ScenarioObserver& observer = nullptr) {
    if (p <= 1 || p >= (BigInt(1) << 63))
        throw std::invalid_argument("campaign_mod_p: prime out of machine range");
    PrimeField field(static_cast<std::uint64_t>(p));
    std::vector<Scenario> list;
    if (filters && filters->any()) {
        list = descendant_closure(restricted_scenarios(d, *filters));
        std::erase_if(list, [](const Scenario& s) { return s.type() == 0; });
    } else {
        list = detail::campaign_scenarios(d);
    }
    ModPCampaign out;
    bool any_indeterminate = false;
    for (const Scenario& s : list) {
        ScenarioIdeal<PrimeField> ideal = build_scenario_ideal(s, field);
        UnitVerdict v = unit_ideal_verdict(ideal.gens, ideal.order, budget);
        ++out.scenarios;
        if (observer) observer(s, v);
        if (v == UnitVerdict::not_unit) {
            out.overall = UnitVerdict::not_unit;
            out.witness = s;
            return out;
        }
        if (v == UnitVerdict::indeterminate) any_indeterminate = true;
    }
    out.overall = any_indeterminate ? UnitVerdict::indeterminate : UnitVerdict::unit;
    return out;
}

struct BadPrimeReport {
    int degree = 0;
    CandidateHarvest harvest;
    std::vector<BigInt> bad;        // candidates confirmed by a mod-p witness
    std::vector<BigInt> not_bad;    // candidates cleared by a full unit campaign
    std::vector<BigInt> undecided;  // confirmation ran out of budget
    std::vector<std::pair<BigInt, Scenario>> witnesses;

    // True when the bad set is provably exact: every denominator was factored,
    // every scenario certified, and every candidate decided.
    bool complete() const { return harvest.complete && undecided.empty(); }
};

inline BadPrimeReport bad_primes(int d, const GroebnerBudget& budget = {},
                                 const ScenarioObserver& observer = nullptr) {
    BadPrimeReport out;
    out.degree = d;
    out.harvest = harvest_candidates(d, budget, observer);
    for (const BigInt& p : out.harvest.primes) {
        ModPCampaign c = campaign_mod_p(d, p, budget, nullptr, observer);
        if (c.overall == UnitVerdict::not_unit) {
            out.bad.push_back(p);
            out.witnesses.emplace_back(p, *c.witness);
        } else if (c.overall == UnitVerdict::unit) {
            out.not_bad.push_back(p);
        } else {
            out.undecided.push_back(p);
        }
    }
    return out;
}

struct NonBadSearch {
    BigInt prime = 0;                 // smallest prime p with p not dividing d and p not bad
    std::vector<BigInt> bad_below;    // primes confirmed bad along the way
    std::vector<BigInt> skipped;      // divisors of d, outside the notion
    bool decided = true;              // false when a campaign hit its budget
};

// Walk primes upward; primes dividing d are outside the definition and are
// skipped, every other prime gets a full campaign until one comes out clean.
inline NonBadSearch smallest_nonbad_prime(int d, const GroebnerBudget& budget = {},
                                          const ScenarioObserver& observer = nullptr,
                                          std::uint64_t stop_above = 1'000'000) {
    NonBadSearch out;
    for (std::uint64_t p = 2; p <= stop_above; p = next_prime_u64(p)) {
        if (p <= static_cast<std::uint64_t>(d) && d % static_cast<int>(p) == 0) {
            out.skipped.push_back(p);
            continue;
        }
        ModPCampaign c = campaign_mod_p(d, BigInt(p), budget, nullptr, observer);
        if (c.overall == UnitVerdict::unit) {
            out.prime = p;
            return out;
        }
        if (c.overall == UnitVerdict::not_unit) {
            out.bad_below.push_back(p);
        } else {
            out.decided = false;
            return out;
        }
    }
    out.decided = false;
    return out;
}

} // namespace cav
