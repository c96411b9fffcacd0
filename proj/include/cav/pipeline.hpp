#pragma once

// Campaign driver: verify a whole degree (or an explicit scenario list) by
// deciding every scenario ideal, in type-ascending order, with a worker pool
// and an append-only JSONL checkpoint for kill/resume.
//
// Soundness of the sped-up ideals leans on descendants: a scenario's verdict
// may divide by P1 and drop variables only because every descendant (lower
// type) has already come out trivial.  Hence the hard type barrier, the
// descendant-closure requirement on explicit lists, and the early stop once
// a type finishes with a non-trivial or undecided scenario in it.

#include "cav/badprimes.hpp"
#include "cav/filters.hpp"
#include "cav/groebner.hpp"
#include "cav/ideals.hpp"
#include "cav/scenario.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace cav {

enum class ScenStatus { trivial, nontrivial, indeterminate };

inline const char* to_string(ScenStatus s) {
    switch (s) {
        case ScenStatus::trivial: return "trivial";
        case ScenStatus::nontrivial: return "nontrivial";
        default: return "indeterminate";
    }
}

inline std::optional<ScenStatus> scen_status_from(const std::string& s) {
    if (s == "trivial") return ScenStatus::trivial;
    if (s == "nontrivial") return ScenStatus::nontrivial;
    if (s == "indeterminate") return ScenStatus::indeterminate;
    return std::nullopt;
}

struct ScenarioOutcome {
    Scenario scenario;
    ScenStatus status = ScenStatus::indeterminate;
    double ms = 0.0;
    std::string note;
};

enum class CampaignVerdict { no_ca, ca_exists, indeterminate };

inline const char* to_string(CampaignVerdict v) {
    switch (v) {
        case CampaignVerdict::no_ca: return "no_ca";
        case CampaignVerdict::ca_exists: return "ca_exists";
        default: return "indeterminate";
    }
}

struct CampaignConfig {
    int degree = 0;
    BigInt characteristic = 0;  // 0 for Q, else a prime < 2^63
    FilterOptions filters;      // how the list was produced (checkpoint identity)
    int max_type = -1;          // cap on scenario type, -1 for all
    GroebnerBudget budget;
    int jobs = 1;
    std::string checkpoint_path;  // empty disables checkpointing
    bool speedups = true;
};

struct CampaignResult {
    CampaignVerdict verdict = CampaignVerdict::indeterminate;
    std::optional<Scenario> witness;  // first non-trivial scenario in campaign order
    std::vector<ScenarioOutcome> outcomes;
    std::uint64_t processed = 0;  // decided in this run
    std::uint64_t resumed = 0;    // taken from the checkpoint
    std::uint64_t total = 0;      // scenarios in scope
    double seconds = 0.0;
    long vm_hwm_kb = -1;
    std::string scope_note;
};

// Peak resident set from /proc; -1 when the platform does not expose it.
inline long vm_hwm_kb() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream ss(line.substr(6));
            long kb = -1;
            ss >> kb;
            return kb;
        }
    }
    return -1;
}

namespace detail {

struct Checkpoint {
    std::map<std::string, ScenarioOutcome> done;
    std::ofstream out;
    std::mutex mu;
    bool enabled = false;

    void append(const ScenarioOutcome& o) {
        if (!enabled) return;
        nlohmann::json j;
        j["scenario"] = o.scenario.to_string();
        j["status"] = to_string(o.status);
        j["ms"] = o.ms;
        if (!o.note.empty()) j["note"] = o.note;
        std::lock_guard<std::mutex> lock(mu);
        out << j.dump() << '\n';
        out.flush();
    }
};

inline nlohmann::json checkpoint_header(const CampaignConfig& cfg, std::size_t count) {
    nlohmann::json h;
    h["kind"] = "header";
    h["degree"] = cfg.degree;
    h["characteristic"] = cfg.characteristic.str();
    h["filters"] = cfg.filters.to_string();
    h["speedups"] = cfg.speedups;
    h["max_type"] = cfg.max_type;
    h["count"] = count;
    return h;
}

// Load an existing checkpoint, insisting it describes this exact campaign.
inline void open_checkpoint(Checkpoint& ck, const CampaignConfig& cfg, std::size_t count) {
    if (cfg.checkpoint_path.empty()) return;
    ck.enabled = true;
    std::ifstream in(cfg.checkpoint_path);
    if (in.good()) {
        std::string line;
        std::size_t lineno = 0;
        bool have_header = false;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error("checkpoint " + cfg.checkpoint_path + " line " +
                                         std::to_string(lineno) + ": " + e.what());
            }
            if (!have_header) {
                nlohmann::json expect = checkpoint_header(cfg, count);
                if (j != expect)
                    throw std::runtime_error("checkpoint " + cfg.checkpoint_path + " line " +
                                             std::to_string(lineno) +
                                             ": header describes a different campaign; got " +
                                             j.dump() + ", want " + expect.dump());
                have_header = true;
                continue;
            }
            try {
                ScenarioOutcome o;
                o.scenario = Scenario::parse(j.at("scenario").get<std::string>());
                auto st = scen_status_from(j.at("status").get<std::string>());
                if (!st) throw std::runtime_error("unknown status");
                o.status = *st;
                o.ms = j.value("ms", 0.0);
                o.note = j.value("note", std::string{});
                ck.done[o.scenario.to_string()] = std::move(o);
            } catch (const std::exception& e) {
                throw std::runtime_error("checkpoint " + cfg.checkpoint_path + " line " +
                                         std::to_string(lineno) + ": " + e.what());
            }
        }
        if (!have_header && lineno > 0)
            throw std::runtime_error("checkpoint " + cfg.checkpoint_path + ": no header record");
        ck.out.open(cfg.checkpoint_path, std::ios::app);
        if (!have_header) ck.out << checkpoint_header(cfg, count).dump() << '\n';
    } else {
        ck.out.open(cfg.checkpoint_path, std::ios::app);
        if (!ck.out.good())
            throw std::runtime_error("checkpoint " + cfg.checkpoint_path + ": cannot open for writing");
        ck.out << checkpoint_header(cfg, count).dump() << '\n';
        ck.out.flush();
    }
}

template <class F>
ScenarioOutcome decide_scenario(const Scenario& s, const F& field, const CampaignConfig& cfg) {
    ScenarioOutcome o;
    o.scenario = s;
    auto t0 = std::chrono::steady_clock::now();
    if (s.type() == 0) {
        o.status = ScenStatus::trivial;
        o.note = "type 0 forces a linear power; nothing to solve";
    } else {
        ScenarioIdeal<F> ideal = build_scenario_ideal(s, field, cfg.speedups);
        UnitVerdict v = unit_ideal_verdict(ideal.gens, ideal.order, cfg.budget);
        switch (v) {
            case UnitVerdict::unit: o.status = ScenStatus::trivial; break;
            case UnitVerdict::not_unit: o.status = ScenStatus::nontrivial; break;
            default:
                o.status = ScenStatus::indeterminate;
                o.note = "budget exhausted";
                break;
        }
    }
    o.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

template <class F>
CampaignResult run_campaign(const CampaignConfig& cfg, std::vector<Scenario> list, const F& field) {
    auto t0 = std::chrono::steady_clock::now();
    std::sort(list.begin(), list.end(), campaign_less);

    for (const Scenario& s : list)
        if (s.degree() != cfg.degree)
            throw std::invalid_argument("campaign: scenario degree mismatch: " + s.to_string());
    if (cfg.max_type >= 0)
        std::erase_if(list, [&](const Scenario& s) { return s.type() > cfg.max_type; });
    if (cfg.speedups && !is_descendant_closed(list))
        throw std::invalid_argument(
            "campaign: scenario list is not descendant-closed; sped-up ideals would be unsound "
            "(close the list or disable speedups)");

    CampaignResult res;
    res.total = list.size();
    {
        std::ostringstream scope;
        scope << "degree " << cfg.degree << ", char " << cfg.characteristic.str();
        if (cfg.max_type >= 0) scope << ", types 0.." << cfg.max_type;
        if (cfg.filters.any()) scope << ", filters " << cfg.filters.to_string();
        res.scope_note = scope.str();
    }

    Checkpoint ck;
    open_checkpoint(ck, cfg, list.size());

    std::vector<ScenarioOutcome> slots(list.size());
    std::vector<char> filled(list.size(), 0);

    // Pre-fill from the checkpoint.
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto it = ck.done.find(list[i].to_string());
        if (it != ck.done.end()) {
            slots[i] = it->second;
            filled[i] = 1;
            ++res.resumed;
        }
    }

    // Contiguous blocks of equal type (list is campaign-sorted).
    struct Block {
        std::size_t lo, hi;
        int type;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < list.size();) {
        std::size_t j = i;
        while (j < list.size() && list[j].type() == list[i].type()) ++j;
        blocks.push_back({i, j, list[i].type()});
        i = j;
    }

    bool stopped = false;
    int jobs = cfg.jobs > 0 ? cfg.jobs : 1;
    for (const Block& b : blocks) {
        if (stopped) break;
        std::atomic<std::size_t> next{b.lo};
        std::atomic<std::uint64_t> newly{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= b.hi) return;
                if (filled[i]) continue;
                ScenarioOutcome o = decide_scenario(list[i], field, cfg);
                ck.append(o);
                slots[i] = std::move(o);
                filled[i] = 1;
                newly.fetch_add(1);
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        res.processed += newly.load();
        // The whole type has been decided; anything non-trivial in it stops
        // the climb to higher types.
        for (std::size_t i = b.lo; i < b.hi; ++i) {
            if (slots[i].status == ScenStatus::nontrivial && !res.witness) {
                res.witness = slots[i].scenario;
                stopped = true;
            }
            if (slots[i].status == ScenStatus::indeterminate) stopped = true;
        }
    }

    for (std::size_t i = 0; i < list.size(); ++i)
        if (filled[i]) res.outcomes.push_back(std::move(slots[i]));

    bool any_indeterminate = false;
    for (const auto& o : res.outcomes) any_indeterminate |= o.status == ScenStatus::indeterminate;
    if (res.witness)
        res.verdict = CampaignVerdict::ca_exists;
    else if (any_indeterminate || res.outcomes.size() != res.total)
        res.verdict = CampaignVerdict::indeterminate;
    else
        res.verdict = CampaignVerdict::no_ca;

    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.vm_hwm_kb = vm_hwm_kb();
    return res;
}

} // namespace detail

// Run over an explicit scenario list (all of one degree).
inline CampaignResult verify_scenarios(const CampaignConfig& cfg, std::vector<Scenario> list) {
    if (cfg.degree < 3 || cfg.degree > 25)
        throw std::invalid_argument("campaign: degree must lie in [3, 25]");
    if (cfg.characteristic == 0) {
        RationalField f;
        return detail::run_campaign(cfg, std::move(list), f);
    }
    if (cfg.characteristic < 0 || cfg.characteristic >= (BigInt(1) << 63))
        throw std::invalid_argument("campaign: characteristic out of machine range");
    PrimeField f(static_cast<std::uint64_t>(cfg.characteristic));
    return detail::run_campaign(cfg, std::move(list), f);
}

// Build the scenario list from the configured filters and verify the degree.
inline CampaignResult verify_degree(const CampaignConfig& cfg) {
    std::vector<Scenario> list;
    if (cfg.filters.any())
        list = descendant_closure(restricted_scenarios(cfg.degree, cfg.filters));
    else
        list = all_scenarios(cfg.degree);
    return verify_scenarios(cfg, std::move(list));
}

// The degree-12 campaign: delta and divisibility restrictions, descendant
// closure, types up to 3 by default.  10000019 is the default modulus; if a
// non-trivial scenario ever shows up, rerunning with a different prime is
// the first thing to try, since a single prime can simply be bad.
struct Degree12Options {
    BigInt prime = 10'000'019;
    int max_type = 3;
    int jobs = 1;
    GroebnerBudget budget;
    std::string checkpoint_path;
    bool hightype = false;
};

inline CampaignResult degree12_campaign(const Degree12Options& opt = {}) {
    CampaignConfig cfg;
    cfg.degree = 12;
    cfg.characteristic = opt.prime;
    cfg.filters.delta = true;
    cfg.filters.divisibility = true;
    cfg.filters.hightype = opt.hightype;
    cfg.max_type = opt.max_type;
    cfg.budget = opt.budget;
    cfg.jobs = opt.jobs;
    cfg.checkpoint_path = opt.checkpoint_path;
    cfg.speedups = true;
    return verify_degree(cfg);
}

} // namespace cav
