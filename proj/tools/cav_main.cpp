// Command-line front end for the Casas-Alvero verification toolkit.
//
// Exit codes: 0 verified / clean answer, 1 a CA-polynomial (or bad prime
// witness) exists, 2 the run was inconclusive (budget, unsupported input),
// 64 bad usage.

#include "cav/cav.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitWitness = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

std::string version_string() {
    std::ostringstream os;
    cav::GroebnerBudget def;
    os << "cav 1.0.0\n"
       << "order: graded reverse lexicographic, tail block eliminated first\n"
       << "pair strategy: sugar, ties by smallest lcm degree, Gebauer-Moller pruning\n"
       << "default budget: " << def.max_pairs << " S-pairs, no time limit";
    return os.str();
}

cav::BigInt parse_char(const std::string& text) {
    cav::BigInt p(text);
    if (p < 0) throw CLI::ValidationError("--char must be 0 or a prime");
    if (p != 0 && !cav::is_prime(p)) throw CLI::ValidationError("--char must be 0 or a prime");
    return p;
}

std::vector<cav::Scenario> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw CLI::ValidationError("cannot open scenario file " + path);
    return cav::read_scenarios(in);
}

void print_scenarios(const std::vector<cav::Scenario>& list, const std::string& format) {
    if (format == "jsonl") {
        for (const auto& s : list) {
            nlohmann::json j;
            j["scenario"] = s.to_string();
            j["type"] = s.type();
            std::cout << j.dump() << '\n';
        }
    } else {
        cav::write_scenarios(std::cout, list);
    }
}

struct VerifyArgs {
    int degree = 0;
    std::string characteristic = "0";
    std::string filters;
    std::string scenario_file;
    std::string checkpoint;
    bool close = false;
    bool no_speedups = false;
    bool degree12 = false;
    int jobs = 1;
    int max_type = -1;
    std::uint64_t budget_pairs = cav::GroebnerBudget{}.max_pairs;
    double budget_seconds = 0.0;
    std::string format = "text";
};

int run_verify(const VerifyArgs& a) {
    cav::CampaignConfig cfg;
    if (a.degree12) {
        cfg.degree = 12;
        cfg.characteristic = a.characteristic == "0" ? cav::BigInt(10'000'019)
                                                     : parse_char(a.characteristic);
        cfg.filters.delta = true;
        cfg.filters.divisibility = true;
        cfg.max_type = a.max_type < 0 ? 3 : a.max_type;
    } else {
        cfg.degree = a.degree;
        cfg.characteristic = parse_char(a.characteristic);
        if (!a.filters.empty()) cfg.filters = cav::FilterOptions::parse(a.filters);
        cfg.max_type = a.max_type;
    }
    cfg.jobs = a.jobs;
    cfg.checkpoint_path = a.checkpoint;
    cfg.speedups = !a.no_speedups;
    cfg.budget.max_pairs = a.budget_pairs;
    if (a.budget_seconds > 0) cfg.budget.max_seconds = a.budget_seconds;

    cav::CampaignResult res;
    if (!a.scenario_file.empty()) {
        if (cfg.filters.any())
            throw CLI::ValidationError("--filters cannot be combined with --scenario-file");
        auto list = load_scenarios(a.scenario_file);
        if (list.empty()) throw CLI::ValidationError("scenario file is empty");
        cfg.degree = list.front().degree();
        if (a.close) list = cav::descendant_closure(list);
        res = cav::verify_scenarios(cfg, std::move(list));
    } else {
        if (cfg.degree <= 0) throw CLI::ValidationError("--degree is required");
        res = cav::verify_degree(cfg);
    }

    if (a.format == "jsonl") {
        nlohmann::json j;
        j["scope"] = res.scope_note;
        j["verdict"] = cav::to_string(res.verdict);
        j["total"] = res.total;
        j["processed"] = res.processed;
        j["resumed"] = res.resumed;
        j["seconds"] = res.seconds;
        j["vm_hwm_kb"] = res.vm_hwm_kb;
        if (res.witness) j["witness"] = res.witness->to_string();
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "scope: " << res.scope_note << '\n'
                  << "scenarios: total " << res.total << ", resumed " << res.resumed
                  << ", processed " << res.processed << '\n';
        std::map<int, std::pair<std::uint64_t, double>> by_type;
        for (const auto& o : res.outcomes) {
            auto& row = by_type[o.scenario.type()];
            ++row.first;
            row.second += static_cast<double>(o.ms) / 1000.0;
        }
        for (const auto& [t, row] : by_type)
            std::cout << "  type " << t << ": " << row.first << " scenarios, " << row.second
                      << " s\n";
        std::cout << "verdict: " << cav::to_string(res.verdict) << '\n';
        if (res.witness) std::cout << "witness: " << res.witness->to_string() << '\n';
        std::cout << "time: " << res.seconds << " s, peak memory: " << res.vm_hwm_kb << " kB\n";
    }
    if (res.verdict == cav::CampaignVerdict::ca_exists) {
        if (a.degree12 || cfg.characteristic != 0)
            std::cerr << "note: a non-trivial scenario mod p can mean the prime itself is bad; "
                         "rerun with a different --char before drawing conclusions\n";
        return kExitWitness;
    }
    return res.verdict == cav::CampaignVerdict::no_ca ? kExitVerified : kExitInconclusive;
}

// "r:m,r:m,..." -> product of (x - r)^m; roots may be integers or fractions.
template <class F>
cav::Poly<F> poly_from_root_list(const cav::RingPtr<F>& ring, const std::string& text) {
    cav::Poly<F> f = cav::Poly<F>::one(ring);
    cav::Poly<F> x = cav::Poly<F>::variable(ring, 0);
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--roots items must look like root:multiplicity");
        cav::BigRat root;
        int mult = 0;
        try {
            root = cav::BigRat(item.substr(0, colon));
            mult = std::stoi(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--roots: cannot parse '" + item + "'");
        }
        if (mult <= 0) throw CLI::ValidationError("--roots multiplicities must be positive");
        auto factor = x - cav::Poly<F>::constant(ring, ring->field.from_rat(root));
        for (int k = 0; k < mult; ++k) f = f * factor;
    }
    return f;
}

int run_check_poly(const std::string& char_text, const std::string& poly_text,
                   const std::string& roots_text, const std::string& match_text,
                   const std::string& format) {
    cav::BigInt p = parse_char(char_text);
    auto answer = [&](auto field) -> int {
        using F = decltype(field);
        auto ring = cav::make_ring(field, std::vector<std::string>{"x"});
        cav::Poly<F> f = roots_text.empty() ? cav::parse_poly(ring, poly_text)
                                            : poly_from_root_list(ring, roots_text);
        auto c = cav::dense_from_poly(f);
        cav::uni_trim(field, c);
        if (c.size() < 2) throw CLI::ValidationError("polynomial must have degree >= 1");
        int d = static_cast<int>(c.size()) - 1;
        bool ca = cav::is_ca_resultant(f);
        bool linear = cav::is_linear_power(f);

        nlohmann::json j;
        j["degree"] = d;
        j["ca"] = ca;
        j["linear_power"] = linear;
        std::string unsupported;
        try {
            cav::RootProfile<F> prof = cav::root_profile(f);
            j["splits"] = true;
            auto root_text = [&](std::size_t r) {
                std::ostringstream os;
                os << prof.roots.roots[r];
                return os.str();
            };
            nlohmann::json shared = nlohmann::json::array();
            for (std::size_t k = 0; k < prof.shares.size(); ++k) {
                nlohmann::json set = nlohmann::json::array();
                for (std::size_t r = 0; r < prof.roots.roots.size(); ++r)
                    if (prof.shares[k] >> r & 1) set.push_back(root_text(r));
                shared.push_back(std::move(set));
            }
            j["shared_roots"] = std::move(shared);
            if (auto s = cav::scen_of(prof)) j["scenario"] = s->to_string();
            if (auto t = cav::type_of_poly(prof)) j["type"] = *t;
            if (!match_text.empty())
                j["matches"] = cav::matches(prof, cav::Scenario::parse(match_text));
        } catch (const cav::Unsupported& e) {
            j["splits"] = false;
            unsupported = e.what();
        }
        if (format == "jsonl") {
            if (!unsupported.empty()) j["unsupported"] = unsupported;
            std::cout << j.dump() << '\n';
        } else {
            std::cout << "degree: " << d << '\n'
                      << "ca: " << (ca ? "yes" : "no") << '\n'
                      << "linear power: " << (linear ? "yes" : "no") << '\n';
            if (unsupported.empty()) {
                const auto& shared = j["shared_roots"];
                for (std::size_t k = 0; k < shared.size(); ++k) {
                    std::cout << "R_" << (k + 1) << ": {";
                    for (std::size_t r = 0; r < shared[k].size(); ++r)
                        std::cout << (r ? ", " : "") << shared[k][r].get<std::string>();
                    std::cout << "}\n";
                }
                if (j.contains("scenario"))
                    std::cout << "scenario (lex-min): " << j["scenario"].get<std::string>() << '\n';
                if (j.contains("type")) std::cout << "type: " << j["type"].get<int>() << '\n';
                if (j.contains("matches"))
                    std::cout << "matches " << match_text << ": "
                              << (j["matches"].get<bool>() ? "yes" : "no") << '\n';
            } else {
                std::cout << "root-level questions: unsupported (" << unsupported << ")\n";
            }
        }
        if (!unsupported.empty() && (!match_text.empty())) return kExitInconclusive;
        return kExitVerified;
    };
    if (p == 0) return answer(cav::RationalField{});
    if (p >= (cav::BigInt(1) << 63)) throw CLI::ValidationError("--char too large");
    return answer(cav::PrimeField(static_cast<std::uint64_t>(p)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for the Casas-Alvero conjecture"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    // scenarios
    auto* sc = app.add_subcommand("scenarios", "enumerate scenarios of a degree");
    int sc_degree = 0;
    bool sc_counts = false;
    std::string sc_format = "text";
    sc->add_option("--degree", sc_degree, "polynomial degree")->required();
    sc->add_flag("--count-by-type", sc_counts, "print per-type counts instead of the list");
    sc->add_option("--format", sc_format)->check(CLI::IsMember({"text", "jsonl"}));

    // filter
    auto* fl = app.add_subcommand("filter", "apply scenario filters");
    int fl_degree = 0;
    std::string fl_filters = "delta,divisibility";
    bool fl_close = false;
    std::string fl_format = "text";
    fl->add_option("--degree", fl_degree)->required();
    fl->add_option("--filters", fl_filters, "comma list of delta,divisibility,hightype");
    fl->add_flag("--close", fl_close, "add descendant closure");
    fl->add_option("--format", fl_format)->check(CLI::IsMember({"text", "jsonl"}));

    // verify
    auto* vf = app.add_subcommand("verify", "run a scenario campaign");
    VerifyArgs va;
    vf->add_option("--degree", va.degree);
    vf->add_option("--char", va.characteristic, "field characteristic, 0 for the rationals");
    vf->add_option("--filters", va.filters, "comma list of delta,divisibility,hightype");
    vf->add_option("--scenario-file", va.scenario_file, "explicit scenario list");
    vf->add_flag("--close", va.close, "descendant-close an explicit list");
    vf->add_option("--checkpoint", va.checkpoint, "JSONL checkpoint path (resume if present)");
    vf->add_flag("--no-speedups", va.no_speedups, "build raw scenario ideals");
    vf->add_flag("--degree12", va.degree12,
                 "preset: degree 12, char 10000019, delta+divisibility, types <= 3");
    vf->add_option("--jobs", va.jobs)->check(CLI::PositiveNumber);
    vf->add_option("--max-type", va.max_type, "process scenarios of type <= this");
    vf->add_option("--budget-pairs", va.budget_pairs, "S-pair budget per ideal");
    vf->add_option("--budget-seconds", va.budget_seconds, "time budget per ideal");
    vf->add_option("--format", va.format)->check(CLI::IsMember({"text", "jsonl"}));

    // bad-primes
    auto* bp = app.add_subcommand("bad-primes", "certificate denominators, then mod-p confirmation");
    int bp_degree = 0;
    std::uint64_t bp_pairs = cav::GroebnerBudget{}.max_pairs;
    std::string bp_format = "text";
    bool bp_verbose = false;
    bp->add_option("--degree", bp_degree)->required();
    bp->add_option("--budget-pairs", bp_pairs);
    bp->add_option("--format", bp_format)->check(CLI::IsMember({"text", "jsonl"}));
    bp->add_flag("-v,--verbose", bp_verbose, "per-scenario progress on stderr");

    // smallest-nonbad
    auto* sn = app.add_subcommand("smallest-nonbad",
                                  "smallest prime, not dividing the degree, with a clean campaign");
    int sn_degree = 0;
    std::uint64_t sn_pairs = cav::GroebnerBudget{}.max_pairs;
    bool sn_verbose = false;
    sn->add_option("--degree", sn_degree)->required();
    sn->add_option("--budget-pairs", sn_pairs);
    sn->add_flag("-v,--verbose", sn_verbose);

    // check-poly
    auto* cp = app.add_subcommand("check-poly", "CA questions about one explicit polynomial");
    std::string cp_char = "0", cp_poly, cp_roots, cp_match, cp_format = "text";
    auto* cp_poly_opt = cp->add_option("poly", cp_poly, "polynomial in x, e.g. \"x^4 - 2*x^3\"");
    auto* cp_roots_opt =
        cp->add_option("--roots", cp_roots, "root:multiplicity list, e.g. 0:1,1:4,8:1,18:1");
    cp_poly_opt->excludes(cp_roots_opt);
    cp->add_option("--char", cp_char);
    cp->add_option("--match", cp_match, "scenario to test against, e.g. 0,1,1");
    cp->add_option("--format", cp_format)->check(CLI::IsMember({"text", "jsonl"}));

    // delta
    auto* dl = app.add_subcommand("delta", "index pairs surviving the delta determinant test");
    int dl_degree = 0;
    dl->add_option("--degree", dl_degree, "degree d with d-1 prime")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sc->parsed()) {
            if (sc_counts) {
                auto counts = cav::count_scenarios_by_type(sc_degree);
                std::uint64_t total = 0;
                for (std::size_t t = 0; t < counts.size(); ++t) {
                    std::cout << "type " << t << ": " << counts[t] << '\n';
                    total += counts[t];
                }
                std::cout << "total: " << total << '\n';
            } else {
                print_scenarios(cav::all_scenarios(sc_degree), sc_format);
            }
            return kExitVerified;
        }
        if (fl->parsed()) {
            auto opts = cav::FilterOptions::parse(fl_filters);
            auto list = cav::restricted_scenarios(fl_degree, opts);
            if (fl_close) list = cav::descendant_closure(list);
            print_scenarios(list, fl_format);
            std::cerr << "kept " << list.size() << " scenarios\n";
            return kExitVerified;
        }
        if (vf->parsed()) return run_verify(va);
        if (bp->parsed()) {
            cav::GroebnerBudget budget;
            budget.max_pairs = bp_pairs;
            cav::ScenarioObserver obs;
            if (bp_verbose)
                obs = [](const cav::Scenario& s, cav::UnitVerdict v) {
                    std::cerr << s.to_string() << ": " << cav::to_string(v) << '\n';
                };
            auto rep = cav::bad_primes(bp_degree, budget, obs);
            auto join = [](const std::vector<cav::BigInt>& v) {
                std::ostringstream os;
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].str();
                return os.str();
            };
            if (bp_format == "jsonl") {
                nlohmann::json j;
                j["degree"] = rep.degree;
                j["candidates"] = join(rep.harvest.primes);
                j["bad"] = join(rep.bad);
                j["not_bad"] = join(rep.not_bad);
                j["undecided"] = join(rep.undecided);
                j["unfactored"] = join(rep.harvest.unfactored);
                j["complete"] = rep.complete();
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "degree " << rep.degree << '\n'
                          << "candidates: " << join(rep.harvest.primes) << '\n'
                          << "bad: " << join(rep.bad) << '\n'
                          << "not bad: " << join(rep.not_bad) << '\n';
                if (!rep.undecided.empty()) std::cout << "undecided: " << join(rep.undecided) << '\n';
                if (!rep.harvest.unfactored.empty())
                    std::cout << "unfactored residues: " << join(rep.harvest.unfactored) << '\n';
                std::cout << "complete: " << (rep.complete() ? "yes" : "no") << '\n';
            }
            return rep.complete() ? kExitVerified : kExitInconclusive;
        }
        if (sn->parsed()) {
            cav::GroebnerBudget budget;
            budget.max_pairs = sn_pairs;
            cav::ScenarioObserver obs;
            if (sn_verbose)
                obs = [](const cav::Scenario& s, cav::UnitVerdict v) {
                    std::cerr << s.to_string() << ": " << cav::to_string(v) << '\n';
                };
            auto res = cav::smallest_nonbad_prime(sn_degree, budget, obs);
            if (!res.decided) {
                std::cout << "undecided (budget exhausted while testing a prime)\n";
                return kExitInconclusive;
            }
            std::cout << "degree " << sn_degree << ": smallest non-bad prime = " << res.prime.str()
                      << '\n';
            std::ostringstream bad;
            for (std::size_t i = 0; i < res.bad_below.size(); ++i)
                bad << (i ? " " : "") << res.bad_below[i].str();
            std::cout << "bad primes below it: " << bad.str() << '\n';
            return kExitVerified;
        }
        if (cp->parsed()) {
            if (cp_poly.empty() == cp_roots.empty())
                throw CLI::ValidationError("check-poly needs a polynomial or --roots (not both)");
            return run_check_poly(cp_char, cp_poly, cp_roots, cp_match, cp_format);
        }
        if (dl->parsed()) {
            auto pairs = cav::delta_pairs(dl_degree);
            std::cout << "degree " << dl_degree << " (p = " << dl_degree - 1 << "): ";
            for (std::size_t i = 0; i < pairs.size(); ++i)
                std::cout << (i ? " " : "") << "(" << pairs[i].first << "," << pairs[i].second << ")";
            std::cout << '\n';
            return kExitVerified;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const cav::Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return kExitInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
