#pragma once

// Scenario filters: necessary conditions a scenario must satisfy to possibly
// carry a characteristic-zero CA-polynomial.  Filtering is only sound as a
// campaign restriction together with descendant closure; the pipeline layer
// enforces that.
//
//  * delta: for degrees d = p+1 with p prime.  Keeps s only when s_{d-1} != 0
//    and the Delta-matrix determinant of ind(s) vanishes mod p.
//  * divisibility: for each factorization d = n*q with q a prime power,
//    the entries of s at positions q, 2q, ..., (n-1)q must not all coincide;
//    when n = p^r + 1 the stronger two-index rule {q, (n-1)q} applies.  A
//    one-index rule (n = 2) excludes every scenario.
//  * hightype: excludes s as an exact scenario of a counterexample, which is
//    weaker than excluding all matches; off by default and not used by the
//    verification pipeline.

#include "cav/arith.hpp"
#include "cav/resultant.hpp"
#include "cav/scenario.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace cav {

// (m+1) x (m+1) Delta matrix for ascending indices J = {j_1 < ... < j_m}.
inline std::vector<std::vector<BigInt>> delta_matrix(const std::vector<int>& J) {
    for (std::size_t i = 0; i < J.size(); ++i) {
        if (J[i] < 2) throw std::invalid_argument("delta_matrix: indices must be >= 2");
        if (i && J[i] <= J[i - 1]) throw std::invalid_argument("delta_matrix: indices must ascend");
    }
    const std::size_t m = J.size();
    std::vector<std::vector<BigInt>> a(m + 1, std::vector<BigInt>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        a[i][0] = -1;
        for (std::size_t k = 0; k < m; ++k)
            a[i][k + 1] = binomial(J[i] - 2, J[k] - 2) * J[i];
    }
    a[m][0] = -1;
    for (std::size_t k = 0; k < m; ++k) a[m][k + 1] = (J[k] % 2 == 0) ? 1 : -1;
    return a;
}

inline BigInt delta_det(const std::vector<int>& J) { return det_integer_matrix(delta_matrix(J)); }

// Memoizes determinants by index set; scenario filtering hits few distinct
// sets.  Not thread-safe; list construction is single-threaded.
class DeltaCache {
public:
    const BigInt& det(const std::vector<int>& J) {
        auto it = cache_.find(J);
        if (it == cache_.end()) it = cache_.emplace(J, delta_det(J)).first;
        return it->second;
    }

private:
    std::map<std::vector<int>, BigInt> cache_;
};

// Keep condition of the Delta filter for degree d = p+1.  The determinant of
// an empty or singleton index set is never divisible by p, so those drop out
// without a special case.
inline bool delta_keeps(const Scenario& s, DeltaCache& cache) {
    const int d = s.degree();
    const BigInt p = d - 1;
    if (!is_prime(p)) throw std::invalid_argument("delta filter: degree - 1 must be prime");
    if (s.entry(d - 1) == 0) return false;
    return cache.det(ind_set(s)) % p == 0;
}

// All index pairs (j1, j2) in [2, d-2] passing the determinant condition.
inline std::vector<std::pair<int, int>> delta_pairs(int d) {
    const BigInt p = d - 1;
    if (!is_prime(p)) throw std::invalid_argument("delta_pairs: degree - 1 must be prime");
    std::vector<std::pair<int, int>> out;
    for (int j1 = 2; j1 <= d - 2; ++j1)
        for (int j2 = j1 + 1; j2 <= d - 2; ++j2)
            if (delta_det({j1, j2}) % p == 0) out.emplace_back(j1, j2);
    return out;
}

// A rule fires on s when the entries at all its indices coincide; firing
// excludes s.  A single-index rule therefore excludes everything, which is
// the degree 2*p^k case.
using DivisibilityRule = std::vector<int>;

inline std::vector<DivisibilityRule> divisibility_rules(int d) {
    if (d < 2) throw std::invalid_argument("divisibility_rules: degree must be at least 2");
    std::set<DivisibilityRule> rules;
    for (std::uint32_t p : detail::small_primes()) {
        if (static_cast<int>(p) > d) break;
        for (BigInt q = 1; q < d; q *= p) {
            if (d % q != 0) break;
            const int n = (BigInt(d) / q).convert_to<int>();
            if (n < 2) continue;
            const int qi = q.convert_to<int>();
            // n = p^r + 1 gives the strengthened two-index form.
            BigInt m = n - 1;
            bool strengthened = m == 1;
            while (m > 1 && m % p == 0) m /= p;
            if (m == 1) strengthened = true;
            DivisibilityRule rule;
            if (strengthened) {
                rule = {qi, (n - 1) * qi};
                if (rule[0] == rule[1]) rule.pop_back();
            } else {
                for (int i = 1; i < n; ++i) rule.push_back(i * qi);
            }
            rules.insert(rule);
        }
    }
    // A superset of another rule fires less often and is redundant.
    std::vector<DivisibilityRule> out;
    for (const auto& r : rules) {
        bool redundant = false;
        for (const auto& other : rules) {
            if (other == r || other.size() >= r.size()) continue;
            if (std::includes(r.begin(), r.end(), other.begin(), other.end())) {
                redundant = true;
                break;
            }
        }
        if (!redundant) out.push_back(r);
    }
    return out;
}

inline bool rule_fires(const Scenario& s, const DivisibilityRule& rule) {
    for (std::size_t i = 1; i < rule.size(); ++i)
        if (s.entry(rule[i]) != s.entry(rule[0])) return false;
    return true;
}

inline bool divisibility_keeps(const Scenario& s, const std::vector<DivisibilityRule>& rules) {
    for (const auto& r : rules)
        if (rule_fires(s, r)) return false;
    return true;
}

// Exact-scenario exclusion (not match-level, hence unsuitable for the
// verification pipeline): true when no counterexample has s as its scenario.
inline bool hightype_excludes(const Scenario& s) {
    const int d = s.degree();
    const int t = s.type();
    if (t <= 1 || t == d - 2) return true;
    if (t > d - 3) return false;
    for (int j = 1; j <= d - 2 - t; ++j)
        if (s.entry(j) != 0) return false;
    bool zero_or_repeat = false;
    for (int j = d - 1 - t; j <= d - 1; ++j) {
        if (s.entry(j) == 0) zero_or_repeat = true;
        if (j > d - 1 - t && s.entry(j) == s.entry(j - 1)) zero_or_repeat = true;
    }
    return zero_or_repeat;
}

struct FilterOptions {
    bool delta = false;
    bool divisibility = false;
    bool hightype = false;

    bool any() const { return delta || divisibility || hightype; }

    // Comma-separated names: "delta,divisibility[,hightype]"; "none" and
    // "all" are accepted as shorthands, and empty means none.
    static FilterOptions parse(const std::string& text) {
        FilterOptions opts;
        std::size_t pos = 0;
        while (pos <= text.size() && !text.empty()) {
            std::size_t comma = text.find(',', pos);
            std::string name = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
            if (name == "delta") opts.delta = true;
            else if (name == "divisibility") opts.divisibility = true;
            else if (name == "hightype") opts.hightype = true;
            else if (name == "all") opts.delta = opts.divisibility = opts.hightype = true;
            else if (!name.empty() && name != "none")
                throw std::invalid_argument("unknown filter '" + name + "'");
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return opts;
    }

    std::string to_string() const {
        std::string out;
        auto add = [&](const char* n) {
            if (!out.empty()) out += ',';
            out += n;
        };
        if (delta) add("delta");
        if (divisibility) add("divisibility");
        if (hightype) add("hightype");
        return out.empty() ? "none" : out;
    }
};

// Enumerates degree-d scenarios surviving the selected filters, in campaign
// order (type ascending, then lex).
inline std::vector<Scenario> restricted_scenarios(int d, const FilterOptions& opts) {
    DeltaCache cache;
    std::vector<DivisibilityRule> rules;
    if (opts.divisibility) rules = divisibility_rules(d);
    if (opts.delta && !is_prime(BigInt(d - 1)))
        throw std::invalid_argument("delta filter: degree - 1 must be prime");
    std::vector<Scenario> out;
    for_each_scenario(d, [&](const Scenario& s) {
        if (opts.delta && !delta_keeps(s, cache)) return;
        if (opts.divisibility && !divisibility_keeps(s, rules)) return;
        if (opts.hightype && hightype_excludes(s)) return;
        out.push_back(s);
    });
    std::sort(out.begin(), out.end(), campaign_less);
    return out;
}

inline std::vector<std::uint64_t> counts_by_type(const std::vector<Scenario>& list, int degree) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(degree - 1), 0);
    for (const auto& s : list) ++counts[static_cast<std::size_t>(s.type())];
    return counts;
}

} // namespace cav
