#pragma once

// Scenarios for degree d: restricted growth strings (s_1, ..., s_{d-1}) with
// s_1 = 0 and s_j <= max(s_1..s_{j-1}) + 1.  Entry j records which root label
// the j-th Hasse derivative shares with the polynomial; the type is the
// largest label used.  Enumeration streams in lexicographic order without
// materializing the full list.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace cav {

class Scenario {
public:
    // Smallest well-formed scenario (degree 2); handy as a container default.
    Scenario() : s_{0} {}

    explicit Scenario(std::vector<std::uint8_t> entries) : s_(std::move(entries)) {
        if (s_.empty()) throw std::invalid_argument("Scenario: empty entry list");
        if (s_[0] != 0) throw std::invalid_argument("Scenario: first entry must be 0");
        std::uint8_t hi = 0;
        for (std::size_t i = 1; i < s_.size(); ++i) {
            if (s_[i] > hi + 1)
                throw std::invalid_argument("Scenario: entry " + std::to_string(i + 1) +
                                            " breaks the growth bound");
            if (s_[i] > hi) hi = s_[i];
        }
    }

    static Scenario from_ints(const std::vector<int>& entries) {
        std::vector<std::uint8_t> v;
        v.reserve(entries.size());
        for (int e : entries) {
            if (e < 0 || e > 0xff) throw std::invalid_argument("Scenario: entry out of range");
            v.push_back(static_cast<std::uint8_t>(e));
        }
        return Scenario(std::move(v));
    }

    int degree() const { return static_cast<int>(s_.size()) + 1; }
    std::size_t length() const { return s_.size(); }
    const std::vector<std::uint8_t>& entries() const { return s_; }

    // 1-based: entry(j) is s_j for 1 <= j <= d-1.
    int entry(int j) const {
        if (j < 1 || static_cast<std::size_t>(j) > s_.size())
            throw std::out_of_range("Scenario::entry");
        return s_[static_cast<std::size_t>(j) - 1];
    }

    int type() const {
        std::uint8_t hi = 0;
        for (auto e : s_)
            if (e > hi) hi = e;
        return hi;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < s_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(static_cast<int>(s_[i]));
        }
        return out;
    }

    static Scenario parse(std::string_view text) {
        std::vector<int> entries;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string_view tok = text.substr(pos, comma == std::string_view::npos ? text.size() - pos
                                                                                    : comma - pos);
            std::size_t a = tok.find_first_not_of(" \t");
            std::size_t b = tok.find_last_not_of(" \t");
            if (a == std::string_view::npos)
                throw std::invalid_argument("Scenario: empty entry in '" + std::string(text) + "'");
            tok = tok.substr(a, b - a + 1);
            int v = 0;
            for (char c : tok) {
                if (c < '0' || c > '9')
                    throw std::invalid_argument("Scenario: bad entry '" + std::string(tok) + "'");
                v = v * 10 + (c - '0');
                if (v > 0xff) throw std::invalid_argument("Scenario: entry out of range");
            }
            entries.push_back(v);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return from_ints(entries);
    }

    friend bool operator==(const Scenario& a, const Scenario& b) { return a.s_ == b.s_; }
    // Lexicographic (shorter strings first).
    friend bool operator<(const Scenario& a, const Scenario& b) {
        if (a.s_.size() != b.s_.size()) return a.s_.size() < b.s_.size();
        return a.s_ < b.s_;
    }

    std::size_t hash() const {
        std::size_t h = 14695981039346656037ull;
        for (auto e : s_) h = (h ^ e) * 1099511628211ull;
        return h;
    }

private:
    std::vector<std::uint8_t> s_;
};

// Campaign processing order: by type, then lexicographic.
inline bool campaign_less(const Scenario& a, const Scenario& b) {
    int ta = a.type(), tb = b.type();
    if (ta != tb) return ta < tb;
    return a < b;
}

// Streams all scenarios of degree d in lexicographic order.
class ScenarioStream {
public:
    explicit ScenarioStream(int degree) {
        if (degree < 2) throw std::invalid_argument("ScenarioStream: degree must be at least 2");
        if (degree - 1 > 64) throw std::invalid_argument("ScenarioStream: degree too large");
        cur_.assign(static_cast<std::size_t>(degree - 1), 0);
    }

    std::optional<Scenario> next() {
        if (done_) return std::nullopt;
        Scenario out{std::vector<std::uint8_t>(cur_)};
        advance();
        return out;
    }

private:
    void advance() {
        // Rightmost position that can still grow; everything after resets to 0.
        for (std::size_t i = cur_.size(); i-- > 1;) {
            std::uint8_t hi = 0;
            for (std::size_t k = 0; k < i; ++k)
                if (cur_[k] > hi) hi = cur_[k];
            if (cur_[i] <= hi) {
                ++cur_[i];
                std::fill(cur_.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur_.end(), 0);
                return;
            }
        }
        done_ = true;
    }

    std::vector<std::uint8_t> cur_;
    bool done_ = false;
};

template <class Fn>
void for_each_scenario(int degree, Fn&& fn) {
    ScenarioStream stream(degree);
    while (auto s = stream.next()) fn(*s);
}

inline std::vector<Scenario> all_scenarios(int degree) {
    std::vector<Scenario> out;
    for_each_scenario(degree, [&](const Scenario& s) { out.push_back(s); });
    return out;
}

// Scenario counts for degree d grouped by type (index = type, 0..d-2).
inline std::vector<std::uint64_t> count_scenarios_by_type(int degree) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(degree - 1), 0);
    for_each_scenario(degree, [&](const Scenario& s) { ++counts[static_cast<std::size_t>(s.type())]; });
    return counts;
}

// ind(s) = { j : 2 <= j <= d-2 and s_{d-j} = s_{d-1} }, ascending.
inline std::vector<int> ind_set(const Scenario& s) {
    const int d = s.degree();
    std::vector<int> out;
    for (int j = 2; j <= d - 2; ++j)
        if (s.entry(d - j) == s.entry(d - 1)) out.push_back(j);
    return out;
}

// Descendant for label j (1 <= j <= type): label j collapses to 0, larger
// labels shift down by one.  The result is again a valid scenario.
inline Scenario descendant(const Scenario& s, int j) {
    if (j < 1 || j > s.type()) throw std::out_of_range("descendant: label out of range");
    std::vector<std::uint8_t> out;
    out.reserve(s.length());
    for (auto e : s.entries()) {
        if (e == j)
            out.push_back(0);
        else if (e > j)
            out.push_back(static_cast<std::uint8_t>(e - 1));
        else
            out.push_back(e);
    }
    return Scenario(std::move(out));
}

inline std::vector<Scenario> descendants(const Scenario& s) {
    std::vector<Scenario> out;
    const int t = s.type();
    out.reserve(static_cast<std::size_t>(t));
    for (int j = 1; j <= t; ++j) out.push_back(descendant(s, j));
    return out;
}

namespace detail {
struct ScenarioHash {
    std::size_t operator()(const Scenario& s) const { return s.hash(); }
};
} // namespace detail

// Closure under taking descendants; output sorted by type then lex.
inline std::vector<Scenario> descendant_closure(const std::vector<Scenario>& seed) {
    std::unordered_set<Scenario, detail::ScenarioHash> seen;
    std::vector<Scenario> work(seed);
    for (const auto& s : seed)
        if (s.degree() != seed.front().degree())
            throw std::invalid_argument("descendant_closure: mixed degrees");
    while (!work.empty()) {
        Scenario s = work.back();
        work.pop_back();
        if (!seen.insert(s).second) continue;
        for (auto& child : descendants(s)) work.push_back(std::move(child));
    }
    std::vector<Scenario> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), campaign_less);
    return out;
}

inline bool is_descendant_closed(const std::vector<Scenario>& list) {
    std::unordered_set<Scenario, detail::ScenarioHash> set(list.begin(), list.end());
    for (const auto& s : list)
        for (const auto& child : descendants(s))
            if (!set.count(child)) return false;
    return true;
}

// One scenario per line, comma-separated entries; '#' starts a comment.
inline std::vector<Scenario> read_scenarios(std::istream& in) {
    std::vector<Scenario> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        try {
            out.push_back(Scenario::parse(std::string_view(line).substr(a, b - a + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("scenario file line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
        if (out.size() > 1 && out.back().degree() != out.front().degree())
            throw std::invalid_argument("scenario file line " + std::to_string(lineno) +
                                        ": degree differs from earlier entries");
    }
    return out;
}

inline void write_scenarios(std::ostream& os, const std::vector<Scenario>& list) {
    for (const auto& s : list) os << s.to_string() << '\n';
}

} // namespace cav

template <>
struct std::hash<cav::Scenario> {
    std::size_t operator()(const cav::Scenario& s) const { return s.hash(); }
};
