#include "egzlab/cycles.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace egz {

MultiplicityPattern::MultiplicityPattern(std::vector<int> parts_in) : parts(std::move(parts_in)) {
    if (parts.empty())
        throw std::invalid_argument("MultiplicityPattern: empty");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1)
            throw std::invalid_argument("MultiplicityPattern: parts must be >= 1");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("MultiplicityPattern: parts must be non-increasing");
    }
}

int MultiplicityPattern::sum() const {
    int s = 0;
    for (int x : parts) s += x;
    return s;
}

std::string MultiplicityPattern::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out << ',';
        out << parts[i];
    }
    return out.str();
}

MultiplicityPattern MultiplicityPattern::parse(const std::string& text) {
    std::vector<int> parts;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::size_t used = 0;
        int v = std::stoi(token, &used);
        if (used != token.size())
            throw std::invalid_argument("MultiplicityPattern: bad token '" + token + "'");
        parts.push_back(v);
    }
    return MultiplicityPattern(std::move(parts));
}

Cycle::Cycle(const Modulus& m, std::vector<std::int64_t> entry_indices)
    : mod(m), entries(std::move(entry_indices)) {
    if (!is_cycle(m, entries))
        throw std::invalid_argument("Cycle: entries must be a zero-sum p-tuple");
}

VectorFp Cycle::entry(int i) const {
    return VectorFp::from_index(mod, entries.at(static_cast<std::size_t>(i)));
}

std::vector<std::int64_t> Cycle::support() const {
    std::vector<std::int64_t> s(entries);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool is_cycle(const Modulus& m, std::span<const std::int64_t> entries) {
    if (entries.size() != static_cast<std::size_t>(m.p()))
        throw std::invalid_argument("is_cycle: expected a p-tuple, p = " + std::to_string(m.p()));
    const auto n = static_cast<std::size_t>(m.n());
    const auto p = static_cast<std::uint32_t>(m.p());
    std::vector<std::uint32_t> sum(n, 0), coords(n);
    for (auto e : entries) {
        if (e < 0 || e >= m.size())
            throw std::invalid_argument("is_cycle: entry index out of range");
        mixed_radix_decode(m.p(), m.n(), e, coords);
        for (std::size_t c = 0; c < n; ++c) {
            sum[c] += coords[c];
            if (sum[c] >= p) sum[c] -= p;
        }
    }
    return std::all_of(sum.begin(), sum.end(), [](std::uint32_t v) { return v == 0; });
}

bool is_cycle(const std::vector<VectorFp>& tuple) {
    if (tuple.empty())
        throw std::invalid_argument("is_cycle: empty tuple");
    const Modulus& m = tuple.front().modulus();
    std::vector<std::int64_t> idx;
    idx.reserve(tuple.size());
    for (const auto& v : tuple) {
        if (v.modulus() != m)
            throw std::invalid_argument("is_cycle: modulus mismatch");
        idx.push_back(v.index());
    }
    return is_cycle(m, idx);
}

MultiplicityPattern multiplicity_pattern(const Cycle& c) {
    std::map<std::int64_t, int> counts;
    for (auto e : c.entries) ++counts[e];
    std::vector<int> parts;
    parts.reserve(counts.size());
    for (const auto& [elem, k] : counts) parts.push_back(k);
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return MultiplicityPattern(std::move(parts));
}

std::pair<Cycle, BlockStructure> canonical_block_order(const Cycle& c) {
    std::map<std::int64_t, int> counts;
    for (auto e : c.entries) ++counts[e];
    // Groups sorted by decreasing multiplicity, ties by ascending index.
    std::vector<std::pair<std::int64_t, int>> groups(counts.begin(), counts.end());
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::int64_t> ordered;
    std::vector<int> parts;
    std::vector<std::pair<int, int>> blocks;
    ordered.reserve(c.entries.size());
    for (const auto& [elem, k] : groups) {
        int begin = static_cast<int>(ordered.size());
        ordered.insert(ordered.end(), static_cast<std::size_t>(k), elem);
        parts.push_back(k);
        blocks.emplace_back(begin, begin + k);
    }
    BlockStructure bs{MultiplicityPattern(std::move(parts)), std::move(blocks)};
    return {Cycle(c.mod, std::move(ordered)), std::move(bs)};
}

CycleCollection::CycleCollection(const Modulus& m, std::vector<Cycle> cycles_in)
    : mod(m), cycles(std::move(cycles_in)) {
    std::unordered_set<std::int64_t> seen;
    for (const auto& c : cycles) {
        if (c.mod != m)
            throw std::invalid_argument("CycleCollection: modulus mismatch");
        for (auto e : c.support())
            if (!seen.insert(e).second)
                throw std::invalid_argument("CycleCollection: supports are not pairwise disjoint");
    }
}

ColorClasses::ColorClasses(const Modulus& m, std::vector<PointSet> sets_in)
    : sets(std::move(sets_in)) {
    if (sets.size() != static_cast<std::size_t>(m.p()))
        throw std::invalid_argument("ColorClasses: expected exactly p sets");
    for (const auto& s : sets)
        if (s.modulus() != m)
            throw std::invalid_argument("ColorClasses: modulus mismatch");
}

namespace {

// Exact feasibility of completing the current multiplicity multiset to the
// target pattern: an injection from current groups into parts with mu <= part
// exists iff sorted-descending counts are dominated elementwise.
bool pattern_feasible(std::vector<int> counts_desc, const std::vector<int>& parts) {
    if (counts_desc.size() > parts.size()) return false;
    std::sort(counts_desc.begin(), counts_desc.end(), std::greater<int>());
    for (std::size_t i = 0; i < counts_desc.size(); ++i)
        if (counts_desc[i] > parts[i]) return false;
    return true;
}

bool pattern_exact(std::vector<int> counts, const std::vector<int>& parts) {
    if (counts.size() != parts.size()) return false;
    std::sort(counts.begin(), counts.end(), std::greater<int>());
    return counts == parts;
}

struct WalkState {
    const Modulus& m;
    const std::vector<const PointSet*>& pos;
    const MultiplicityPattern* filter;
    std::uint64_t budget;
    const std::function<Walk(std::span<const std::int64_t>)>& visit;

    std::uint64_t nodes = 0;
    bool budget_hit = false;
    bool stop_requested = false;

    std::vector<std::int64_t> chosen;
    std::vector<std::vector<std::uint32_t>> partial;  // partial[l] = sum of entries [0, l)
    std::unordered_map<std::int64_t, int> counts;
    // Decoded coordinates per distinct position set, keyed by identity.
    std::unordered_map<const PointSet*, std::vector<std::vector<std::uint32_t>>> decoded;

    std::vector<int> counts_vector() const {
        std::vector<int> v;
        v.reserve(counts.size());
        for (const auto& [elem, k] : counts) v.push_back(k);
        return v;
    }

    bool charge() {
        if (++nodes > budget) {
            budget_hit = true;
            return false;
        }
        return true;
    }

    void descend(int level) {
        const int p = static_cast<int>(m.p());
        const auto n = static_cast<std::size_t>(m.n());
        const auto& prev = partial[static_cast<std::size_t>(level)];
        if (level == p - 1) {
            if (!charge()) return;
            std::vector<std::uint32_t> needed(n);
            for (std::size_t c = 0; c < n; ++c)
                needed[c] = prev[c] == 0 ? 0 : static_cast<std::uint32_t>(m.p()) - prev[c];
            std::int64_t last = mixed_radix_encode(m.p(), m.n(), needed);
            if (!pos[static_cast<std::size_t>(level)]->contains(last)) return;
            chosen[static_cast<std::size_t>(level)] = last;
            if (filter) {
                auto cv = counts_vector();
                auto it = counts.find(last);
                if (it == counts.end()) {
                    cv.push_back(1);
                } else {
                    for (auto& k : cv)
                        if (k == it->second) { ++k; break; }  // any one group of that size
                }
                // The bumped entry may belong to a different group with the
                // same count, but sorted multisets agree regardless.
                if (!pattern_exact(std::move(cv), filter->parts)) return;
            }
            if (visit(std::span<const std::int64_t>(chosen)) == Walk::Stop) stop_requested = true;
            return;
        }
        const auto& coords = decoded_for(pos[static_cast<std::size_t>(level)]);
        const auto& indices = pos[static_cast<std::size_t>(level)]->indices();
        auto& next = partial[static_cast<std::size_t>(level) + 1];
        const auto p32 = static_cast<std::uint32_t>(m.p());
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (!charge()) return;
            chosen[static_cast<std::size_t>(level)] = indices[i];
            bool viable = true;
            if (filter) {
                ++counts[indices[i]];
                viable = pattern_feasible(counts_vector(), filter->parts);
            }
            if (viable) {
                for (std::size_t c = 0; c < n; ++c) {
                    next[c] = prev[c] + coords[i][c];
                    if (next[c] >= p32) next[c] -= p32;
                }
                descend(level + 1);
            }
            if (filter) {
                auto it = counts.find(indices[i]);
                if (--it->second == 0) counts.erase(it);
            }
            if (stop_requested || budget_hit) return;
        }
    }

    const std::vector<std::vector<std::uint32_t>>& decoded_for(const PointSet* s) {
        auto it = decoded.find(s);
        if (it != decoded.end()) return it->second;
        std::vector<std::vector<std::uint32_t>> all;
        all.reserve(s->size());
        std::vector<std::uint32_t> coords(static_cast<std::size_t>(m.n()));
        for (auto idx : s->indices()) {
            mixed_radix_decode(m.p(), m.n(), idx, coords);
            all.push_back(coords);
        }
        return decoded.emplace(s, std::move(all)).first->second;
    }
};

void validate_filter(const Modulus& m, const MultiplicityPattern* filter) {
    if (filter && filter->sum() != m.p())
        throw std::invalid_argument("pattern filter must be a partition of p = " +
                                    std::to_string(m.p()));
}

}  // namespace

WalkStats walk_cycles(const Modulus& m, const std::vector<const PointSet*>& positions,
                      const MultiplicityPattern* filter, std::uint64_t budget,
                      const std::function<Walk(std::span<const std::int64_t>)>& visit) {
    if (positions.size() != static_cast<std::size_t>(m.p()))
        throw std::invalid_argument("walk_cycles: expected p position sets");
    for (const auto* s : positions)
        if (s->modulus() != m)
            throw std::invalid_argument("walk_cycles: modulus mismatch");
    validate_filter(m, filter);

    WalkState st{m, positions, filter, budget, visit, 0, false, false, {}, {}, {}, {}};
    st.chosen.assign(static_cast<std::size_t>(m.p()), 0);
    st.partial.assign(static_cast<std::size_t>(m.p()),
                      std::vector<std::uint32_t>(static_cast<std::size_t>(m.n()), 0));
    st.descend(0);
    return WalkStats{!st.budget_hit, st.nodes};
}

namespace {

CycleEnumeration enumerate_impl(const Modulus& m, const std::vector<const PointSet*>& positions,
                                const std::optional<MultiplicityPattern>& filter,
                                EnumLimits limits) {
    CycleEnumeration out;
    auto stats = walk_cycles(
        m, positions, filter ? &*filter : nullptr, limits.budget,
        [&](std::span<const std::int64_t> entries) {
            out.cycles.emplace_back(m, std::vector<std::int64_t>(entries.begin(), entries.end()));
            if (out.cycles.size() >= limits.limit) {
                out.hit_limit = true;
                return Walk::Stop;
            }
            return Walk::Continue;
        });
    out.budget_exhausted = !stats.complete;
    out.nodes = stats.nodes;
    return out;
}

}  // namespace

CycleEnumeration enumerate_cycles(const PointSet& a,
                                  const std::optional<MultiplicityPattern>& filter,
                                  EnumLimits limits) {
    std::vector<const PointSet*> positions(static_cast<std::size_t>(a.modulus().p()), &a);
    return enumerate_impl(a.modulus(), positions, filter, limits);
}

CycleEnumeration enumerate_cycles(const ColorClasses& sets,
                                  const std::optional<MultiplicityPattern>& filter,
                                  EnumLimits limits) {
    std::vector<const PointSet*> positions;
    positions.reserve(sets.sets.size());
    for (const auto& s : sets.sets) positions.push_back(&s);
    return enumerate_impl(sets.modulus(), positions, filter, limits);
}

CycleCollection max_disjoint_cycles(const PointSet& a, const MultiplicityPattern& pattern,
                                    std::size_t cap, std::uint64_t budget) {
    const Modulus& m = a.modulus();
    std::vector<Cycle> picked;
    if (cap == 0) return CycleCollection(m, std::move(picked));

    std::vector<const PointSet*> positions(static_cast<std::size_t>(m.p()), &a);
    std::unordered_set<std::int64_t> used;
    auto stats = walk_cycles(
        m, positions, &pattern, budget, [&](std::span<const std::int64_t> entries) {
            for (auto e : entries)
                if (used.count(e)) return Walk::Continue;
            for (auto e : entries) used.insert(e);
            // Stored in canonical block order; reordering keeps the zero sum.
            auto [canon, bs] = canonical_block_order(
                Cycle(m, std::vector<std::int64_t>(entries.begin(), entries.end())));
            picked.push_back(std::move(canon));
            return picked.size() >= cap ? Walk::Stop : Walk::Continue;
        });
    if (!stats.complete)
        throw BudgetExceeded("max_disjoint_cycles: budget exceeded", stats.nodes);
    return CycleCollection(m, std::move(picked));
}

std::vector<std::pair<std::int64_t, std::int64_t>> extendable_pairs(const ColorClasses& sets,
                                                                    int j,
                                                                    std::uint64_t budget) {
    const Modulus& m = sets.modulus();
    const int p = static_cast<int>(m.p());
    if (j < 3 || j > p)
        throw std::invalid_argument("extendable_pairs: j must satisfy 3 <= j <= p");

    Budget work{budget, 0};
    // Feasible sums of x_2 + ... + x_p with position j left out (1-based).
    std::vector<std::int64_t> reach{0};
    std::vector<std::uint32_t> scoords(static_cast<std::size_t>(m.n()));
    std::vector<std::uint32_t> xcoords(static_cast<std::size_t>(m.n()));
    const auto p32 = static_cast<std::uint32_t>(m.p());
    for (int i = 2; i <= p; ++i) {
        if (i == j) continue;
        const PointSet& xi = sets.sets[static_cast<std::size_t>(i - 1)];
        std::unordered_set<std::int64_t> next;
        next.reserve(reach.size() * xi.size() + 1);
        for (auto s : reach) {
            mixed_radix_decode(m.p(), m.n(), s, scoords);
            for (auto x : xi.indices()) {
                if (!work.charge()) work.require("extendable_pairs");
                mixed_radix_decode(m.p(), m.n(), x, xcoords);
                std::vector<std::uint32_t> sum(scoords);
                for (std::size_t c = 0; c < sum.size(); ++c) {
                    sum[c] += xcoords[c];
                    if (sum[c] >= p32) sum[c] -= p32;
                }
                next.insert(mixed_radix_encode(m.p(), m.n(), sum));
            }
        }
        reach.assign(next.begin(), next.end());
        std::sort(reach.begin(), reach.end());
        if (reach.empty()) break;  // some middle class is empty
    }
    std::unordered_set<std::int64_t> reachable(reach.begin(), reach.end());

    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    const PointSet& x1 = sets.sets[0];
    const PointSet& xj = sets.sets[static_cast<std::size_t>(j - 1)];
    std::vector<std::uint32_t> ycoords(static_cast<std::size_t>(m.n()));
    for (auto y : x1.indices()) {
        mixed_radix_decode(m.p(), m.n(), y, ycoords);
        for (auto z : xj.indices()) {
            if (!work.charge()) work.require("extendable_pairs");
            mixed_radix_decode(m.p(), m.n(), z, xcoords);
            // need -(y+z) reachable
            std::vector<std::uint32_t> need(ycoords);
            for (std::size_t c = 0; c < need.size(); ++c) {
                need[c] += xcoords[c];
                if (need[c] >= p32) need[c] -= p32;
                need[c] = need[c] == 0 ? 0 : p32 - need[c];
            }
            if (reachable.count(mixed_radix_encode(m.p(), m.n(), need)))
                pairs.emplace_back(y, z);
        }
    }
    return pairs;
}

}  // namespace egz
