#include "egzlab/sumfree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "egzlab/rng.hpp"

namespace egz {

namespace {

std::string tuple_text(std::span<const std::int64_t> entries) {
    std::string out = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(entries[i]);
    }
    return out + ")";
}

// L^k, saturating at 2^63 so budget comparisons stay safe.
std::uint64_t pow_saturating(std::uint64_t base, int exp) {
    unsigned __int128 r = 1;
    const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 63;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r >= cap) return static_cast<std::uint64_t>(cap);
    }
    return static_cast<std::uint64_t>(r);
}

struct DecodedColumns {
    // coords[j][i] = coordinates of tuple i's entry in column j
    std::vector<std::vector<std::vector<std::uint32_t>>> coords;
};

DecodedColumns decode_columns(const SumFreeCollection& c) {
    DecodedColumns d;
    const auto n = static_cast<std::size_t>(c.mod.n());
    d.coords.assign(static_cast<std::size_t>(c.k), {});
    for (int j = 0; j < c.k; ++j) {
        auto& col = d.coords[static_cast<std::size_t>(j)];
        col.reserve(c.size());
        std::vector<std::uint32_t> buf(n);
        for (const auto& row : c.tuples) {
            mixed_radix_decode(c.mod.p(), c.mod.n(), row[static_cast<std::size_t>(j)], buf);
            col.push_back(buf);
        }
    }
    return d;
}

// Checks that row i sums to zero; fills the verdict with the diagonal
// witness on failure.
bool diagonal_ok(const SumFreeCollection& c, std::size_t i, SumFreeVerdict& out) {
    const auto n = static_cast<std::size_t>(c.mod.n());
    const auto p = static_cast<std::uint32_t>(c.mod.p());
    std::vector<std::uint32_t> sum(n, 0), buf(n);
    for (auto e : c.tuples[i]) {
        mixed_radix_decode(c.mod.p(), c.mod.n(), e, buf);
        for (std::size_t cc = 0; cc < n; ++cc) {
            sum[cc] += buf[cc];
            if (sum[cc] >= p) sum[cc] -= p;
        }
    }
    if (std::all_of(sum.begin(), sum.end(), [](std::uint32_t v) { return v == 0; })) return true;
    out.ok = false;
    out.witness.assign(static_cast<std::size_t>(c.k), i);
    out.witness_diagonal = true;
    return false;
}

}  // namespace

SumFreeCollection::SumFreeCollection(const Modulus& m, int arity,
                                     std::vector<std::vector<std::int64_t>> rows)
    : mod(m), k(arity), tuples(std::move(rows)) {
    if (k < 3)
        throw std::invalid_argument("SumFreeCollection: arity must be >= 3, got " +
                                    std::to_string(k));
    for (const auto& row : tuples) {
        if (row.size() != static_cast<std::size_t>(k))
            throw std::invalid_argument("SumFreeCollection: every tuple must have arity " +
                                        std::to_string(k));
        for (auto e : row)
            if (e < 0 || e >= m.size())
                throw std::invalid_argument("SumFreeCollection: index out of range");
    }
}

SumFreeCollection SumFreeCollection::from_cycles(const CycleCollection& m) {
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(m.cycles.size());
    for (const auto& c : m.cycles) rows.push_back(c.entries);
    return SumFreeCollection(m.mod, static_cast<int>(m.mod.p()), std::move(rows));
}

SumFreeVerdict verify_colored_sumfree(const SumFreeCollection& c, std::uint64_t budget) {
    SumFreeVerdict out;
    out.exhaustive = true;
    out.ok = true;
    const std::size_t L = c.size();
    if (L == 0) return out;

    for (std::size_t i = 0; i < L; ++i)
        if (!diagonal_ok(c, i, out)) return out;

    const std::uint64_t total = pow_saturating(L, c.k);
    if (total > budget)
        throw BudgetExceeded(
            "verify_colored_sumfree: L^k = " + std::to_string(total) +
                " exceeds budget; use the sampled mode",
            total);

    // Off-diagonal scan in odometer order over (i_1..i_{k-1}); the last index
    // is resolved through a value -> rows table for the final column.
    const auto n = static_cast<std::size_t>(c.mod.n());
    const auto p = static_cast<std::uint32_t>(c.mod.p());
    DecodedColumns cols = decode_columns(c);
    std::unordered_map<std::int64_t, std::vector<std::size_t>> last_rows;
    for (std::size_t i = 0; i < L; ++i)
        last_rows[c.tuples[i][static_cast<std::size_t>(c.k - 1)]].push_back(i);

    std::vector<std::size_t> idx(static_cast<std::size_t>(c.k - 1), 0);
    // partial[j] = sum of the first j chosen entries
    std::vector<std::vector<std::uint32_t>> partial(static_cast<std::size_t>(c.k),
                                                    std::vector<std::uint32_t>(n, 0));
    int level = 0;
    while (true) {
        if (level == c.k - 1) {
            const auto& s = partial[static_cast<std::size_t>(level)];
            std::vector<std::uint32_t> needed(n);
            for (std::size_t cc = 0; cc < n; ++cc)
                needed[cc] = s[cc] == 0 ? 0 : p - s[cc];
            auto it = last_rows.find(mixed_radix_encode(c.mod.p(), c.mod.n(), needed));
            if (it != last_rows.end()) {
                for (std::size_t last : it->second) {
                    bool diagonal = true;
                    for (std::size_t v : idx)
                        if (v != last) { diagonal = false; break; }
                    if (diagonal) continue;
                    out.ok = false;
                    out.witness.assign(idx.begin(), idx.end());
                    out.witness.push_back(last);
                    return out;
                }
            }
            --level;
            if (level < 0) break;
            ++idx[static_cast<std::size_t>(level)];
        }
        while (level >= 0 && idx[static_cast<std::size_t>(level)] >= L) {
            idx[static_cast<std::size_t>(level)] = 0;
            --level;
            if (level >= 0) ++idx[static_cast<std::size_t>(level)];
        }
        if (level < 0) break;
        // extend partial sum for the current level
        const auto& prev = partial[static_cast<std::size_t>(level)];
        auto& cur = partial[static_cast<std::size_t>(level) + 1];
        const auto& e = cols.coords[static_cast<std::size_t>(level)][idx[static_cast<std::size_t>(level)]];
        for (std::size_t cc = 0; cc < n; ++cc) {
            cur[cc] = prev[cc] + e[cc];
            if (cur[cc] >= p) cur[cc] -= p;
        }
        ++level;
        if (level < c.k - 1) idx[static_cast<std::size_t>(level)] = 0;
    }
    out.checked = total;
    return out;
}

SumFreeVerdict verify_colored_sumfree_sampled(const SumFreeCollection& c, std::uint64_t samples,
                                              std::uint64_t seed) {
    SumFreeVerdict out;
    out.exhaustive = false;
    out.ok = true;
    const std::size_t L = c.size();
    if (L == 0) return out;

    for (std::size_t i = 0; i < L; ++i)
        if (!diagonal_ok(c, i, out)) return out;

    const auto n = static_cast<std::size_t>(c.mod.n());
    const auto p = static_cast<std::uint32_t>(c.mod.p());
    DecodedColumns cols = decode_columns(c);
    SplitMix64 rng(seed);
    std::vector<std::size_t> idx(static_cast<std::size_t>(c.k));
    std::vector<std::uint32_t> sum(n);
    for (std::uint64_t s = 0; s < samples; ++s) {
        bool all_equal = true;
        for (int j = 0; j < c.k; ++j) {
            idx[static_cast<std::size_t>(j)] =
                static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(L)));
            if (idx[static_cast<std::size_t>(j)] != idx[0]) all_equal = false;
        }
        ++out.checked;
        if (all_equal) continue;
        std::fill(sum.begin(), sum.end(), 0u);
        for (int j = 0; j < c.k; ++j) {
            const auto& e = cols.coords[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
            for (std::size_t cc = 0; cc < n; ++cc) {
                sum[cc] += e[cc];
                if (sum[cc] >= p) sum[cc] -= p;
            }
        }
        if (std::all_of(sum.begin(), sum.end(), [](std::uint32_t v) { return v == 0; })) {
            out.ok = false;
            out.witness.assign(idx.begin(), idx.end());
            return out;
        }
    }
    return out;
}

double slice_rank_bound(std::int64_t p, int k, int n, double tol) {
    if (n < 0) throw std::invalid_argument("slice_rank_bound: n must be >= 0");
    if (n == 0) return 1.0;
    return std::pow(gamma_pk(p, k, tol).gamma_value, n);
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& pr) const {
        std::uint64_t z = static_cast<std::uint64_t>(pr.first) * 0x9e3779b97f4a7c15ULL;
        z ^= static_cast<std::uint64_t>(pr.second) + 0xbf58476d1ce4e5b9ULL + (z << 6) + (z >> 2);
        return static_cast<std::size_t>(z);
    }
};

}  // namespace

ConflictGraph build_conflict_graph(const CycleCollection& m, const ColorClasses& sets,
                                   std::uint64_t budget) {
    if (m.mod != sets.modulus())
        throw std::invalid_argument("build_conflict_graph: modulus mismatch");
    const int p = static_cast<int>(m.mod.p());
    for (const auto& c : m.cycles)
        for (int i = 0; i < p; ++i)
            if (!sets.sets[static_cast<std::size_t>(i)].contains(
                    c.entries[static_cast<std::size_t>(i)]))
                throw std::invalid_argument(
                    "build_conflict_graph: collection is not contained in X_1 x ... x X_p");

    // j -> set of j-extendable (y, z)
    std::vector<std::unordered_set<std::pair<std::int64_t, std::int64_t>, PairHash>> ext(
        static_cast<std::size_t>(p + 1));
    for (int j = 3; j <= p; ++j) {
        auto pairs = extendable_pairs(sets, j, budget);
        ext[static_cast<std::size_t>(j)] =
            std::unordered_set<std::pair<std::int64_t, std::int64_t>, PairHash>(pairs.begin(),
                                                                                pairs.end());
    }

    ConflictGraph g;
    g.vertex_count = m.cycles.size();
    g.degree.assign(g.vertex_count, 0);
    for (std::size_t a = 0; a < m.cycles.size(); ++a) {
        for (std::size_t b = a + 1; b < m.cycles.size(); ++b) {
            bool edge = false;
            for (int j = 3; j <= p && !edge; ++j) {
                const auto& e = ext[static_cast<std::size_t>(j)];
                if (e.count({m.cycles[a].entries[0],
                             m.cycles[b].entries[static_cast<std::size_t>(j - 1)]}) ||
                    e.count({m.cycles[b].entries[0],
                             m.cycles[a].entries[static_cast<std::size_t>(j - 1)]}))
                    edge = true;
            }
            if (edge) {
                g.edges.emplace_back(a, b);
                ++g.degree[a];
                ++g.degree[b];
            }
        }
    }
    return g;
}

std::size_t caro_wei_floor(const ConflictGraph& g) {
    long double sum = 0.0L;
    for (auto d : g.degree) sum += 1.0L / (static_cast<long double>(d) + 1.0L);
    return static_cast<std::size_t>(std::ceil(static_cast<double>(sum) - 1e-9));
}

std::vector<std::size_t> caro_wei_independent(const ConflictGraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.vertex_count);
    for (auto [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> alive(g.vertex_count, true);
    std::vector<std::size_t> deg = g.degree;
    std::vector<std::size_t> picked;
    std::size_t remaining = g.vertex_count;
    while (remaining > 0) {
        std::size_t best = g.vertex_count;
        for (std::size_t v = 0; v < g.vertex_count; ++v)
            if (alive[v] && (best == g.vertex_count || deg[v] < deg[best])) best = v;
        picked.push_back(best);
        // delete the closed neighborhood of best
        std::vector<std::size_t> gone{best};
        for (auto u : adj[best])
            if (alive[u]) gone.push_back(u);
        for (auto u : gone) {
            alive[u] = false;
            --remaining;
        }
        for (auto u : gone)
            for (auto w : adj[u])
                if (alive[w] && deg[w] > 0) --deg[w];
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

std::optional<Cycle> find_hypothesis_violation(const ColorClasses& sets, std::uint64_t budget) {
    std::vector<const PointSet*> positions;
    positions.reserve(sets.sets.size());
    for (const auto& s : sets.sets) positions.push_back(&s);

    std::optional<Cycle> witness;
    auto stats = walk_cycles(sets.modulus(), positions, nullptr, budget,
                             [&](std::span<const std::int64_t> entries) {
                                 if (entries[0] != entries[1]) {
                                     witness = Cycle(sets.modulus(),
                                                     std::vector<std::int64_t>(entries.begin(),
                                                                               entries.end()));
                                     return Walk::Stop;
                                 }
                                 return Walk::Continue;
                             });
    if (!stats.complete)
        throw BudgetExceeded("find_hypothesis_violation: budget exceeded", stats.nodes);
    return witness;
}

ExtractionResult extract_subcollection(const CycleCollection& m, const ColorClasses& sets,
                                       std::uint64_t budget) {
    if (auto bad = find_hypothesis_violation(sets, budget))
        throw std::invalid_argument(
            "extract_subcollection: hypothesis violated, cycle " + tuple_text(bad->entries) +
            " has x_1 != x_2");

    ConflictGraph graph = build_conflict_graph(m, sets, budget);
    std::vector<std::size_t> chosen = caro_wei_independent(graph);

    std::vector<Cycle> kept;
    kept.reserve(chosen.size());
    for (auto v : chosen) kept.push_back(m.cycles[v]);
    CycleCollection mprime(m.mod, std::move(kept));

    // Exact integer form of |M'| >= L^2 / (2 p^{n+1})
    const unsigned __int128 lhs = static_cast<unsigned __int128>(2) *
                                  static_cast<unsigned __int128>(m.mod.size()) *
                                  static_cast<unsigned __int128>(m.mod.p()) *
                                  static_cast<unsigned __int128>(mprime.size());
    const unsigned __int128 rhs = static_cast<unsigned __int128>(m.size()) *
                                  static_cast<unsigned __int128>(m.size());
    const bool floor_ok = lhs >= rhs;
    if (!floor_ok)
        throw std::logic_error("extract_subcollection: independent set misses the size floor");

    SumFreeVerdict verdict = verify_colored_sumfree(SumFreeCollection::from_cycles(mprime), budget);
    if (!verdict.ok)
        throw std::logic_error("extract_subcollection: extracted collection failed the "
                               "p-colored sum-free check at " + tuple_text([&] {
                                   std::vector<std::int64_t> w(verdict.witness.begin(),
                                                               verdict.witness.end());
                                   return w;
                               }()));

    ExtractionResult out{std::move(mprime), std::move(graph), std::move(chosen),
                         floor_ok, verdict.ok, verdict};
    return out;
}

}  // namespace egz
