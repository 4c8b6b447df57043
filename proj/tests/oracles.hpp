#pragma once

// Independent reference implementations the tests compare the library
// against. Everything here is deliberately naive — nested loops and full
// enumeration — and shares no logic with the code under test beyond the
// basic vector arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "egzlab/cycles.hpp"
#include "egzlab/fp.hpp"
#include "egzlab/search.hpp"
#include "egzlab/sumfree.hpp"

namespace oracle {

// Every zero-sum p-tuple of a^p in lexicographic index order, via p nested
// loops (the recursion is just the loop nest written once for all p).
inline std::vector<std::vector<std::int64_t>> naive_cycles(
    const egz::PointSet& a, const std::optional<egz::MultiplicityPattern>& filter = std::nullopt) {
    const auto& m = a.modulus();
    const int p = static_cast<int>(m.p());
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> tuple(static_cast<std::size_t>(p));
    std::vector<egz::VectorFp> partial(static_cast<std::size_t>(p) + 1, egz::VectorFp::zero(m));

    auto matches = [&](const std::vector<std::int64_t>& t) {
        if (!filter) return true;
        std::map<std::int64_t, int> counts;
        for (auto e : t) counts[e]++;
        std::vector<int> parts;
        for (auto& [e, c] : counts) parts.push_back(c);
        std::sort(parts.rbegin(), parts.rend());
        return parts == filter->parts;
    };

    // loop nest over positions
    std::vector<std::size_t> pos(static_cast<std::size_t>(p), 0);
    int level = 0;
    while (level >= 0) {
        if (level == p) {
            if (partial[static_cast<std::size_t>(p)] == egz::VectorFp::zero(m) && matches(tuple))
                out.push_back(tuple);
            --level;
            ++pos[static_cast<std::size_t>(level)];  // advance the innermost loop
            continue;
        }
        auto& i = pos[static_cast<std::size_t>(level)];
        if (i == a.size()) {
            i = 0;
            --level;
            if (level >= 0) ++pos[static_cast<std::size_t>(level)];
            continue;
        }
        tuple[static_cast<std::size_t>(level)] = a.indices()[i];
        partial[static_cast<std::size_t>(level) + 1] =
            egz::vec_add(partial[static_cast<std::size_t>(level)], a.element(i));
        ++level;
        if (level < p) pos[static_cast<std::size_t>(level)] = 0;
    }
    return out;
}

struct NaiveVerdict {
    bool ok = true;
    std::vector<std::size_t> witness;  // first violating index tuple, odometer order
};

// Direct transcription of the k-colored sum-free definition over all L^k
// index tuples.
inline NaiveVerdict naive_sumfree(const egz::SumFreeCollection& c) {
    const auto& m = c.mod;
    const std::size_t l = c.size();
    const int k = c.k;
    NaiveVerdict v;
    if (l == 0) return v;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        egz::VectorFp sum = egz::VectorFp::zero(m);
        for (int j = 0; j < k; ++j)
            sum = egz::vec_add(
                sum, egz::VectorFp::from_index(
                         m, c.tuples[idx[static_cast<std::size_t>(j)]][static_cast<std::size_t>(j)]));
        const bool diagonal =
            std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i == idx[0]; });
        const bool zero = sum == egz::VectorFp::zero(m);
        if (zero != diagonal) {
            v.ok = false;
            v.witness = idx;
            return v;
        }
        int j = k - 1;
        while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == l) {
            idx[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return v;
}

// Exact maximum independent set by branch and bound on adjacency bitsets;
// fine up to ~24 vertices.
inline std::size_t exact_max_independent_set(const egz::ConflictGraph& g) {
    const std::size_t n = g.vertex_count;
    std::vector<std::uint64_t> adj(n, 0);
    for (auto [i, j] : g.edges) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
    }
    std::size_t best = 0;
    auto rec = [&](auto&& self, std::uint64_t avail, std::size_t size) -> void {
        if (avail == 0) {
            best = std::max(best, size);
            return;
        }
        if (size + static_cast<std::size_t>(__builtin_popcountll(avail)) <= best) return;
        const int v = __builtin_ctzll(avail);
        // take v
        self(self, avail & ~((std::uint64_t{1} << v) | adj[static_cast<std::size_t>(v)]),
             size + 1);
        // skip v
        self(self, avail & ~(std::uint64_t{1} << v), size);
    };
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    rec(rec, all, 0);
    return best;
}

// All partitions of t as non-increasing part lists.
inline std::vector<std::vector<int>> enumerate_partitions(int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int maxpart) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(left, maxpart); part >= 1; --part) {
            cur.push_back(part);
            self(self, left - part, part);
            cur.pop_back();
        }
    };
    rec(rec, t, t);
    return out;
}

// Number of set partitions of {1..k} by enumerating restricted growth
// strings.
inline std::uint64_t count_set_partitions(int k) {
    std::uint64_t count = 0;
    std::vector<int> label(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int i, int maxused) -> void {
        if (i == k) {
            ++count;
            return;
        }
        for (int b = 0; b <= maxused + 1; ++b) {
            label[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, std::max(maxused, b));
        }
    };
    if (k == 0) return 1;
    rec(rec, 0, -1);
    return count;
}

// True iff some exactly-`length` subsequence of the expanded sequence sums
// to zero; plain combination enumeration.
inline bool naive_zero_sum_subsequence(const egz::CyclicGroup& g, const egz::Multiset& seq,
                                       int length) {
    std::vector<std::int64_t> flat;
    for (const auto& [elem, count] : seq)
        for (int i = 0; i < count; ++i) flat.push_back(elem);
    if (static_cast<int>(flat.size()) < length) return false;
    bool found = false;
    auto rec = [&](auto&& self, std::size_t i, int picked, std::int64_t sum) -> void {
        if (found) return;
        if (picked == length) {
            if (sum == 0) found = true;
            return;
        }
        if (flat.size() - i < static_cast<std::size_t>(length - picked)) return;
        self(self, i + 1, picked + 1, g.add(sum, flat[i]));
        self(self, i + 1, picked, sum);
    };
    rec(rec, 0, 0, 0);
    return found;
}

// True iff some p pairwise-distinct elements of a sum to zero; enumerates
// p-subsets.
inline bool naive_has_p_distinct_zero_sum(const egz::PointSet& a) {
    const auto& m = a.modulus();
    const int p = static_cast<int>(m.p());
    bool found = false;
    auto rec = [&](auto&& self, std::size_t i, int picked, egz::VectorFp sum) -> void {
        if (found) return;
        if (picked == p) {
            if (sum == egz::VectorFp::zero(m)) found = true;
            return;
        }
        if (a.size() - i < static_cast<std::size_t>(p - picked)) return;
        self(self, i + 1, picked + 1, egz::vec_add(sum, a.element(i)));
        self(self, i + 1, picked, sum);
    };
    rec(rec, 0, 0, egz::VectorFp::zero(m));
    return found;
}

}  // namespace oracle
