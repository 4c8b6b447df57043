#pragma once

// Independent brute-force / branch-and-bound oracles over Z_m^n: the exact
// EGZ constant for tiny parameters and the exact maximum size of a subset of
// F_p^n with no p distinct elements summing to zero. Everything here is
// self-contained on purpose — these are the ground truth the other modules
// are cross-checked against.

#include <cstdint>
#include <utility>
#include <vector>

#include "egzlab/errors.hpp"
#include "egzlab/fp.hpp"

namespace egz {

// Z_m^n for any m >= 2 (not necessarily prime).
class CyclicGroup {
public:
    CyclicGroup(std::int64_t m, int n);

    std::int64_t m() const { return m_; }
    int n() const { return n_; }
    std::int64_t size() const { return size_; }  // m^n

    std::int64_t add(std::int64_t a, std::int64_t b) const;
    std::int64_t scale(std::int64_t c, std::int64_t a) const;
    // additive order of the element with this canonical index
    std::int64_t element_order(std::int64_t a) const;

private:
    std::int64_t m_;
    int n_;
    std::int64_t size_;
};

// Sequences are multisets: (element index, multiplicity) pairs.
using Multiset = std::vector<std::pair<std::int64_t, int>>;

// True iff some subsequence of exactly `length` elements sums to zero.
// Dynamic program over (picked count, group element).
bool has_zero_sum_subsequence(const CyclicGroup& g, const Multiset& seq, int length);

struct SearchResult {
    std::int64_t value = 0;
    std::vector<std::int64_t> witness_set;  // max-set search
    Multiset witness_multiset;              // EGZ search: a longest valid sequence
    bool exhaustive = false;
    std::uint64_t nodes_expanded = 0;
};

// Smallest s such that every length-s sequence over Z_m^n has a zero-sum
// subsequence of length m; computed as 1 + (longest sequence without one).
// DFS over multiplicity vectors, elements ordered by (additive order, index),
// per-element multiplicity capped at m-1, multiplicities tried high-to-low.
SearchResult egz_constant(std::int64_t m, int n, std::uint64_t budget = 100'000'000);

struct MaxSetOptions {
    std::uint64_t budget = 100'000'000;
    // Translate so that the set contains 0 (valid because the property is
    // translation invariant); halves the tree but witnesses are then
    // canonical-form only. Off by default.
    bool translation_symmetry = false;
};

// Exact maximum size of a subset of F_p^n without p distinct elements
// summing to zero. Include/exclude DFS in ascending index order
// (include-first); adding x is pruned when some (p-1)-subset of the current
// set sums to -x, tracked by an incremental subset-sum table.
SearchResult max_distinct_zero_sum_free(std::int64_t p, int n, MaxSetOptions opts = {});

}  // namespace egz
