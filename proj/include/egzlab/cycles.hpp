#pragma once

// Cycles (zero-sum p-tuples), multiplicity patterns, blocks, disjoint
// collections and j-extendable pairs. Enumeration order is frozen: depth
// first, candidates in ascending canonical index at every position, so
// greedy results are reproducible.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "egzlab/errors.hpp"
#include "egzlab/fp.hpp"

namespace egz {

// A partition of p recording how often each distinct element occurs in a
// cycle; parts are non-increasing, length = number of distinct elements.
struct MultiplicityPattern {
    std::vector<int> parts;

    MultiplicityPattern() = default;
    explicit MultiplicityPattern(std::vector<int> parts_in);

    int length() const { return static_cast<int>(parts.size()); }
    int sum() const;

    bool operator==(const MultiplicityPattern& o) const { return parts == o.parts; }
    bool operator!=(const MultiplicityPattern& o) const { return parts != o.parts; }

    std::string to_string() const;                        // "3,2,1,1"
    static MultiplicityPattern parse(const std::string&); // inverse of to_string
};

// An ordered p-tuple of vectors summing to zero; entries may repeat.
struct Cycle {
    Modulus mod;
    std::vector<std::int64_t> entries;  // canonical indices, length p

    Cycle(const Modulus& m, std::vector<std::int64_t> entry_indices);

    VectorFp entry(int i) const;

    // Sorted distinct entry indices.
    std::vector<std::int64_t> support() const;

    bool operator==(const Cycle& o) const { return mod == o.mod && entries == o.entries; }
};

bool is_cycle(const Modulus& m, std::span<const std::int64_t> entries);
bool is_cycle(const std::vector<VectorFp>& tuple);

MultiplicityPattern multiplicity_pattern(const Cycle& c);

// Index intervals of {0,..,p-1}, one per part of the pattern.
struct BlockStructure {
    MultiplicityPattern pattern;
    std::vector<std::pair<int, int>> blocks;  // half-open [begin, end)
};

// Reorders a cycle so equal entries are contiguous, groups sorted by
// decreasing multiplicity and ties broken by ascending element index.
std::pair<Cycle, BlockStructure> canonical_block_order(const Cycle& c);

// Pairwise-disjoint cycles over a common modulus (checked on construction).
struct CycleCollection {
    Modulus mod;
    std::vector<Cycle> cycles;

    CycleCollection(const Modulus& m, std::vector<Cycle> cycles_in);

    std::size_t size() const { return cycles.size(); }
};

// The sets X_1..X_p fed to the sum-free extraction.
struct ColorClasses {
    std::vector<PointSet> sets;  // exactly p sets over one modulus

    ColorClasses(const Modulus& m, std::vector<PointSet> sets_in);

    const Modulus& modulus() const { return sets.front().modulus(); }
};

struct EnumLimits {
    std::uint64_t budget = 100'000'000;  // DFS node expansions
    std::size_t limit = SIZE_MAX;        // max cycles to emit
};

struct CycleEnumeration {
    std::vector<Cycle> cycles;
    bool budget_exhausted = false;  // stopped early; listing incomplete
    bool hit_limit = false;
    std::uint64_t nodes = 0;
};

enum class Walk { Continue, Stop };

// Visits every zero-sum tuple of positions[0] x ... x positions[p-1] in
// lexicographic index order, optionally restricted to one exact multiplicity
// pattern. Returns false if the budget stopped the walk.
struct WalkStats {
    bool complete = true;
    std::uint64_t nodes = 0;
};
WalkStats walk_cycles(const Modulus& m, const std::vector<const PointSet*>& positions,
                      const MultiplicityPattern* filter, std::uint64_t budget,
                      const std::function<Walk(std::span<const std::int64_t>)>& visit);

CycleEnumeration enumerate_cycles(const PointSet& a,
                                  const std::optional<MultiplicityPattern>& filter = std::nullopt,
                                  EnumLimits limits = {});
CycleEnumeration enumerate_cycles(const ColorClasses& sets,
                                  const std::optional<MultiplicityPattern>& filter = std::nullopt,
                                  EnumLimits limits = {});

// Greedy maximal collection of disjoint pattern cycles in enumeration order,
// stopping early once `cap` cycles are found. When it returns fewer than
// `cap` cycles the collection is maximal: every pattern cycle of the set
// meets it. Throws BudgetExceeded instead of returning a truncated answer.
CycleCollection max_disjoint_cycles(const PointSet& a, const MultiplicityPattern& pattern,
                                    std::size_t cap, std::uint64_t budget = 100'000'000);

// All pairs (y, z) in X_1 x X_j that occur as (x_1, x_j) of some cycle in
// X_1 x ... x X_p, for 3 <= j <= p (1-based). Sorted by (y, z).
std::vector<std::pair<std::int64_t, std::int64_t>> extendable_pairs(
    const ColorClasses& sets, int j, std::uint64_t budget = 100'000'000);

}  // namespace egz
