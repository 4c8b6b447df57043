#pragma once

// k-colored sum-free collections, their exhaustive/sampled verification, the
// slice-rank size oracle, and the conflict-graph extraction that turns a
// disjoint cycle collection into a p-colored sum-free subcollection.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "egzlab/bounds.hpp"
#include "egzlab/cycles.hpp"
#include "egzlab/errors.hpp"
#include "egzlab/fp.hpp"

namespace egz {

// L many k-tuples (x_{1,i}, ..., x_{k,i}); tuple j stores canonical indices.
// The collection is k-colored sum-free when x_{1,i_1} + ... + x_{k,i_k} = 0
// holds exactly for i_1 = ... = i_k.
struct SumFreeCollection {
    Modulus mod;
    int k = 0;
    std::vector<std::vector<std::int64_t>> tuples;  // L rows, k columns each

    SumFreeCollection(const Modulus& m, int arity,
                      std::vector<std::vector<std::int64_t>> rows);

    std::size_t size() const { return tuples.size(); }  // L

    static SumFreeCollection from_cycles(const CycleCollection& m);
};

struct SumFreeVerdict {
    bool ok = false;
    bool exhaustive = false;
    std::uint64_t checked = 0;                    // index tuples ruled out
    std::vector<std::size_t> witness;             // violating (i_1..i_k) if !ok
    bool witness_diagonal = false;                // true: diagonal row failed to sum to zero
};

// Exhaustive check of the definition; iterates off-diagonal index tuples in
// odometer order and stops at the first violation. Requires L^k <= budget.
SumFreeVerdict verify_colored_sumfree(const SumFreeCollection& c,
                                      std::uint64_t budget = 100'000'000);

// Fixed-seed sampled variant for oversize L; never reports exhaustive.
SumFreeVerdict verify_colored_sumfree_sampled(const SumFreeCollection& c,
                                              std::uint64_t samples = 10'000'000,
                                              std::uint64_t seed = 0x5eed);

// Gamma_{p,k}^n — the slice-rank ceiling on the size of any k-colored
// sum-free collection in F_p^n.
double slice_rank_bound(std::int64_t p, int k, int n, double tol = 1e-12);

struct ConflictGraph {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
    std::vector<std::size_t> degree;

    std::size_t edge_count() const { return edges.size(); }
};

// Vertices are M's cycles in order; an edge joins C and C' when for some
// j in {3,...,p} the pair (x_1, x'_j) or (x'_1, x_j) is j-extendable.
ConflictGraph build_conflict_graph(const CycleCollection& m, const ColorClasses& sets,
                                   std::uint64_t budget = 100'000'000);

// ceil(sum over vertices of 1/(degree+1)), the guaranteed independent-set
// size; computed in long double with a 1e-9 slack before the ceiling.
std::size_t caro_wei_floor(const ConflictGraph& g);

// Deterministic min-degree greedy (ties by lowest vertex id): repeatedly take
// a minimum-degree vertex and delete its closed neighborhood. The result is
// independent and has size >= caro_wei_floor(g). Returned sorted ascending.
std::vector<std::size_t> caro_wei_independent(const ConflictGraph& g);

struct ExtractionResult {
    CycleCollection mprime;
    ConflictGraph graph;
    std::vector<std::size_t> chosen;  // vertex ids of M that survived
    bool floor_ok = false;            // 2 p^{n+1} |M'| >= L^2, exact integers
    bool sumfree_ok = false;          // M' verified p-colored sum-free
    SumFreeVerdict sumfree_detail;
};

// The Lemma 4 + Lemma 5 step: checks that every cycle of X_1 x ... x X_p has
// x_1 = x_2 (throws std::invalid_argument with a witness message otherwise),
// extracts an independent subcollection M' via the conflict graph, asserts
// the size floor |M'| >= L^2 / (2 p^{n+1}), and verifies M' is p-colored
// sum-free.
ExtractionResult extract_subcollection(const CycleCollection& m, const ColorClasses& sets,
                                       std::uint64_t budget = 100'000'000);

// First cycle of X_1 x ... x X_p violating x_1 = x_2, if any. Shared by the
// extraction above and the decomposition pipeline's hypothesis check.
std::optional<Cycle> find_hypothesis_violation(const ColorClasses& sets,
                                               std::uint64_t budget = 100'000'000);

}  // namespace egz
