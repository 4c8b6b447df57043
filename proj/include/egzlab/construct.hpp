#pragma once

// Lower-bound witness generators: the half-support multicolored construction
// (even n), the diagonal embedding of a point set, and a product lift over
// coordinates. Verification of the distinct-index conditions lives here too;
// it is deliberately separate from the sum-free verifier because the
// off-diagonal condition differs (only pairwise-distinct index tuples are
// forbidden).

#include <cstdint>
#include <vector>

#include "egzlab/fp.hpp"
#include "egzlab/sumfree.hpp"

namespace egz {

struct MulticoloredInstance {
    SumFreeCollection collection;
    std::vector<bool> column_distinct;  // per coordinate j: x_{j,1..L} pairwise distinct

    explicit MulticoloredInstance(SumFreeCollection c);
};

// For even n: L = p^{n/2} tuples (y_i, -y_i, z_i, ..., z_i, -(p-3) z_i) where
// the y_i run over vectors whose first n/2 coordinates are zero and the z_i
// over vectors whose last n/2 coordinates are zero, both in canonical index
// order. Requires p >= 5 (for p = 3 the final column would be all zero).
MulticoloredInstance half_support_construction(std::int64_t p, int n);

struct Theorem7Verdict {
    bool ok = false;
    bool exhaustive = false;
    std::uint64_t checked = 0;
    // failure classification
    bool column_failure = false;     // some column has equal entries
    int column = -1;
    bool diagonal_failure = false;   // some diagonal tuple does not sum to zero
    bool distinct_failure = false;   // zero-sum over pairwise-distinct indices
    std::vector<std::size_t> witness;
};

// Checks the three conditions: per-column distinctness, diagonal zero-sums,
// and no zero-sum over pairwise-distinct index tuples. Requires L^k within
// budget.
Theorem7Verdict verify_theorem7_conditions(const MulticoloredInstance& inst,
                                           std::uint64_t budget = 100'000'000);

// k = p tuples (x, ..., x) for x in A, ascending. The third condition of the
// distinct-index check holds iff A has no p distinct elements summing to
// zero.
MulticoloredInstance diagonal_instance(const PointSet& a);

// {(x, y) : x in A, y in B} with concatenated coordinates. No property is
// preserved by construction; callers must re-verify.
PointSet product_lift(const PointSet& a, const PointSet& b);

}  // namespace egz
