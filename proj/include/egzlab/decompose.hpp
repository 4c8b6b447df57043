#pragma once

// The decomposition engine: ordered pattern list, the stripping procedure
// that finds a subset A' carrying L disjoint same-pattern cycles and no
// longer-pattern cycle, color-class construction, hypothesis verification,
// and the end-to-end pipeline that emits a machine-checkable certificate.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egzlab/cycles.hpp"
#include "egzlab/errors.hpp"
#include "egzlab/fp.hpp"
#include "egzlab/sumfree.hpp"

namespace egz {

// First all-distinct zero-sum p-tuple of A^p in enumeration order, if any.
std::optional<Cycle> find_p_distinct_zero_sum(const PointSet& a,
                                              std::uint64_t budget = 100'000'000);
bool check_no_p_distinct_zero_sum(const PointSet& a, std::uint64_t budget = 100'000'000);

// All P(p) partitions of p, by decreasing length; equal lengths ordered
// reverse-lexicographically (frozen tie-break). First (1,...,1), last (p).
std::vector<MultiplicityPattern> pattern_list(std::int64_t p);

struct StripStep {
    MultiplicityPattern pattern;
    bool stopped = false;                 // found L disjoint cycles and stopped here
    std::vector<std::int64_t> deleted;    // support union removed when not stopped
};

struct StripOutcome {
    PointSet a_prime;
    MultiplicityPattern lambda;
    CycleCollection m;                    // L disjoint lambda-cycles, block order
    std::vector<StripStep> trace;
};

// Thrown when every pattern is exhausted without reaching L disjoint cycles.
// Cannot happen for L = ceil(|A| / (p P(p))) unless the implementation is
// wrong; it can happen legitimately for larger explicit L values.
class StripExhausted : public std::runtime_error {
public:
    StripExhausted(std::string what, std::vector<StripStep> trace_in)
        : std::runtime_error(std::move(what)), trace(std::move(trace_in)) {}

    std::vector<StripStep> trace;
};

// Walks pattern_list(p) in order; at each pattern greedily collects up to L
// disjoint cycles of that pattern inside the current A'. Stops when L are
// found; otherwise deletes their supports (at most p(L-1) elements) and
// re-checks by enumeration that no cycle of the stripped pattern remains.
StripOutcome strip_patterns(const PointSet& a, std::int64_t l_target,
                            std::uint64_t budget = 100'000'000);

// X_i = { x_i : (x_1,...,x_p) in M }. Every cycle must have pattern lambda
// and be stored in canonical block order; lambda_1 >= 2 is required. Checks
// |X_i| = |M| and that classes from different blocks are disjoint.
ColorClasses build_color_classes(const CycleCollection& m, const MultiplicityPattern& lambda);

struct HypothesisCheck {
    bool ok = false;
    std::optional<Cycle> witness;  // cycle with x_1 != x_2 when !ok
};

// Exhaustively enumerates the cycles of X_1 x ... x X_p and checks x_1 = x_2.
HypothesisCheck verify_hypothesis(const ColorClasses& sets, std::uint64_t budget = 100'000'000);

struct CertificateFlags {
    bool precondition_ok = false;   // A has no p distinct elements summing to zero
    bool strip_ok = false;          // trace replay: bounds + per-step absence
    bool collection_ok = false;     // M: size L, pattern lambda, block order, inside A'
    bool classes_ok = false;        // |X_i| = L and block disjointness
    bool hypothesis_ok = false;     // every product cycle has x_1 = x_2
    bool distinct_count_ok = false; // no product cycle has more than len(lambda) distinct entries
    bool pair_sums_ok = false;      // per j: extendable-pair sums pairwise distinct, count <= p^n
    bool floor_ok = false;          // 2 p^{n+1} |M'| >= L^2
    bool subcollection_sumfree_ok = false;  // M' is p-colored sum-free
    bool collection_bound_ok = false;       // L <= 2p (sqrt(gamma_p p))^n
    bool subcollection_bound_ok = false;    // |M'| <= gamma_p^n
    bool numeric_consistent = false;        // stored constants match recomputation

    bool all() const {
        return precondition_ok && strip_ok && collection_ok && classes_ok && hypothesis_ok &&
               distinct_count_ok && pair_sums_ok && floor_ok && subcollection_sumfree_ok &&
               collection_bound_ok && subcollection_bound_ok && numeric_consistent;
    }
};

struct Certificate {
    int schema = 1;
    Modulus mod;
    std::vector<std::int64_t> input_set;  // A
    std::int64_t l_value = 0;
    bool l_overridden = false;
    std::vector<StripStep> trace;
    MultiplicityPattern lambda;
    std::vector<std::int64_t> a_prime;
    std::vector<std::vector<std::int64_t>> m_cycles;       // canonical block order
    std::vector<std::vector<std::int64_t>> x_classes;      // p index lists
    std::vector<std::vector<std::int64_t>> mprime_cycles;  // subset of m_cycles
    std::vector<std::int64_t> extendable_counts;           // per j = 3..p
    double gamma_value = 0.0;            // gamma_p
    double collection_bound = 0.0;       // 2p (sqrt(gamma_p p))^n
    double subcollection_cap = 0.0;      // gamma_p^n
    std::size_t caro_wei_floor_value = 0;
    CertificateFlags flags;
    bool valid = false;

    Certificate() : mod(3, 1) {}
};

struct PipelineOptions {
    std::optional<std::int64_t> l_override;
    std::uint64_t budget = 100'000'000;
    double tol = 1e-12;
};

// The end-to-end chain: precondition check, L = ceil(|A| / (p P(p))),
// stripping, color classes, hypothesis, pair-sum distinctness, conflict-graph
// extraction, and the numeric comparisons. Throws on any stage failure with
// the stage name in the message; a returned certificate has every flag true.
Certificate run_theorem_pipeline(const PointSet& a, const PipelineOptions& opts = {});

struct CertifyReport {
    CertificateFlags flags;
    bool valid = false;
    std::string first_failure;  // empty when valid
};

// Recomputes every certificate flag from the stored data alone. Any mutation
// of the certificate flips at least one flag off.
CertifyReport certify(const Certificate& cert, std::uint64_t budget = 100'000'000);

}  // namespace egz
