#include "egzlab/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "egzlab/bounds.hpp"

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

MultiplicityPattern all_ones(std::int64_t p) {
    return MultiplicityPattern(std::vector<int>(static_cast<std::size_t>(p), 1));
}

}  // namespace

std::optional<Cycle> find_p_distinct_zero_sum(const PointSet& a, std::uint64_t budget) {
    const Modulus& m = a.modulus();
    MultiplicityPattern distinct = all_ones(m.p());
    std::vector<const PointSet*> positions(static_cast<std::size_t>(m.p()), &a);
    std::optional<Cycle> witness;
    auto stats = walk_cycles(m, positions, &distinct, budget,
                             [&](std::span<const std::int64_t> entries) {
                                 witness = Cycle(m, std::vector<std::int64_t>(entries.begin(),
                                                                              entries.end()));
                                 return Walk::Stop;
                             });
    if (!witness && !stats.complete)
        throw BudgetExceeded("find_p_distinct_zero_sum: budget exceeded", stats.nodes);
    return witness;
}

bool check_no_p_distinct_zero_sum(const PointSet& a, std::uint64_t budget) {
    return !find_p_distinct_zero_sum(a, budget).has_value();
}

namespace {

void build_partitions(int remaining, int max_part, std::vector<int>& cur,
                      std::vector<MultiplicityPattern>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        build_partitions(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MultiplicityPattern> pattern_list(std::int64_t p) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("pattern_list: p must be a prime >= 3");
    std::vector<MultiplicityPattern> out;
    std::vector<int> cur;
    build_partitions(static_cast<int>(p), static_cast<int>(p), cur, out);
    std::sort(out.begin(), out.end(), [](const MultiplicityPattern& a, const MultiplicityPattern& b) {
        if (a.length() != b.length()) return a.length() > b.length();
        return a.parts > b.parts;  // reverse-lexicographic within equal length
    });
    return out;
}

StripOutcome strip_patterns(const PointSet& a, std::int64_t l_target, std::uint64_t budget) {
    const Modulus& m = a.modulus();
    const std::int64_t p = m.p();
    if (l_target < 1)
        throw std::invalid_argument("strip_patterns: L must be >= 1");
    if (auto w = find_p_distinct_zero_sum(a, budget))
        throw std::invalid_argument(
            "strip_patterns: input contains p distinct elements summing to zero " +
            tuple_text(w->entries));

    PointSet cur = a;
    std::vector<StripStep> trace;
    for (const auto& pattern : pattern_list(p)) {
        CycleCollection found = max_disjoint_cycles(cur, pattern, static_cast<std::size_t>(l_target), budget);
        if (static_cast<std::int64_t>(found.size()) == l_target) {
            trace.push_back(StripStep{pattern, true, {}});
            return StripOutcome{std::move(cur), pattern, std::move(found), std::move(trace)};
        }
        std::vector<std::int64_t> deleted;
        for (const auto& c : found.cycles)
            for (auto e : c.support()) deleted.push_back(e);
        std::sort(deleted.begin(), deleted.end());
        if (static_cast<std::int64_t>(deleted.size()) > p * (l_target - 1))
            throw std::logic_error("strip_patterns: a step deleted more than p(L-1) elements");

        std::vector<std::int64_t> remaining;
        remaining.reserve(cur.size());
        std::set_difference(cur.indices().begin(), cur.indices().end(), deleted.begin(),
                            deleted.end(), std::back_inserter(remaining));
        cur = PointSet(m, std::move(remaining));

        auto recheck = enumerate_cycles(cur, pattern, EnumLimits{budget, 1});
        if (recheck.budget_exhausted)
            throw BudgetExceeded("strip_patterns: budget exceeded while re-checking a stripped pattern",
                                 recheck.nodes);
        if (!recheck.cycles.empty())
            throw std::logic_error("strip_patterns: pattern " + pattern.to_string() +
                                   " still occurs after deleting a maximal collection");
        trace.push_back(StripStep{pattern, false, std::move(deleted)});
    }
    throw StripExhausted("strip_patterns: exhausted all patterns without a size-" +
                             std::to_string(l_target) + " collection",
                         std::move(trace));
}

ColorClasses build_color_classes(const CycleCollection& m, const MultiplicityPattern& lambda) {
    const std::int64_t p = m.mod.p();
    if (lambda.sum() != static_cast<int>(p))
        throw std::invalid_argument("build_color_classes: pattern must be a partition of p");
    if (lambda.parts[0] < 2)
        throw std::invalid_argument(
            "build_color_classes: lambda_1 >= 2 required (the all-distinct pattern admits no "
            "block structure with repeats)");

    for (const auto& c : m.cycles) {
        if (multiplicity_pattern(c) != lambda)
            throw std::invalid_argument("build_color_classes: cycle " + tuple_text(c.entries) +
                                        " does not have pattern " + lambda.to_string());
        if (canonical_block_order(c).first.entries != c.entries)
            throw std::invalid_argument("build_color_classes: cycle " + tuple_text(c.entries) +
                                        " is not in canonical block order");
    }

    std::vector<PointSet> sets;
    sets.reserve(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) {
        std::vector<std::int64_t> xi;
        xi.reserve(m.cycles.size());
        for (const auto& c : m.cycles) xi.push_back(c.entries[static_cast<std::size_t>(i)]);
        sets.emplace_back(m.mod, std::move(xi));
        if (sets.back().size() != m.cycles.size())
            throw std::logic_error("build_color_classes: representatives collide, disjointness "
                                   "of the collection is broken");
    }

    // Positions in different blocks must give disjoint classes.
    std::vector<int> block_of(static_cast<std::size_t>(p));
    {
        int pos = 0, b = 0;
        for (int part : lambda.parts) {
            for (int t = 0; t < part; ++t) block_of[static_cast<std::size_t>(pos++)] = b;
            ++b;
        }
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            if (block_of[i] == block_of[j]) continue;
            for (auto e : sets[i].indices())
                if (sets[j].contains(e))
                    throw std::logic_error(
                        "build_color_classes: classes of different blocks intersect at index " +
                        std::to_string(e));
        }
    return ColorClasses(m.mod, std::move(sets));
}

HypothesisCheck verify_hypothesis(const ColorClasses& sets, std::uint64_t budget) {
    auto witness = find_hypothesis_violation(sets, budget);
    return HypothesisCheck{!witness.has_value(), std::move(witness)};
}

namespace {

struct ProductScan {
    bool hypothesis_ok = true;
    bool length_ok = true;
    std::vector<std::int64_t> witness;
};

// One pass over all cycles of X_1 x ... x X_p checking both x_1 = x_2 and
// that no cycle has more than k_max distinct entries.
ProductScan scan_product_cycles(const ColorClasses& sets, int k_max, std::uint64_t budget) {
    std::vector<const PointSet*> positions;
    positions.reserve(sets.sets.size());
    for (const auto& s : sets.sets) positions.push_back(&s);

    ProductScan out;
    std::vector<std::int64_t> buf;
    auto stats = walk_cycles(
        sets.modulus(), positions, nullptr, budget, [&](std::span<const std::int64_t> entries) {
            if (entries[0] != entries[1]) {
                out.hypothesis_ok = false;
                out.witness.assign(entries.begin(), entries.end());
                return Walk::Stop;
            }
            buf.assign(entries.begin(), entries.end());
            std::sort(buf.begin(), buf.end());
            buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
            if (static_cast<int>(buf.size()) > k_max) {
                out.length_ok = false;
                out.witness.assign(entries.begin(), entries.end());
                return Walk::Stop;
            }
            return Walk::Continue;
        });
    if (!stats.complete)
        throw BudgetExceeded("scan_product_cycles: budget exceeded", stats.nodes);
    return out;
}

struct PairSumScan {
    bool ok = true;
    std::vector<std::int64_t> counts;  // per j = 3..p
    std::string failure;
};

PairSumScan scan_pair_sums(const ColorClasses& sets, std::uint64_t budget) {
    const Modulus& m = sets.modulus();
    PairSumScan out;
    for (int j = 3; j <= static_cast<int>(m.p()); ++j) {
        auto pairs = extendable_pairs(sets, j, budget);
        out.counts.push_back(static_cast<std::int64_t>(pairs.size()));
        if (static_cast<std::int64_t>(pairs.size()) > m.size()) {
            out.ok = false;
            out.failure = "count of " + std::to_string(j) + "-extendable pairs exceeds p^n";
            return out;
        }
        std::unordered_set<std::int64_t> sums;
        for (const auto& [y, z] : pairs) {
            auto s = vec_add(VectorFp::from_index(m, y), VectorFp::from_index(m, z));
            if (!sums.insert(s.index()).second) {
                out.ok = false;
                out.failure = "two " + std::to_string(j) +
                              "-extendable pairs share the sum index " + std::to_string(s.index());
                return out;
            }
        }
    }
    return out;
}

std::int64_t default_l(const PointSet& a) {
    const std::int64_t p = a.modulus().p();
    const auto pp = static_cast<std::int64_t>(partition_count(static_cast<int>(p)));
    const std::int64_t denom = p * pp;
    return (static_cast<std::int64_t>(a.size()) + denom - 1) / denom;
}

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const BudgetExceeded& e) {
        throw BudgetExceeded(std::string("pipeline[") + name + "]: " + e.what(), e.nodes());
    } catch (const StripExhausted& e) {
        throw StripExhausted(std::string("pipeline[") + name + "]: " + e.what(), e.trace);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("pipeline[") + name + "]: " + e.what());
    } catch (const std::logic_error& e) {
        throw std::logic_error(std::string("pipeline[") + name + "]: " + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("pipeline[") + name + "]: " + e.what());
    }
}

bool close_to(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

}  // namespace

Certificate run_theorem_pipeline(const PointSet& a, const PipelineOptions& opts) {
    const Modulus& m = a.modulus();
    if (m.p() < 5)
        throw std::invalid_argument("run_theorem_pipeline: p >= 5 required");
    if (a.empty())
        throw std::invalid_argument("run_theorem_pipeline: input set is empty");

    Certificate cert;
    cert.mod = m;
    cert.input_set = a.indices();

    stage("precondition", [&] {
        if (auto w = find_p_distinct_zero_sum(a, opts.budget))
            throw std::invalid_argument("input contains p distinct elements summing to zero " +
                                        tuple_text(w->entries));
        return 0;
    });
    cert.flags.precondition_ok = true;

    cert.l_value = opts.l_override ? *opts.l_override : default_l(a);
    cert.l_overridden = opts.l_override.has_value();

    StripOutcome stripped =
        stage("strip", [&] { return strip_patterns(a, cert.l_value, opts.budget); });
    cert.trace = stripped.trace;
    cert.lambda = stripped.lambda;
    cert.a_prime = stripped.a_prime.indices();
    for (const auto& c : stripped.m.cycles) cert.m_cycles.push_back(c.entries);
    cert.flags.strip_ok = true;
    cert.flags.collection_ok = true;

    ColorClasses classes =
        stage("classes", [&] { return build_color_classes(stripped.m, stripped.lambda); });
    for (const auto& s : classes.sets) cert.x_classes.push_back(s.indices());
    cert.flags.classes_ok = true;

    ProductScan scan = stage("hypothesis", [&] {
        return scan_product_cycles(classes, stripped.lambda.length(), opts.budget);
    });
    if (!scan.hypothesis_ok)
        throw std::logic_error("pipeline[hypothesis]: cycle " + tuple_text(scan.witness) +
                               " has x_1 != x_2");
    if (!scan.length_ok)
        throw std::logic_error("pipeline[hypothesis]: cycle " + tuple_text(scan.witness) +
                               " has more distinct entries than the pattern length");
    cert.flags.hypothesis_ok = true;
    cert.flags.distinct_count_ok = true;

    PairSumScan pair_scan = stage("pair-sums", [&] { return scan_pair_sums(classes, opts.budget); });
    if (!pair_scan.ok) throw std::logic_error("pipeline[pair-sums]: " + pair_scan.failure);
    cert.extendable_counts = pair_scan.counts;
    cert.flags.pair_sums_ok = true;

    ExtractionResult extracted =
        stage("extract", [&] { return extract_subcollection(stripped.m, classes, opts.budget); });
    for (const auto& c : extracted.mprime.cycles) cert.mprime_cycles.push_back(c.entries);
    cert.caro_wei_floor_value = caro_wei_floor(extracted.graph);
    cert.flags.floor_ok = extracted.floor_ok;
    cert.flags.subcollection_sumfree_ok = extracted.sumfree_ok;

    const double g = stage("numeric", [&] { return gamma_p(m.p(), opts.tol); });
    cert.gamma_value = g;
    cert.collection_bound =
        2.0 * static_cast<double>(m.p()) *
        std::pow(std::sqrt(g * static_cast<double>(m.p())), static_cast<double>(m.n()));
    cert.subcollection_cap = std::pow(g, static_cast<double>(m.n()));
    cert.flags.collection_bound_ok =
        static_cast<double>(cert.l_value) <= cert.collection_bound + 1e-9;
    cert.flags.subcollection_bound_ok =
        static_cast<double>(cert.mprime_cycles.size()) <= cert.subcollection_cap + 1e-9;
    if (!cert.flags.collection_bound_ok)
        throw std::logic_error("pipeline[numeric]: collection size violates the theorem bound");
    if (!cert.flags.subcollection_bound_ok)
        throw std::logic_error("pipeline[numeric]: subcollection exceeds the slice-rank cap");
    cert.flags.numeric_consistent = true;

    cert.valid = cert.flags.all();
    return cert;
}

CertifyReport certify(const Certificate& cert, std::uint64_t budget) {
    CertifyReport report;
    auto fail = [&](const std::string& name) {
        report.valid = false;
        if (report.first_failure.empty()) report.first_failure = name;
    };

    try {
        const Modulus& m = cert.mod;
        const std::int64_t p = m.p();
        if (cert.schema != 1) {
            fail("schema");
            return report;
        }
        if (p < 5) {
            fail("modulus");
            return report;
        }

        PointSet a(m, cert.input_set);
        if (a.size() != cert.input_set.size() || a.empty()) {
            fail("input-set");
            return report;
        }

        // Precondition on the original input.
        if (find_p_distinct_zero_sum(a, budget)) {
            fail("precondition");
            return report;
        }
        report.flags.precondition_ok = true;

        // L and the strip trace.
        if (cert.l_value < 1 || (!cert.l_overridden && cert.l_value != default_l(a))) {
            fail("l-value");
            return report;
        }
        const auto patterns = pattern_list(p);
        if (cert.trace.empty() || cert.trace.size() > patterns.size()) {
            fail("trace-shape");
            return report;
        }
        std::vector<std::int64_t> cur = a.indices();
        for (std::size_t i = 0; i < cert.trace.size(); ++i) {
            const StripStep& step = cert.trace[i];
            const bool last = i + 1 == cert.trace.size();
            if (step.pattern != patterns[i] || step.stopped != last) {
                fail("trace-order");
                return report;
            }
            if (last) {
                if (!step.deleted.empty()) {
                    fail("trace-final-step");
                    return report;
                }
                break;
            }
            if (static_cast<std::int64_t>(step.deleted.size()) > p * (cert.l_value - 1)) {
                fail("trace-deletion-bound");
                return report;
            }
            std::vector<std::int64_t> deleted = step.deleted;
            std::sort(deleted.begin(), deleted.end());
            if (std::adjacent_find(deleted.begin(), deleted.end()) != deleted.end() ||
                !std::includes(cur.begin(), cur.end(), deleted.begin(), deleted.end())) {
                fail("trace-deleted-elements");
                return report;
            }
            std::vector<std::int64_t> next;
            next.reserve(cur.size());
            std::set_difference(cur.begin(), cur.end(), deleted.begin(), deleted.end(),
                                std::back_inserter(next));
            cur = std::move(next);
            auto recheck = enumerate_cycles(PointSet(m, cur), step.pattern, EnumLimits{budget, 1});
            if (recheck.budget_exhausted)
                throw BudgetExceeded("certify: budget exceeded replaying the trace",
                                     recheck.nodes);
            if (!recheck.cycles.empty()) {
                fail("trace-pattern-remains");
                return report;
            }
        }
        if (cur != cert.a_prime) {
            fail("a-prime");
            return report;
        }
        report.flags.strip_ok = true;

        // M: L disjoint lambda-cycles inside A', block order.
        PointSet a_prime(m, cert.a_prime);
        if (cert.lambda != cert.trace.back().pattern ||
            static_cast<std::int64_t>(cert.m_cycles.size()) != cert.l_value) {
            fail("collection-size");
            return report;
        }
        std::vector<Cycle> mcycles;
        for (const auto& entries : cert.m_cycles) {
            Cycle c(m, entries);  // throws unless zero-sum p-tuple
            if (multiplicity_pattern(c) != cert.lambda) {
                fail("collection-pattern");
                return report;
            }
            if (canonical_block_order(c).first.entries != c.entries) {
                fail("collection-block-order");
                return report;
            }
            for (auto e : entries)
                if (!a_prime.contains(e)) {
                    fail("collection-outside-a-prime");
                    return report;
                }
            mcycles.push_back(std::move(c));
        }
        CycleCollection mcol(m, std::move(mcycles));  // throws unless disjoint
        report.flags.collection_ok = true;

        // Color classes match the stored ones.
        ColorClasses classes = build_color_classes(mcol, cert.lambda);
        if (cert.x_classes.size() != static_cast<std::size_t>(p)) {
            fail("classes-count");
            return report;
        }
        for (std::size_t i = 0; i < classes.sets.size(); ++i) {
            PointSet stored(m, cert.x_classes[i]);
            if (!(stored == classes.sets[i])) {
                fail("classes-content");
                return report;
            }
        }
        report.flags.classes_ok = true;

        ProductScan scan = scan_product_cycles(classes, cert.lambda.length(), budget);
        if (!scan.hypothesis_ok) {
            fail("hypothesis");
            return report;
        }
        report.flags.hypothesis_ok = true;
        if (!scan.length_ok) {
            fail("distinct-count");
            return report;
        }
        report.flags.distinct_count_ok = true;

        PairSumScan pair_scan = scan_pair_sums(classes, budget);
        if (!pair_scan.ok || pair_scan.counts != cert.extendable_counts) {
            fail("pair-sums");
            return report;
        }
        report.flags.pair_sums_ok = true;

        // M' is a sub-collection of M, meets the floor, and is sum-free.
        std::vector<Cycle> mprime;
        for (const auto& entries : cert.mprime_cycles) {
            if (std::find(cert.m_cycles.begin(), cert.m_cycles.end(), entries) ==
                cert.m_cycles.end()) {
                fail("subcollection-membership");
                return report;
            }
            mprime.emplace_back(m, entries);
        }
        CycleCollection mprime_col(m, std::move(mprime));
        const unsigned __int128 lhs = static_cast<unsigned __int128>(2) *
                                      static_cast<unsigned __int128>(m.size()) *
                                      static_cast<unsigned __int128>(p) *
                                      static_cast<unsigned __int128>(mprime_col.size());
        const unsigned __int128 rhs = static_cast<unsigned __int128>(mcol.size()) *
                                      static_cast<unsigned __int128>(mcol.size());
        if (lhs < rhs) {
            fail("floor");
            return report;
        }
        report.flags.floor_ok = true;

        SumFreeVerdict verdict =
            verify_colored_sumfree(SumFreeCollection::from_cycles(mprime_col), budget);
        if (!verdict.ok) {
            fail("subcollection-sumfree");
            return report;
        }
        report.flags.subcollection_sumfree_ok = true;

        // Numeric context.
        const double g = gamma_p(p, 1e-12);
        const double bound = 2.0 * static_cast<double>(p) *
                             std::pow(std::sqrt(g * static_cast<double>(p)),
                                      static_cast<double>(m.n()));
        const double cap = std::pow(g, static_cast<double>(m.n()));
        report.flags.collection_bound_ok = static_cast<double>(cert.l_value) <= bound + 1e-9;
        if (!report.flags.collection_bound_ok) {
            fail("collection-bound");
            return report;
        }
        report.flags.subcollection_bound_ok =
            static_cast<double>(cert.mprime_cycles.size()) <= cap + 1e-9;
        if (!report.flags.subcollection_bound_ok) {
            fail("subcollection-bound");
            return report;
        }

        ConflictGraph graph = build_conflict_graph(mcol, classes, budget);
        report.flags.numeric_consistent = close_to(cert.gamma_value, g) &&
                                          close_to(cert.collection_bound, bound) &&
                                          close_to(cert.subcollection_cap, cap) &&
                                          cert.caro_wei_floor_value == caro_wei_floor(graph) &&
                                          cert.valid == true;
        if (!report.flags.numeric_consistent) {
            fail("numeric-consistency");
            return report;
        }
    } catch (const BudgetExceeded&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("shape: ") + e.what());
        return report;
    }

    report.valid = report.flags.all();
    return report;
}

}  // namespace egz
