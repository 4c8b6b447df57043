#include "egzlab/search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace egz {

namespace {

// Hard cap on the DP dimension; the searches are desk-scale by design.
constexpr std::int64_t kMaxSearchUniverse = std::int64_t{1} << 20;

}  // namespace

CyclicGroup::CyclicGroup(std::int64_t m, int n) : m_(m), n_(n), size_(1) {
    if (m < 2) throw std::invalid_argument("CyclicGroup: m must be >= 2");
    if (n < 1) throw std::invalid_argument("CyclicGroup: dimension must be >= 1");
    for (int i = 0; i < n; ++i) {
        if (size_ > kMaxUniverse / m)
            throw std::invalid_argument("CyclicGroup: m^n exceeds the 2^40 index range");
        size_ *= m;
    }
}

std::int64_t CyclicGroup::add(std::int64_t a, std::int64_t b) const {
    std::int64_t out = 0, mult = 1;
    for (int i = 0; i < n_; ++i) {
        std::int64_t da = a % m_, db = b % m_;
        a /= m_;
        b /= m_;
        std::int64_t d = da + db;
        if (d >= m_) d -= m_;
        out += d * mult;
        mult *= m_;
    }
    return out;
}

std::int64_t CyclicGroup::scale(std::int64_t c, std::int64_t a) const {
    std::int64_t r = c % m_;
    if (r < 0) r += m_;
    std::int64_t out = 0, mult = 1;
    for (int i = 0; i < n_; ++i) {
        out += ((a % m_) * r % m_) * mult;
        a /= m_;
        mult *= m_;
    }
    return out;
}

std::int64_t CyclicGroup::element_order(std::int64_t a) const {
    std::int64_t g = m_;
    for (int i = 0; i < n_; ++i) {
        g = std::gcd(g, a % m_);
        a /= m_;
    }
    return m_ / g;
}

bool has_zero_sum_subsequence(const CyclicGroup& g, const Multiset& seq, int length) {
    if (length < 1) throw std::invalid_argument("has_zero_sum_subsequence: length must be >= 1");
    if (g.size() > kMaxSearchUniverse)
        throw std::invalid_argument("has_zero_sum_subsequence: group too large for the DP");
    const auto size = static_cast<std::size_t>(g.size());
    // dp[j][x] = some j-element subsequence sums to x
    std::vector<std::vector<char>> dp(static_cast<std::size_t>(length) + 1,
                                      std::vector<char>(size, 0));
    dp[0][0] = 1;
    for (const auto& [elem, count] : seq) {
        if (elem < 0 || elem >= g.size())
            throw std::invalid_argument("has_zero_sum_subsequence: element out of range");
        if (count < 0) throw std::invalid_argument("has_zero_sum_subsequence: negative count");
        const int copies = std::min(count, length);
        for (int t = 0; t < copies; ++t)
            for (int j = length - 1; j >= 0; --j) {
                const auto& row = dp[static_cast<std::size_t>(j)];
                auto& up = dp[static_cast<std::size_t>(j) + 1];
                for (std::size_t x = 0; x < size; ++x)
                    if (row[x] && !up[static_cast<std::size_t>(
                                      g.add(static_cast<std::int64_t>(x), elem))])
                        up[static_cast<std::size_t>(
                            g.add(static_cast<std::int64_t>(x), elem))] = 1;
            }
    }
    return dp[static_cast<std::size_t>(length)][0] != 0;
}

namespace {

struct EgzSearch {
    const CyclicGroup& g;
    std::vector<std::int64_t> elems;  // branch order
    int cap;                          // m - 1
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool truncated = false;
    std::int64_t best = -1;
    std::vector<int> best_counts;
    std::vector<int> counts;

    // dp tables are cloned per extra copy; rows 0..m, columns = group.
    using Table = std::vector<std::vector<char>>;

    bool add_copy(Table& dp, std::int64_t elem) const {  // false if a zero-sum of length m appears
        const int m = static_cast<int>(g.m());
        for (int j = m - 1; j >= 0; --j) {
            const auto& row = dp[static_cast<std::size_t>(j)];
            auto& up = dp[static_cast<std::size_t>(j) + 1];
            for (std::size_t x = 0; x < row.size(); ++x)
                if (row[x]) {
                    auto target = static_cast<std::size_t>(
                        g.add(static_cast<std::int64_t>(x), elem));
                    if (!up[target]) up[target] = 1;
                }
        }
        return dp[static_cast<std::size_t>(m)][0] == 0;
    }

    void record(std::int64_t total) {
        if (total > best) {
            best = total;
            best_counts = counts;
        }
    }

    void descend(std::size_t i, std::int64_t total, const Table& dp) {
        if (truncated) return;
        if (++nodes > budget) {
            truncated = true;
            return;
        }
        record(total);
        if (i == elems.size()) return;
        const std::int64_t slack =
            static_cast<std::int64_t>(elems.size() - i) * static_cast<std::int64_t>(cap);
        if (total + slack <= best) return;

        // q copies of elems[i], largest valid q first; validity is monotone
        // (more copies can only create more subsequences).
        std::vector<Table> tables;
        tables.push_back(dp);
        int q_max = 0;
        for (int t = 1; t <= cap; ++t) {
            Table next = tables.back();
            if (!add_copy(next, elems[i])) break;
            tables.push_back(std::move(next));
            q_max = t;
        }
        for (int q = q_max; q >= 0 && !truncated; --q) {
            counts[i] = q;
            descend(i + 1, total + q, tables[static_cast<std::size_t>(q)]);
        }
        counts[i] = 0;
    }
};

}  // namespace

SearchResult egz_constant(std::int64_t m, int n, std::uint64_t budget) {
    CyclicGroup g(m, n);
    if (g.size() > kMaxSearchUniverse)
        throw std::invalid_argument("egz_constant: group too large for exact search");

    std::vector<std::int64_t> elems(static_cast<std::size_t>(g.size()));
    std::iota(elems.begin(), elems.end(), 0);
    std::sort(elems.begin(), elems.end(), [&](std::int64_t a, std::int64_t b) {
        const auto oa = g.element_order(a), ob = g.element_order(b);
        if (oa != ob) return oa < ob;
        return a < b;
    });

    EgzSearch search{g,
                     std::move(elems),
                     static_cast<int>(m) - 1,
                     budget,
                     0,
                     false,
                     -1,
                     {},
                     std::vector<int>(static_cast<std::size_t>(g.size()), 0)};
    EgzSearch::Table dp(static_cast<std::size_t>(m) + 1,
                        std::vector<char>(static_cast<std::size_t>(g.size()), 0));
    dp[0][0] = 1;
    search.descend(0, 0, dp);

    SearchResult out;
    out.value = search.best + 1;
    out.exhaustive = !search.truncated;
    out.nodes_expanded = search.nodes;
    for (std::size_t i = 0; i < search.best_counts.size(); ++i)
        if (search.best_counts[i] > 0)
            out.witness_multiset.emplace_back(search.elems[i], search.best_counts[i]);
    std::sort(out.witness_multiset.begin(), out.witness_multiset.end());

    // The witness must be zero-sum free of length m and have length value-1.
    std::int64_t total = 0;
    for (const auto& [elem, count] : out.witness_multiset) total += count;
    if (total != out.value - 1 ||
        has_zero_sum_subsequence(g, out.witness_multiset, static_cast<int>(m)))
        throw std::logic_error("egz_constant: witness failed re-verification");
    return out;
}

namespace {

struct MaxSetSearch {
    const CyclicGroup& g;
    int p;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool truncated = false;
    std::int64_t best = -1;
    std::vector<std::int64_t> best_set;
    std::vector<std::int64_t> current;

    using Table = std::vector<std::vector<char>>;  // rows 0..p-1

    // dp rows  0..p-1 over distinct chosen elements
    void include(Table& dp, std::int64_t elem) const {
        for (int j = p - 2; j >= 0; --j) {
            const auto& row = dp[static_cast<std::size_t>(j)];
            auto& up = dp[static_cast<std::size_t>(j) + 1];
            for (std::size_t x = 0; x < row.size(); ++x)
                if (row[x]) {
                    auto target = static_cast<std::size_t>(
                        g.add(static_cast<std::int64_t>(x), elem));
                    if (!up[target]) up[target] = 1;
                }
        }
    }

    void record() {
        if (static_cast<std::int64_t>(current.size()) > best) {
            best = static_cast<std::int64_t>(current.size());
            best_set = current;
        }
    }

    void descend(std::int64_t i, const Table& dp) {
        if (truncated) return;
        if (++nodes > budget) {
            truncated = true;
            return;
        }
        record();
        if (i == g.size()) return;
        if (static_cast<std::int64_t>(current.size()) + (g.size() - i) <= best) return;

        // include i unless some (p-1)-subset of the current set sums to -i
        const auto neg = static_cast<std::size_t>(g.scale(-1, i));
        if (!dp[static_cast<std::size_t>(p) - 1][neg]) {
            Table next = dp;
            include(next, i);
            current.push_back(i);
            descend(i + 1, next);
            current.pop_back();
        }
        if (truncated) return;
        descend(i + 1, dp);
    }
};

bool set_has_p_distinct_zero_sum(const CyclicGroup& g, int p,
                                 const std::vector<std::int64_t>& set) {
    std::vector<std::vector<char>> dp(static_cast<std::size_t>(p) + 1,
                                      std::vector<char>(static_cast<std::size_t>(g.size()), 0));
    dp[0][0] = 1;
    for (auto e : set)
        for (int j = p - 1; j >= 0; --j) {
            const auto& row = dp[static_cast<std::size_t>(j)];
            auto& up = dp[static_cast<std::size_t>(j) + 1];
            for (std::size_t x = 0; x < row.size(); ++x)
                if (row[x])
                    up[static_cast<std::size_t>(g.add(static_cast<std::int64_t>(x), e))] = 1;
        }
    return dp[static_cast<std::size_t>(p)][0] != 0;
}

}  // namespace

SearchResult max_distinct_zero_sum_free(std::int64_t p, int n, MaxSetOptions opts) {
    if (!is_prime(p) || p < 3)
        throw std::invalid_argument("max_distinct_zero_sum_free: p must be a prime >= 3");
    CyclicGroup g(p, n);
    if (g.size() > kMaxSearchUniverse)
        throw std::invalid_argument("max_distinct_zero_sum_free: universe too large");

    MaxSetSearch search{g, static_cast<int>(p), opts.budget, 0, false, -1, {}, {}};
    MaxSetSearch::Table dp(static_cast<std::size_t>(p),
                           std::vector<char>(static_cast<std::size_t>(g.size()), 0));
    dp[0][0] = 1;
    if (opts.translation_symmetry) {
        // Every non-empty valid set is a translate of one containing 0.
        MaxSetSearch::Table next = dp;
        search.include(next, 0);
        search.current.push_back(0);
        search.descend(1, next);
    } else {
        search.descend(0, dp);
    }

    SearchResult out;
    out.value = std::max<std::int64_t>(search.best, 0);
    out.witness_set = search.best_set;
    out.exhaustive = !search.truncated;
    out.nodes_expanded = search.nodes;
    if (set_has_p_distinct_zero_sum(g, static_cast<int>(p), out.witness_set) ||
        static_cast<std::int64_t>(out.witness_set.size()) != out.value)
        throw std::logic_error("max_distinct_zero_sum_free: witness failed re-verification");
    return out;
}

}  // namespace egz
