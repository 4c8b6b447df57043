#include "egzlab/construct.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace egz {

namespace {

std::uint64_t pow_saturating(std::uint64_t base, int exp) {
    unsigned __int128 r = 1;
    const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 63;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r >= cap) return static_cast<std::uint64_t>(cap);
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

MulticoloredInstance::MulticoloredInstance(SumFreeCollection c) : collection(std::move(c)) {
    column_distinct.assign(static_cast<std::size_t>(collection.k), true);
    for (int j = 0; j < collection.k; ++j) {
        std::unordered_set<std::int64_t> seen;
        for (const auto& row : collection.tuples)
            if (!seen.insert(row[static_cast<std::size_t>(j)]).second) {
                column_distinct[static_cast<std::size_t>(j)] = false;
                break;
            }
    }
}

MulticoloredInstance half_support_construction(std::int64_t p, int n) {
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("half_support_construction: p must be a prime >= 5");
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("half_support_construction: n must be even and >= 2");

    Modulus m(p, n);
    const int h = n / 2;
    std::int64_t l_count = 1;
    for (int i = 0; i < h; ++i) l_count *= p;

    const std::int64_t half_stride = l_count;  // p^{n/2}; y indices are t * stride
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(static_cast<std::size_t>(l_count));
    // column multipliers: (y, -y, z, ..., z, -(p-3) z)
    const std::int64_t minus_one = p - 1;
    const std::int64_t minus_p3 = ((-(p - 3)) % p + p) % p;
    for (std::int64_t t = 0; t < l_count; ++t) {
        VectorFp y = VectorFp::from_index(m, t * half_stride);  // first n/2 coords zero
        VectorFp z = VectorFp::from_index(m, t);                // last n/2 coords zero
        std::vector<std::int64_t> row;
        row.reserve(static_cast<std::size_t>(p));
        row.push_back(y.index());
        row.push_back(vec_scale(minus_one, y).index());
        for (std::int64_t j = 3; j <= p - 1; ++j) row.push_back(z.index());
        row.push_back(vec_scale(minus_p3, z).index());
        rows.push_back(std::move(row));
    }
    return MulticoloredInstance(
        SumFreeCollection(m, static_cast<int>(p), std::move(rows)));
}

Theorem7Verdict verify_theorem7_conditions(const MulticoloredInstance& inst,
                                           std::uint64_t budget) {
    const SumFreeCollection& c = inst.collection;
    const Modulus& m = c.mod;
    const std::size_t L = c.size();
    Theorem7Verdict out;
    out.exhaustive = true;

    // Condition 1: per-column distinctness.
    for (int j = 0; j < c.k; ++j) {
        std::unordered_map<std::int64_t, std::size_t> seen;
        for (std::size_t i = 0; i < L; ++i) {
            auto [it, fresh] = seen.emplace(c.tuples[i][static_cast<std::size_t>(j)], i);
            if (!fresh) {
                out.ok = false;
                out.column_failure = true;
                out.column = j;
                out.witness = {it->second, i};
                return out;
            }
        }
    }

    // Condition 2: diagonal tuples sum to zero.
    const auto n = static_cast<std::size_t>(m.n());
    const auto p32 = static_cast<std::uint32_t>(m.p());
    std::vector<std::uint32_t> sum(n), buf(n);
    for (std::size_t i = 0; i < L; ++i) {
        std::fill(sum.begin(), sum.end(), 0u);
        for (auto e : c.tuples[i]) {
            mixed_radix_decode(m.p(), m.n(), e, buf);
            for (std::size_t cc = 0; cc < n; ++cc) {
                sum[cc] += buf[cc];
                if (sum[cc] >= p32) sum[cc] -= p32;
            }
        }
        if (!std::all_of(sum.begin(), sum.end(), [](std::uint32_t v) { return v == 0; })) {
            out.ok = false;
            out.diagonal_failure = true;
            out.witness.assign(static_cast<std::size_t>(c.k), i);
            return out;
        }
    }

    if (L == 0) {
        out.ok = true;
        return out;
    }
    const std::uint64_t total = pow_saturating(L, c.k);
    if (total > budget)
        throw BudgetExceeded("verify_theorem7_conditions: L^k = " + std::to_string(total) +
                                 " exceeds budget",
                             total);

    // Condition 3: no zero-sum over pairwise-distinct indices. DFS over the
    // first k-1 indices (all distinct) with partial sums; the last index is
    // resolved through a value -> rows table on the final column.
    std::unordered_map<std::int64_t, std::vector<std::size_t>> last_rows;
    for (std::size_t i = 0; i < L; ++i)
        last_rows[c.tuples[i][static_cast<std::size_t>(c.k - 1)]].push_back(i);

    // decoded coords per column
    std::vector<std::vector<std::vector<std::uint32_t>>> cols(
        static_cast<std::size_t>(c.k));
    for (int j = 0; j < c.k; ++j) {
        auto& col = cols[static_cast<std::size_t>(j)];
        col.reserve(L);
        for (std::size_t i = 0; i < L; ++i) {
            std::vector<std::uint32_t> cb(n);
            mixed_radix_decode(m.p(), m.n(), c.tuples[i][static_cast<std::size_t>(j)], cb);
            col.push_back(std::move(cb));
        }
    }

    std::vector<bool> used(L, false);
    std::vector<std::size_t> idx(static_cast<std::size_t>(c.k - 1), 0);
    std::vector<std::vector<std::uint32_t>> partial(
        static_cast<std::size_t>(c.k), std::vector<std::uint32_t>(n, 0));

    // Recursive lambda over levels 0..k-2; k <= p stays tiny, recursion is fine.
    auto descend = [&](auto&& self, int level) -> bool {  // returns false on violation
        if (level == c.k - 1) {
            ++out.checked;
            const auto& s = partial[static_cast<std::size_t>(level)];
            std::vector<std::uint32_t> needed(n);
            for (std::size_t cc = 0; cc < n; ++cc)
                needed[cc] = s[cc] == 0 ? 0 : p32 - s[cc];
            auto it = last_rows.find(mixed_radix_encode(m.p(), m.n(), needed));
            if (it == last_rows.end()) return true;
            for (std::size_t last : it->second) {
                if (used[last]) continue;
                out.ok = false;
                out.distinct_failure = true;
                out.witness.assign(idx.begin(), idx.end());
                out.witness.push_back(last);
                return false;
            }
            return true;
        }
        const auto& prev = partial[static_cast<std::size_t>(level)];
        auto& next = partial[static_cast<std::size_t>(level) + 1];
        for (std::size_t i = 0; i < L; ++i) {
            if (used[i]) continue;
            idx[static_cast<std::size_t>(level)] = i;
            used[i] = true;
            const auto& e = cols[static_cast<std::size_t>(level)][i];
            for (std::size_t cc = 0; cc < n; ++cc) {
                next[cc] = prev[cc] + e[cc];
                if (next[cc] >= p32) next[cc] -= p32;
            }
            bool keep = self(self, level + 1);
            used[i] = false;
            if (!keep) return false;
        }
        return true;
    };
    if (descend(descend, 0)) out.ok = true;
    return out;
}

MulticoloredInstance diagonal_instance(const PointSet& a) {
    const Modulus& m = a.modulus();
    if (m.p() < 5)
        throw std::invalid_argument("diagonal_instance: p must be >= 5");
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(a.size());
    for (auto x : a.indices())
        rows.emplace_back(static_cast<std::size_t>(m.p()), x);
    return MulticoloredInstance(
        SumFreeCollection(m, static_cast<int>(m.p()), std::move(rows)));
}

PointSet product_lift(const PointSet& a, const PointSet& b) {
    const Modulus& ma = a.modulus();
    const Modulus& mb = b.modulus();
    if (ma.p() != mb.p())
        throw std::invalid_argument("product_lift: sets live over different primes");
    Modulus m(ma.p(), ma.n() + mb.n());
    std::vector<std::int64_t> indices;
    indices.reserve(a.size() * b.size());
    // index(x, y) = index(x) + index(y) * p^{n_a} under the little-endian
    // canonical encoding, so concatenation needs no coordinate shuffling.
    for (auto y : b.indices())
        for (auto x : a.indices()) indices.push_back(x + y * ma.size());
    return PointSet(m, std::move(indices));
}

}  // namespace egz
