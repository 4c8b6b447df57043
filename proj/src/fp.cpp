#include "egzlab/fp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace egz {

bool is_prime(std::int64_t v) {
    if (v < 2) return false;
    if (v < 4) return true;
    if (v % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

Modulus::Modulus(std::int64_t p, int n) : p_(p), n_(n), size_(1) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("Modulus: p must be a prime >= 3, got " + std::to_string(p));
    if (n < 1)
        throw std::invalid_argument("Modulus: dimension must be >= 1, got " + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        if (size_ > kMaxUniverse / p)
            throw std::invalid_argument("Modulus: p^n exceeds the 2^40 index range");
        size_ *= p;
    }
}

std::int64_t mixed_radix_encode(std::int64_t base, int n, std::span<const std::uint32_t> coords) {
    std::int64_t idx = 0;
    for (int i = n - 1; i >= 0; --i)
        idx = idx * base + coords[static_cast<std::size_t>(i)];
    return idx;
}

void mixed_radix_decode(std::int64_t base, int n, std::int64_t index, std::span<std::uint32_t> out) {
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % base);
        index /= base;
    }
}

VectorFp::VectorFp(const Modulus& m, std::vector<std::uint32_t> coords)
    : mod_(m), coords_(std::move(coords)) {
    if (coords_.size() != static_cast<std::size_t>(m.n()))
        throw std::invalid_argument("VectorFp: expected " + std::to_string(m.n()) +
                                    " coordinates, got " + std::to_string(coords_.size()));
    for (auto c : coords_)
        if (c >= static_cast<std::uint64_t>(m.p()))
            throw std::invalid_argument("VectorFp: coordinate " + std::to_string(c) +
                                        " out of range for p=" + std::to_string(m.p()));
    index_ = mixed_radix_encode(m.p(), m.n(), coords_);
}

VectorFp VectorFp::from_index(const Modulus& m, std::int64_t index) {
    if (index < 0 || index >= m.size())
        throw std::invalid_argument("VectorFp: index " + std::to_string(index) +
                                    " out of range [0, " + std::to_string(m.size()) + ")");
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(m.n()));
    mixed_radix_decode(m.p(), m.n(), index, coords);
    return VectorFp(m, std::move(coords));
}

VectorFp VectorFp::zero(const Modulus& m) {
    return VectorFp(m, std::vector<std::uint32_t>(static_cast<std::size_t>(m.n()), 0));
}

VectorFp vec_add(const VectorFp& a, const VectorFp& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("vec_add: modulus mismatch");
    const auto p = static_cast<std::uint32_t>(a.modulus().p());
    std::vector<std::uint32_t> sum(a.coords());
    for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] += b.coords()[i];
        if (sum[i] >= p) sum[i] -= p;
    }
    return VectorFp(a.modulus(), std::move(sum));
}

VectorFp vec_scale(std::int64_t c, const VectorFp& a) {
    const std::int64_t p = a.modulus().p();
    std::int64_t r = c % p;
    if (r < 0) r += p;
    std::vector<std::uint32_t> out(a.coords().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint32_t>((static_cast<std::int64_t>(a.coords()[i]) * r) % p);
    return VectorFp(a.modulus(), std::move(out));
}

VectorFp vec_neg(const VectorFp& a) {
    return vec_scale(-1, a);
}

PointSet::PointSet(const Modulus& m, std::vector<std::int64_t> indices)
    : mod_(m), indices_(std::move(indices)) {
    for (auto i : indices_)
        if (i < 0 || i >= m.size())
            throw std::invalid_argument("PointSet: element index " + std::to_string(i) +
                                        " out of range");
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

namespace {
std::vector<std::int64_t> to_indices(const Modulus& m, const std::vector<VectorFp>& elements) {
    std::vector<std::int64_t> idx;
    idx.reserve(elements.size());
    for (const auto& e : elements) {
        if (e.modulus() != m)
            throw std::invalid_argument("PointSet: element modulus mismatch");
        idx.push_back(e.index());
    }
    return idx;
}
}  // namespace

PointSet::PointSet(const Modulus& m, const std::vector<VectorFp>& elements)
    : PointSet(m, to_indices(m, elements)) {}

VectorFp PointSet::element(std::size_t i) const {
    return VectorFp::from_index(mod_, indices_.at(i));
}

bool PointSet::contains(std::int64_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

}  // namespace egz
