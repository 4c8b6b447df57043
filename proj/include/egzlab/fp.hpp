#pragma once

// Exact arithmetic, canonical encoding and enumeration for elements and
// subsets of F_p^n. Everything downstream (cycle enumeration, certificates,
// brute-force search) identifies a vector by its canonical index, so the
// encoding here is frozen: little-endian mixed radix, coordinate 0 least
// significant.

#include <cstdint>
#include <span>
#include <vector>

namespace egz {

bool is_prime(std::int64_t v);

// Largest universe we allow; enumeration-based operations assume the whole
// space is at least in principle iterable.
inline constexpr std::int64_t kMaxUniverse = std::int64_t{1} << 40;

class Modulus {
public:
    // p must be an odd prime >= 3, n >= 1, and p^n <= 2^40.
    Modulus(std::int64_t p, int n);

    std::int64_t p() const { return p_; }
    int n() const { return n_; }
    std::int64_t size() const { return size_; }  // p^n

    bool operator==(const Modulus& o) const { return p_ == o.p_ && n_ == o.n_; }
    bool operator!=(const Modulus& o) const { return !(*this == o); }

private:
    std::int64_t p_;
    int n_;
    std::int64_t size_;
};

// Mixed-radix codec shared by F_p^n and the Z_m^n search group.
std::int64_t mixed_radix_encode(std::int64_t base, int n, std::span<const std::uint32_t> coords);
void mixed_radix_decode(std::int64_t base, int n, std::int64_t index, std::span<std::uint32_t> out);

class VectorFp {
public:
    VectorFp(const Modulus& m, std::vector<std::uint32_t> coords);
    static VectorFp from_index(const Modulus& m, std::int64_t index);
    static VectorFp zero(const Modulus& m);

    const Modulus& modulus() const { return mod_; }
    const std::vector<std::uint32_t>& coords() const { return coords_; }
    std::int64_t index() const { return index_; }

    bool operator==(const VectorFp& o) const {
        return mod_ == o.mod_ && index_ == o.index_;
    }
    bool operator!=(const VectorFp& o) const { return !(*this == o); }
    bool operator<(const VectorFp& o) const { return index_ < o.index_; }

private:
    Modulus mod_;
    std::vector<std::uint32_t> coords_;
    std::int64_t index_;
};

VectorFp vec_add(const VectorFp& a, const VectorFp& b);
VectorFp vec_scale(std::int64_t c, const VectorFp& a);
VectorFp vec_neg(const VectorFp& a);

// A subset of F_p^n, stored as strictly ascending canonical indices.
// Construction deduplicates and sorts, so it is idempotent and insensitive
// to input order.
class PointSet {
public:
    PointSet(const Modulus& m, std::vector<std::int64_t> indices);
    PointSet(const Modulus& m, const std::vector<VectorFp>& elements);

    const Modulus& modulus() const { return mod_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    const std::vector<std::int64_t>& indices() const { return indices_; }
    VectorFp element(std::size_t i) const;
    bool contains(std::int64_t index) const;

    bool operator==(const PointSet& o) const {
        return mod_ == o.mod_ && indices_ == o.indices_;
    }

private:
    Modulus mod_;
    std::vector<std::int64_t> indices_;
};

}  // namespace egz
