#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace goss {

/// An element of a finite field, encoded as the integer sum c_i p^i of its
/// coordinates in the basis 1, y, ..., y^(k-1) of F_p[y]/(modulus).
using Elem = std::uint32_t;

/// The finite field F_{p^k}, realized as F_p[y]/(modulus) with y a primitive
/// element. Instances are interned: `get(p, k)` always returns the same
/// object, so every computation in a process shares one field tower.
class FiniteField {
public:
    static const FiniteField& get(std::uint32_t p, std::uint32_t k);

    /// Field of order q (q must be a prime power).
    static const FiniteField& of_order(std::uint32_t q);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return k_; }
    std::uint32_t size() const { return size_; }
    bool is_prime() const { return k_ == 1; }

    /// Monic defining polynomial over F_p, coefficients low to high.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Elem generator() const { return k_ == 1 ? exp_[1] : p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    /// Image of the integer n under Z -> F_p.
    Elem from_int(long long n) const;

    Elem add(Elem a, Elem b) const {
        if (!add_table_.empty()) return add_table_[a * size_ + b];
        return add_slow(a, b);
    }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, long long n) const;

    /// Discrete logarithm to the base `generator()`; a must be nonzero.
    std::uint32_t log(Elem a) const { return log_[a]; }
    Elem exp(long long n) const;

    /// All n-th roots of a, sorted by discrete logarithm (0 sorts first).
    std::vector<Elem> roots(Elem a, std::uint32_t n) const;

    /// The n-th root of -1 with the smallest discrete logarithm; for n = 2 in
    /// F_9 this is the pinned square root of -1.
    Elem root_of_minus_one(std::uint32_t n) const;

    /// True when a lies in the subfield of order q.
    bool in_subfield(Elem a, std::uint32_t q) const { return pow(a, q) == a; }

    /// Coordinates (length k) of a in the recorded basis.
    std::vector<std::uint32_t> coords(Elem a) const;
    std::string to_string(Elem a) const;
    std::string describe() const;

    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

private:
    FiniteField(std::uint32_t p, std::uint32_t k);
    Elem add_slow(Elem a, Elem b) const;

    std::uint32_t p_;
    std::uint32_t k_;
    std::uint32_t size_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> exp_;            // length 2(size-1)
    std::vector<std::uint32_t> log_;   // log_[0] unused
    std::vector<Elem> neg_;
    std::vector<Elem> add_table_;      // only for small fields
};

/// Embedding of F_q into a larger field F_{q^k} of the same characteristic,
/// fixed by sending the generator y of F_q to the root of its modulus with
/// smallest discrete logarithm.
class FieldEmbedding {
public:
    FieldEmbedding(const FiniteField& small, const FiniteField& big);

    const FiniteField& source() const { return *small_; }
    const FiniteField& target() const { return *big_; }
    Elem operator()(Elem a) const { return image_[a]; }
    /// Inverse image of b, which must lie in the image.
    Elem preimage(Elem b) const;

private:
    const FiniteField* small_;
    const FiniteField* big_;
    std::vector<Elem> image_;
};

bool is_prime(std::uint32_t n);
/// Returns (p, r) with q = p^r, or throws if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q);

}  // namespace goss
