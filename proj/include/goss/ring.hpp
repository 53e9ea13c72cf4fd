#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "goss/finite_field.hpp"
#include "goss/poly.hpp"

namespace goss {

enum class RingId { A0, A1 };

/// One of the two supported class-number-one coordinate rings:
///   A0 = F_q[t]                          (t stands for theta)
///   A1 = F_3[t, e] / (e^2 - t^3 + t + 1)  (e stands for eta)
/// Interned like FiniteField.
class Ring {
public:
    static const Ring& a0(std::uint32_t q);
    static const Ring& a1();
    static const Ring& get(RingId id, std::uint32_t q = 3);

    RingId id() const { return id_; }
    std::string name() const { return id_ == RingId::A0 ? "A0" : "A1"; }
    const FiniteField& base() const { return *base_; }
    std::uint32_t q() const { return base_->size(); }
    /// e^2 = t^3 - t - 1 in A1.
    const Poly& eta_square() const { return eta_sq_; }

    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

private:
    Ring(RingId id, const FiniteField& base);
    RingId id_;
    const FiniteField* base_;
    Poly eta_sq_;
};

/// Element p(t) + r(t)*e of A in canonical form (r = 0 in A0).
class RingElem {
public:
    explicit RingElem(const Ring& ring);
    RingElem(const Ring& ring, Poly p, Poly r);
    RingElem(const Ring& ring, Poly p);

    static RingElem constant(const Ring& ring, Elem c);
    static RingElem from_int(const Ring& ring, long long n);
    static RingElem theta(const Ring& ring);
    static RingElem eta(const Ring& ring);
    /// Parses the text format ("t^2+2*t+1", "(t+1) + (t)*e", or any
    /// expression in t, e with integer constants) and normalizes it.
    static RingElem parse(const Ring& ring, const std::string& text);

    const Ring& ring() const { return *ring_; }
    const Poly& p() const { return p_; }
    const Poly& r() const { return r_; }
    bool is_zero() const { return p_.is_zero() && r_.is_zero(); }
    bool is_one() const { return p_.is_one() && r_.is_zero(); }
    bool is_constant() const { return p_.is_constant() && r_.is_zero(); }

    /// Pole order at infinity; throws ZeroElement for 0.
    long degree() const;
    /// Leading coefficient of the u-expansion (sgn(u) = 1 normalization).
    Elem sgn() const;
    bool is_monic() const { return !is_zero() && sgn() == 1; }

    RingElem operator-() const;
    RingElem& operator+=(const RingElem& o);
    RingElem& operator-=(const RingElem& o);
    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    RingElem& operator*=(const RingElem& o) { return *this = *this * o; }
    RingElem scaled(Elem c) const;
    RingElem times(const Poly& c) const;
    RingElem pow(std::uint64_t n) const;
    /// Raise to the power n, where n is a power of the characteristic.
    RingElem frobenius(std::uint64_t n) const;

    /// p - r e
    RingElem conj() const;
    /// p^2 - r^2 (t^3 - t - 1); equals p for A0.
    Poly norm() const;
    /// c with a * c = norm(a): conj() in A1, 1 in A0.
    RingElem norm_cofactor() const;

    friend bool operator==(const RingElem& a, const RingElem& b) {
        return a.ring_ == b.ring_ && a.p_ == b.p_ && a.r_ == b.r_;
    }
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }
    friend bool operator<(const RingElem& a, const RingElem& b);

    /// Canonical text: A0 "t^2+2*t+1"; A1 "(p) + (r)*e".
    std::string to_string() const;
    /// Compact text used in displays: drops empty parts, e.g. "e", "t*e".
    std::string pretty() const;

private:
    void reduce_check() const;
    const Ring* ring_;
    Poly p_;
    Poly r_;
};

/// numerator / denominator with an e-free monic denominator and no common
/// factor between the denominator and the content of the numerator.
class FractionElem {
public:
    explicit FractionElem(const Ring& ring);
    FractionElem(RingElem num);
    FractionElem(RingElem num, Poly den);

    const Ring& ring() const { return num_.ring(); }
    const RingElem& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }

    FractionElem operator-() const;
    friend FractionElem operator+(const FractionElem& a, const FractionElem& b);
    friend FractionElem operator-(const FractionElem& a, const FractionElem& b) { return a + (-b); }
    friend FractionElem operator*(const FractionElem& a, const FractionElem& b);
    friend FractionElem operator/(const FractionElem& a, const FractionElem& b);
    FractionElem inverse() const;
    FractionElem frobenius(std::uint64_t n) const;

    friend bool operator==(const FractionElem& a, const FractionElem& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const FractionElem& a, const FractionElem& b) { return !(a == b); }

    std::string to_string() const;

private:
    void normalize();
    RingElem num_;
    Poly den_;
};

/// gcd of the two coordinate polynomials of a (the t-content).
Poly content(const RingElem& a);

/// Monic elements of pole order d, in lexicographic order of coefficient
/// data (the coefficient list from the top, last entry varying fastest).
std::vector<RingElem> monic_elements(const Ring& ring, long d);
/// Every nonzero element of pole order d: sign-major, then monic order.
std::vector<RingElem> elements_of_degree(const Ring& ring, long d);
/// Number of monic elements of pole order d.
std::uint64_t monic_count(const Ring& ring, long d);

bool is_prime_element(const RingElem& a);
/// Monic irreducibles of degree d (A1: generators of prime ideals).
std::vector<RingElem> irreducible_monics(const Ring& ring, long d);

/// Reduction A -> A/(prime) realized inside a target finite field.
class ResidueMap {
public:
    /// Target defaults to the field of order q^deg(prime).
    explicit ResidueMap(const RingElem& prime);
    ResidueMap(const RingElem& prime, const FiniteField& target);

    const RingElem& prime() const { return prime_; }
    const Ring& ring() const { return prime_.ring(); }
    const FiniteField& field() const { return *field_; }
    const FieldEmbedding& base_embedding() const { return emb_; }
    long degree() const { return degree_; }
    std::uint64_t residue_count() const;
    Elem theta_image() const { return theta0_; }
    Elem eta_image() const { return eta0_; }

    Elem operator()(const RingElem& a) const;

    /// Representatives of the residue classes, found by enumerating A by
    /// degree (then sign, then coefficient order); index 0 is the zero class.
    const std::vector<RingElem>& representatives() const { return reps_; }
    /// Index into representatives() of the class of a.
    std::size_t class_index(const RingElem& a) const;
    std::size_t class_index_of_image(Elem image) const { return image_index_.at(image); }

private:
    void build_representatives();
    RingElem prime_;
    const FiniteField* field_;
    FieldEmbedding emb_;
    long degree_;
    Elem theta0_ = 0;
    Elem eta0_ = 0;
    std::vector<RingElem> reps_;
    std::vector<std::size_t> image_index_;
};

}  // namespace goss
