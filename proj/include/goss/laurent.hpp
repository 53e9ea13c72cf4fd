#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goss/finite_field.hpp"
#include "goss/ring.hpp"

namespace goss {

class LaurentElem;

/// Exact power q^(num/den) with den > 0 and the fraction reduced.
struct QPower {
    long num = 0;
    long den = 1;
    friend bool operator==(const QPower& a, const QPower& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const QPower& a, const QPower& b) { return a.num * b.den < b.num * a.den; }
    std::string to_string() const;
};
QPower make_qpower(long num, long den);

/// F_{q^k}((v)) with v^e = u, where u is the uniformizer of the ring at
/// infinity (u = 1/t for A0, u = t/e for A1). `precision` is the number of
/// coefficients kept after the leading one. Interned; elements refer to it by
/// pointer.
class LocalField {
public:
    static const LocalField& get(const Ring& ring, std::uint32_t constant_degree, std::uint32_t e,
                                 long precision);

    const Ring& ring() const { return *ring_; }
    /// The constant field F_{q^k}.
    const FiniteField& constants() const { return *constants_; }
    const FieldEmbedding& base_embedding() const { return emb_; }
    std::uint32_t constant_degree() const { return k_; }
    std::uint32_t ramification() const { return e_; }
    long precision() const { return n_; }
    /// Size of the ring's base field; tau acts as x -> x^q.
    std::uint32_t q() const { return ring_->q(); }

    /// Same field at another precision.
    const LocalField& with_precision(long precision) const;

    LaurentElem zero() const;
    LaurentElem one() const;
    LaurentElem constant(Elem c) const;
    /// c * v^n, kept to relative precision `precision()`.
    LaurentElem monomial(Elem c, long n) const;
    LaurentElem v() const;
    LaurentElem u() const;
    const LaurentElem& theta() const;
    const LaurentElem& eta() const;

    LaurentElem embed(const Poly& a) const;
    LaurentElem embed(const RingElem& a) const;
    LaurentElem embed(const FractionElem& a) const;

    std::string describe() const;

    LocalField(const LocalField&) = delete;
    LocalField& operator=(const LocalField&) = delete;
    ~LocalField();

private:
    LocalField(const Ring& ring, std::uint32_t k, std::uint32_t e, long precision);
    const Ring* ring_;
    const FiniteField* constants_;
    FieldEmbedding emb_;
    std::uint32_t k_;
    std::uint32_t e_;
    long n_;
    LaurentElem* theta_ = nullptr;
    LaurentElem* eta_ = nullptr;
};

/// Truncated Laurent series sum c_i v^(val+i) + O(v^prec). A nonzero element
/// has a nonzero leading coefficient; an element whose known coefficients
/// all vanish is "zero to precision" and has val == prec.
class LaurentElem {
public:
    LaurentElem(const LocalField& field, long val, long prec, std::vector<Elem> coeffs);
    /// O(v^prec)
    static LaurentElem zero_to(const LocalField& field, long prec);

    const LocalField& field() const { return *field_; }
    /// Valuation in v-units; equals precision() for zero-to-precision.
    long valuation() const { return val_; }
    long precision() const { return prec_; }
    long relative_precision() const { return prec_ - val_; }
    bool is_zero() const { return c_.empty(); }
    Elem lead() const { return c_.empty() ? 0 : c_.front(); }
    /// Coefficient of v^n (0 outside the stored window).
    Elem coeff(long n) const;
    const std::vector<Elem>& coeffs() const { return c_; }

    LaurentElem operator-() const;
    friend LaurentElem operator+(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator-(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator*(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator/(const LaurentElem& a, const LaurentElem& b);
    LaurentElem& operator+=(const LaurentElem& o) { return *this = *this + o; }
    LaurentElem& operator-=(const LaurentElem& o) { return *this = *this - o; }
    LaurentElem& operator*=(const LaurentElem& o) { return *this = *this * o; }
    LaurentElem scaled(Elem c) const;
    /// Multiply by v^n.
    LaurentElem shifted(long n) const;
    LaurentElem inverse() const;
    LaurentElem pow(long n) const;
    /// x^n for n a power of the characteristic (exact in characteristic p).
    LaurentElem frobenius(std::uint64_t n) const;
    /// Apply c -> c^n (n a power of p) to every coefficient, v fixed.
    LaurentElem constant_automorphism(std::uint64_t n) const;
    /// Lower the absolute precision to at most prec.
    LaurentElem truncated(long prec) const;

    /// |x| = q^(-val/e). Throws ZeroToPrecision.
    QPower abs_value() const;

    /// "v^-3 + 2*v^-1 + v + O(v^77)"
    std::string to_string(std::size_t max_terms = 0) const;

private:
    void normalize();
    const LocalField* field_;
    long val_;
    long prec_;
    std::vector<Elem> c_;
};

/// Valuation of a - b measured from the smaller valuation of the operands:
/// the number of leading digits on which a and b agree. Zero-to-precision
/// differences count up to their precision.
long residual(const LaurentElem& a, const LaurentElem& b);

/// Polynomial in one variable with Laurent coefficients, low degree first.
using LaurentPoly = std::vector<LaurentElem>;
LaurentElem evaluate(const LaurentPoly& f, const LaurentElem& x);

/// Newton iteration x <- x - f(x)/f'(x) from `seed`. Throws MultipleRoot if
/// f' vanishes to working precision and NoConvergence if the corrections do
/// not shrink.
LaurentElem newton_root(const LaurentPoly& f, const LaurentElem& seed, int max_iterations = 200);

/// n-th root with prescribed leading coefficient (gcd(n, p) = 1).
LaurentElem nth_root(const LaurentElem& x, long n, Elem leading_choice);
/// n-th root whose leading coefficient has the smallest discrete logarithm.
LaurentElem nth_root(const LaurentElem& x, long n);

}  // namespace goss
