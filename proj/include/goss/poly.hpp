#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "goss/finite_field.hpp"

namespace goss {

/// Dense univariate polynomial over a finite field, coefficients stored low
/// to high with no trailing zeros (the zero polynomial has no coefficients).
class Poly {
public:
    explicit Poly(const FiniteField& f) : f_(&f) {}
    Poly(const FiniteField& f, std::vector<Elem> coeffs);

    static Poly constant(const FiniteField& f, Elem c);
    static Poly monomial(const FiniteField& f, Elem c, std::size_t n);
    /// theta^n - theta
    static Poly frobenius_minus_identity(const FiniteField& f, std::uint64_t n);

    const FiniteField& field() const { return *f_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(Elem c) const;
    Poly shifted(std::size_t n) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const;  ///< exact division, throws otherwise
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    Poly monic() const;
    Poly pow(std::uint64_t n) const;
    Poly powmod(std::uint64_t n, const Poly& m) const;
    /// Raise to the power n = p^j: coefficients c^n, exponents times n.
    Poly frobenius(std::uint64_t n) const;
    Poly derivative() const;
    Elem eval(Elem x) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// Degree first, then coefficients from the top.
    friend bool operator<(const Poly& a, const Poly& b);

    /// "t^2+2*t+1" style, with the given variable name.
    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    const FiniteField* f_;
    std::vector<Elem> c_;
};

Poly gcd(Poly a, Poly b);
Poly lcm(const Poly& a, const Poly& b);
/// Rabin irreducibility test over the coefficient field.
bool is_irreducible(const Poly& f);

}  // namespace goss
