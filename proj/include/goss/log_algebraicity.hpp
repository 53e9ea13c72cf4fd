#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goss/drinfeld.hpp"
#include "goss/laurent.hpp"
#include "goss/ring.hpp"

namespace goss {

/// Sparse polynomial in x over A: exponent -> nonzero coefficient.
class XPoly {
public:
    explicit XPoly(const Ring& ring) : ring_(&ring) {}

    static XPoly monomial(const RingElem& c, std::uint64_t n);

    const Ring& ring() const { return *ring_; }
    const std::map<std::uint64_t, RingElem>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    /// Coefficient of x^n (zero if absent).
    RingElem coeff(std::uint64_t n) const;

    XPoly& operator+=(const XPoly& o);
    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator-(const XPoly& a, const XPoly& b);
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    XPoly times(const RingElem& c) const;
    XPoly times(const Poly& c) const;
    /// Divide every coefficient by c exactly (throws if inexact).
    XPoly divided(const Poly& c) const;
    /// p(x)^n for n a power of the characteristic.
    XPoly frobenius(std::uint64_t n) const;
    XPoly pow(std::uint64_t n) const;
    /// gcd over all coefficients of their t-content, stopping early at 1;
    /// starts from `start` when given.
    Poly content(const std::optional<Poly>& start = std::nullopt) const;

    LaurentElem eval(const LaurentElem& x, const LocalField& L) const;
    /// "(e^4+e^2)*x^6 - x^2", coefficients as polynomials in e when possible.
    std::string to_string() const;

    friend bool operator==(const XPoly& a, const XPoly& b) { return a.ring_ == b.ring_ && a.t_ == b.t_; }

private:
    void add_term(std::uint64_t n, const RingElem& c);
    const Ring* ring_;
    std::map<std::uint64_t, RingElem> t_;
};

/// num / den with den a monic polynomial in t coprime to the content of num.
struct XFrac {
    XPoly num;
    Poly den;

    explicit XFrac(const Ring& ring);
    XFrac(XPoly num, Poly den);
    bool is_integral() const { return den.is_one(); }
    friend XFrac operator+(const XFrac& a, const XFrac& b);
    XFrac times(const FractionElem& c) const;
    XFrac frobenius(std::uint64_t n) const;
    std::string to_string() const;

private:
    void normalize();
};

/// sum over monic a of degree d of rho_a(x)^m / a, exactly.
XFrac harmonic_coeff(const DrinfeldModule& rho, std::uint64_t m, long d);

/// Default bound on n for the z^(q^n) terms: ceil(log_q max(m,1)) + 2 for A0,
/// ceil(log_q (m+1)) + 4 for A1.
int default_z_bound(const DrinfeldModule& rho, std::uint64_t m);

struct SpecialPolyOptions {
    std::optional<int> z_bound;
    /// Largest monic-block size enumerated; blocks above it end the
    /// computation early with a partial result.
    std::uint64_t max_block = 6561;
    /// Without an explicit z_bound, the default bound is raised by one at a
    /// time while the top entry is nonzero, at most this many times.
    int auto_extend = 1;
};

/// S_m(x, z) as n -> P_n(x), the coefficient of z^(q^n).
struct SpecialPolynomial {
    const DrinfeldModule* module = nullptr;
    std::uint64_t m = 0;
    int z_bound = 0;
    /// Entries were computed for n <= complete_through.
    int complete_through = -1;
    bool partial = false;
    std::map<int, XPoly> entries;

    /// Largest n with P_n != 0, or -1.
    int last_nonzero() const;
    /// True when at least one computed n above the last nonzero entry exists
    /// and all such entries vanish.
    bool stabilized() const;
    /// Display text, e.g. "x*z + e*x^3*z^3 - e*x^3*z^9 + x^9*z^9 - x^9*z^27".
    std::string to_string() const;
    /// S_m(x0, 1) in the field of x0.
    LaurentElem specialize(const LaurentElem& x0) const;
};

/// Throws IntegralityViolation if some coefficient keeps a denominator.
SpecialPolynomial special_poly(const DrinfeldModule& rho, std::uint64_t m, const SpecialPolyOptions& opts = {});

/// Parses "x^2*z + e*x^6*z^3 - (e^4+e^2)*x^6*z^9 + ..." (any expression in
/// t, e, x, z) into n -> P_n; z-exponents must be powers of q.
std::map<int, XPoly> parse_special_display(const DrinfeldModule& rho, const std::string& text);

/// Element of A as a polynomial in e when it lies in F_q[e]: "e^4+e^2".
std::optional<std::string> as_eta_polynomial(const RingElem& a);
/// as_eta_polynomial when possible, otherwise RingElem::pretty().
std::string display_coeff(const RingElem& a);

}  // namespace goss
