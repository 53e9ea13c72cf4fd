#include "doctest.h"
#include "goss/error.hpp"
#include "goss/log_algebraicity.hpp"
#include "reference_displays.hpp"

using namespace goss;

namespace {

const DrinfeldModule& hayes() { return DrinfeldModule::get(Ring::a1()); }
const DrinfeldModule& carlitz3() { return DrinfeldModule::get(Ring::a0(3)); }

SpecialPolynomial through(const DrinfeldModule& rho, std::uint64_t m, int bound) {
    SpecialPolyOptions o;
    o.z_bound = bound;
    return special_poly(rho, m, o);
}

XPoly at_z_one(const SpecialPolynomial& S) {
    XPoly acc(S.module->ring());
    for (const auto& [n, P] : S.entries) acc += P;
    return acc;
}

}  // namespace

TEST_CASE("harmonic coefficients from direct fraction sums") {
    const Ring& A = Ring::a0(3);
    const XFrac c0 = harmonic_coeff(carlitz3(), 1, 0);
    CHECK(c0.is_integral());
    CHECK(c0.num == XPoly::monomial(RingElem::from_int(A, 1), 1));
    CHECK(harmonic_coeff(hayes(), 1, 0).num == XPoly::monomial(RingElem::from_int(Ring::a1(), 1), 1));

    // m = 0, d = 1: 1/t + 1/(t+1) + 1/(t+2)
    FractionElem direct(A);
    for (const char* a : {"t", "t+1", "t+2"}) direct = direct + FractionElem(RingElem::parse(A, a)).inverse();
    const XFrac c1 = harmonic_coeff(carlitz3(), 0, 1);
    REQUIRE(c1.num.terms().size() == 1);
    CHECK(FractionElem(c1.num.coeff(0), c1.den) == direct);
    CHECK(c1.den == RingElem::parse(A, "t^3-t").p());

    // m = 1, d = 1 over A1: the three monics of degree 2 are t, t+1, t-1
    const Ring& R = Ring::a1();
    FractionElem lin(R), cubic(R);
    for (const auto& a : monic_elements(R, 2)) {
        lin = lin + FractionElem(a) / FractionElem(a);
        cubic = cubic + FractionElem(hayes().rho(a).coeff(1)) / FractionElem(a);
    }
    const XFrac h = harmonic_coeff(hayes(), 1, 2);
    CHECK(FractionElem(h.num.coeff(1), h.den) == lin);
    CHECK(FractionElem(h.num.coeff(3), h.den) == cubic);
}

TEST_CASE("reference tables") {
    const SpecialPolynomial s10 = special_poly(carlitz3(), 1);
    CHECK(s10.to_string() == "x*z");
    CHECK(s10.stabilized());

    const char* expected[] = {reference::kS0, reference::kS1, reference::kS2};
    for (std::uint64_t m = 0; m < 3; ++m) {
        const SpecialPolynomial S = special_poly(hayes(), m);
        CAPTURE(m);
        CHECK(S.stabilized());
        CHECK(S.entries == parse_special_display(hayes(), expected[m]));
        CHECK(S.to_string() == expected[m]);
    }

    const SpecialPolynomial s4 = through(hayes(), 4, reference::kS4KnownThrough);
    CHECK(s4.entries == parse_special_display(hayes(), reference::kS4Partial));
}

TEST_CASE("display round trip and parser errors") {
    const auto parsed = parse_special_display(hayes(), "(e^4+e^2)*x^6*z^9 - x z + 2 e x^3 z^3");
    CHECK(parsed.size() == 3);
    CHECK(display_coeff(parsed.at(2).coeff(6)) == "e^4+e^2");
    CHECK(display_coeff(parsed.at(0).coeff(1)) == "-1");
    CHECK_THROWS_AS(parse_special_display(hayes(), "x*z^2"), ParseError);
    CHECK_THROWS_AS(parse_special_display(hayes(), "x*(z"), ParseError);
    CHECK_THROWS_AS(parse_special_display(carlitz3(), "e*z"), ParseError);
    CHECK(as_eta_polynomial(RingElem::theta(Ring::a1())) == std::nullopt);
}

TEST_CASE("integrality for the Carlitz module") {
    for (std::uint64_t m = 0; m <= 10; ++m) {
        CAPTURE(m);
        const SpecialPolynomial S = special_poly(carlitz3(), m);
        CHECK(S.stabilized());
        for (const auto& [n, P] : S.entries) CHECK(!P.is_zero());
    }
    // q = 4 exercises a non-prime base field
    const SpecialPolynomial S = special_poly(DrinfeldModule::get(Ring::a0(4)), 5);
    CHECK(S.stabilized());
}

TEST_CASE("integrality for the Hayes module") {
    for (std::uint64_t m = 0; m <= 6; ++m) {
        CAPTURE(m);
        CHECK_NOTHROW(through(hayes(), m, default_z_bound(hayes(), m)));
    }
}

TEST_CASE("odd m vanish at z = 1") {
    const SpecialPolynomial S3 = special_poly(hayes(), 3);
    REQUIRE(S3.stabilized());
    CHECK(at_z_one(S3).is_zero());
    // even m does not
    CHECK(!at_z_one(special_poly(hayes(), 2)).is_zero());
}

TEST_CASE("Laurent backend reproduces the exact coefficients") {
    const DrinfeldModule& rho = hayes();
    const LocalField& L = standard_field(Ring::a1(), 80);
    const std::uint64_t m = 2;
    const SpecialPolynomial S = special_poly(rho, m);
    const auto eL = rho.exp_coeffs(L, static_cast<std::size_t>(S.z_bound) + 1);
    std::vector<XFrac> c;
    for (int d = 0; d <= S.z_bound; ++d) c.push_back(harmonic_coeff(rho, m, d));
    // coefficient of x^k z^(q^n) is sum_{i+d=n} e_i * (coefficient of x^(k/q^i) in c_d)^(q^i)
    for (int n = 0; n <= S.z_bound; ++n) {
        const auto it = S.entries.find(n);
        std::uint64_t qi = 1;
        std::map<std::uint64_t, LaurentElem> acc;
        for (int i = 0; i <= n; ++i, qi *= 3) {
            const XFrac& cd = c[static_cast<std::size_t>(n - i)];
            const LaurentElem den = L.embed(cd.den);
            for (const auto& [k, a] : cd.num.terms()) {
                const LaurentElem v = eL[static_cast<std::size_t>(i)] * (L.embed(a) / den).frobenius(qi);
                auto [slot, fresh] = acc.emplace(k * qi, v);
                if (!fresh) slot->second += v;
            }
        }
        for (const auto& [k, v] : acc) {
            CAPTURE(n);
            CAPTURE(k);
            const RingElem exact = it == S.entries.end() ? RingElem(Ring::a1()) : it->second.coeff(k);
            if (exact.is_zero())
                CHECK(v.is_zero());
            else
                CHECK(residual(v, L.embed(exact)) >= v.relative_precision());
        }
    }
}

TEST_CASE("specialization") {
    const LocalField& L = standard_field(Ring::a1(), 40);
    const SpecialPolynomial S0 = special_poly(hayes(), 0);
    // constant in x: 1 + e + 1
    const LaurentElem v = S0.specialize(L.v());
    CHECK(residual(v, L.eta() - L.one()) >= 40 - 5);
}
