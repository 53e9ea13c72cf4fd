#include <random>
#include <set>

#include "doctest.h"
#include "goss/error.hpp"
#include "goss/finite_field.hpp"
#include "goss/laurent.hpp"
#include "goss/poly.hpp"
#include "goss/ring.hpp"

using namespace goss;

namespace {

RingElem random_elem(const Ring& R, std::mt19937_64& rng, int max_deg) {
    const FiniteField& F = R.base();
    std::uniform_int_distribution<Elem> c(0, F.size() - 1);
    std::uniform_int_distribution<int> d(0, max_deg);
    auto poly = [&](int deg) {
        std::vector<Elem> v(deg + 1);
        for (auto& x : v) x = c(rng);
        return Poly(F, v);
    };
    if (R.id() == RingId::A0) return RingElem(R, poly(d(rng)));
    return RingElem(R, poly(d(rng)), poly(d(rng)));
}

RingElem nonzero(const Ring& R, std::mt19937_64& rng, int max_deg) {
    for (;;) {
        RingElem a = random_elem(R, rng, max_deg);
        if (!a.is_zero()) return a;
    }
}

}  // namespace

TEST_CASE("finite field tables") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 3}, {3, 2}, {5, 2}, {7, 1}, {3, 4}}) {
        const FiniteField& F = FiniteField::get(p, k);
        CHECK(F.size() == static_cast<std::uint32_t>(std::pow(p, k)));
        std::set<Elem> seen;
        Elem x = 1;
        for (std::uint32_t i = 0; i + 1 < F.size(); ++i) {
            seen.insert(x);
            x = F.mul(x, F.generator());
        }
        CHECK(x == 1);
        CHECK(seen.size() == F.size() - 1);
        for (Elem a = 1; a < F.size(); ++a) CHECK(F.mul(a, F.inv(a)) == 1);
        std::vector<Elem> mod(F.modulus().begin(), F.modulus().end());
        CHECK(is_irreducible(Poly(FiniteField::get(p, 1), mod)));
    }
}

TEST_CASE("pinned square root of -1 in F9") {
    const FiniteField& F9 = FiniteField::get(3, 2);
    const Elem i = F9.root_of_minus_one(2);
    CHECK(F9.mul(i, i) == F9.from_int(-1));
    CHECK(i == F9.pow(F9.generator(), 2));
    const auto roots = F9.roots(F9.from_int(-1), 2);
    REQUIRE(roots.size() == 2);
    CHECK(roots.front() == i);
}

TEST_CASE("field embeddings are homomorphisms") {
    const FiniteField& F3 = FiniteField::get(3, 1);
    const FiniteField& F9 = FiniteField::get(3, 2);
    const FiniteField& F81 = FiniteField::get(3, 4);
    FieldEmbedding e(F9, F81);
    for (Elem a = 0; a < 9; ++a)
        for (Elem b = 0; b < 9; ++b) {
            CHECK(e(F9.add(a, b)) == F81.add(e(a), e(b)));
            CHECK(e(F9.mul(a, b)) == F81.mul(e(a), e(b)));
        }
    FieldEmbedding f(F3, F9);
    for (Elem a = 0; a < 3; ++a) CHECK(f(a) == a);
    CHECK(e.preimage(e(5)) == 5);
}

TEST_CASE("polynomial arithmetic") {
    const FiniteField& F = FiniteField::get(3, 1);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Elem> c(0, 2);
    auto rnd = [&](int n) {
        std::vector<Elem> v(n);
        for (auto& x : v) x = c(rng);
        return Poly(F, v);
    };
    for (int t = 0; t < 50; ++t) {
        Poly a = rnd(1 + t * 3), b = rnd(1 + t * 2), d = rnd(4) + Poly::monomial(F, 1, 4);
        CHECK((a * b) == (b * a));
        auto [qq, r] = a.divmod(d);
        CHECK(qq * d + r == a);
        CHECK(r.degree() < d.degree());
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
    // Karatsuba path against schoolbook reference
    Poly big1 = rnd(300), big2 = rnd(170);
    std::vector<Elem> ref(big1.coeffs().size() + big2.coeffs().size(), 0);
    for (std::size_t i = 0; i < big1.coeffs().size(); ++i)
        for (std::size_t j = 0; j < big2.coeffs().size(); ++j)
            ref[i + j] = (ref[i + j] + big1.coeffs()[i] * big2.coeffs()[j]) % 3;
    CHECK(big1 * big2 == Poly(F, ref));
    Poly t = Poly::monomial(F, 1, 1);
    CHECK(Poly::frobenius_minus_identity(F, 3) == t.pow(3) - t);
    CHECK(is_irreducible(t * t + Poly::constant(F, 1)));
    CHECK_FALSE(is_irreducible(t * t - Poly::constant(F, 1)));
}

TEST_CASE("monic enumeration counts") {
    const Ring& A0 = Ring::a0(3);
    for (long d = 0; d <= 5; ++d) CHECK(monic_elements(A0, d).size() == static_cast<std::size_t>(std::pow(3, d)));
    const auto lin = monic_elements(A0, 1);
    REQUIRE(lin.size() == 3);
    CHECK(lin[0].to_string() == "t");
    CHECK(lin[1].to_string() == "t+1");
    CHECK(lin[2].to_string() == "t+2");

    const Ring& A1 = Ring::a1();
    const std::vector<std::size_t> expected{1, 0, 3, 9, 27, 81, 243};
    for (long d = 0; d <= 6; ++d) {
        CHECK(monic_elements(A1, d).size() == expected[d]);
        CHECK(monic_count(A1, d) == expected[d]);
        for (const auto& a : monic_elements(A1, d)) {
            CHECK(a.degree() == d);
            CHECK(a.sgn() == 1);
        }
    }
}

TEST_CASE("A1 degree one is empty by brute force over the embedding") {
    // every p + r e with deg p <= 3, deg r <= 2 has pole order != 1
    const Ring& A1 = Ring::a1();
    const LocalField& L = LocalField::get(A1, 1, 1, 30);
    const FiniteField& F = A1.base();
    std::size_t hits = 0;
    for (std::uint32_t code = 1; code < 2187; ++code) {
        std::vector<Elem> pc(4), rc(3);
        std::uint32_t x = code;
        for (auto& c : pc) c = x % 3, x /= 3;
        for (auto& c : rc) c = x % 3, x /= 3;
        RingElem a(A1, Poly(F, pc), Poly(F, rc));
        if (L.embed(a).valuation() == -1) ++hits;
    }
    CHECK(hits == 0);
}

TEST_CASE("sgn and degree agree with the local embedding") {
    std::mt19937_64 rng(11);
    for (const Ring* R : {&Ring::a0(3), &Ring::a1(), &Ring::a0(9)}) {
        const LocalField& L = LocalField::get(*R, 1, 1, 40);
        for (int t = 0; t < 200; ++t) {
            RingElem a = nonzero(*R, rng, 5);
            LaurentElem x = L.embed(a);
            CHECK(x.valuation() == -a.degree());
            CHECK(x.lead() == a.sgn());
        }
    }
    const Ring& A1 = Ring::a1();
    CHECK(RingElem::eta(A1).degree() == 3);
    CHECK(RingElem::eta(A1).sgn() == 1);
    CHECK(RingElem::theta(A1).degree() == 2);
    const Ring& A0 = Ring::a0(3);
    RingElem two_t2 = RingElem::parse(A0, "2*t^2");
    CHECK(two_t2.degree() == 2);
    CHECK(two_t2.sgn() == 2);
    CHECK_THROWS_AS(RingElem(A0).degree(), ZeroElement);
}

TEST_CASE("ring axioms, multiplicativity of sgn and additivity of degree") {
    std::mt19937_64 rng(13);
    for (const Ring* R : {&Ring::a0(3), &Ring::a1()}) {
        for (int t = 0; t < 1000; ++t) {
            RingElem a = nonzero(*R, rng, 6), b = nonzero(*R, rng, 6), c = random_elem(*R, rng, 4);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b).degree() == a.degree() + b.degree());
            CHECK((a * b).sgn() == R->base().mul(a.sgn(), b.sgn()));
        }
    }
    const Ring& A1 = Ring::a1();
    RingElem e = RingElem::eta(A1), t = RingElem::theta(A1);
    CHECK(e * e == t * t * t - t - RingElem::from_int(A1, 1));
}

TEST_CASE("A1 product matches schoolbook followed by eta reduction") {
    std::mt19937_64 rng(17);
    const Ring& A1 = Ring::a1();
    for (int t = 0; t < 300; ++t) {
        RingElem a = random_elem(A1, rng, 5), b = random_elem(A1, rng, 5);
        // (p1 + r1 e)(p2 + r2 e) = p1 p2 + r1 r2 e^2 + (p1 r2 + p2 r1) e
        Poly p = a.p() * b.p() + a.r() * b.r() * A1.eta_square();
        Poly r = a.p() * b.r() + a.r() * b.p();
        CHECK(a * b == RingElem(A1, p, r));
    }
}

TEST_CASE("text format round trip") {
    std::mt19937_64 rng(19);
    for (const Ring* R : {&Ring::a0(3), &Ring::a1()}) {
        for (int t = 0; t < 200; ++t) {
            RingElem a = random_elem(*R, rng, 6);
            CHECK(RingElem::parse(*R, a.to_string()) == a);
            CHECK(RingElem::parse(*R, a.pretty()) == a);
        }
    }
    const Ring& A1 = Ring::a1();
    CHECK(RingElem::parse(A1, "e^9+e^3+e") == RingElem::parse(A1, "eta^9 + eta^3 + eta"));
    CHECK(RingElem::parse(A1, "e^2") == RingElem::parse(A1, "t^3-t-1"));
    CHECK(RingElem::parse(A1, "(t+1) + (t)*e").to_string() == "(t+1) + (t)*e");
    CHECK_THROWS_AS(RingElem::parse(A1, "t +* 2"), ParseError);
}

TEST_CASE("fractions") {
    std::mt19937_64 rng(23);
    for (const Ring* R : {&Ring::a0(3), &Ring::a1()}) {
        for (int t = 0; t < 500; ++t) {
            FractionElem x = FractionElem(nonzero(*R, rng, 4)) / FractionElem(nonzero(*R, rng, 4));
            FractionElem y = FractionElem(nonzero(*R, rng, 4)) / FractionElem(nonzero(*R, rng, 4));
            CHECK((x / y) * (y / x) == FractionElem(RingElem::from_int(*R, 1)));
            CHECK((x + y) - y == x);
        }
    }
    const Ring& A0 = Ring::a0(3);
    FractionElem s(A0);
    for (const auto& a : monic_elements(A0, 1)) s = s + FractionElem(RingElem::from_int(A0, 1)) / FractionElem(a);
    // 1/t + 1/(t+1) + 1/(t+2) = (3t^2 - 1)/(t^3 - t) = -1/(t^3 - t)
    CHECK(s == FractionElem(RingElem::from_int(A0, -1), Poly::frobenius_minus_identity(A0.base(), 3)));
}

TEST_CASE("irreducibles and residue maps") {
    const Ring& A0 = Ring::a0(3);
    CHECK(irreducible_monics(A0, 1).size() == 3);
    const auto deg2 = irreducible_monics(A0, 2);
    CHECK(deg2.size() == 3);
    CHECK(std::count(deg2.begin(), deg2.end(), RingElem::parse(A0, "t^2+1")) == 1);
    const Ring& A1 = Ring::a1();
    const auto a1deg2 = irreducible_monics(A1, 2);
    CHECK(std::count(a1deg2.begin(), a1deg2.end(), RingElem::theta(A1)) == 1);

    const FiniteField& F9 = FiniteField::get(3, 2);
    const Elem i = F9.root_of_minus_one(2);
    ResidueMap m0(RingElem::theta(A0));
    CHECK(m0.residue_count() == 3);
    CHECK(m0(RingElem::parse(A0, "t^2+2*t+2")) == 2);
    ResidueMap m2(RingElem::parse(A0, "t^2+1"));
    CHECK(&m2.field() == &F9);
    CHECK(m2.theta_image() == i);
    ResidueMap m1(RingElem::theta(A1));
    CHECK(m1.degree() == 2);
    CHECK(m1.theta_image() == 0);
    CHECK(m1.eta_image() == i);
    CHECK_THROWS_AS(ResidueMap(RingElem::parse(A0, "t^2-1")), NotIrreducible);

    std::mt19937_64 rng(29);
    for (const ResidueMap* m : {&m0, &m2, &m1}) {
        const Ring& R = m->ring();
        CHECK(m->representatives().size() == m->residue_count());
        for (std::size_t k = 0; k < m->representatives().size(); ++k)
            CHECK(m->class_index(m->representatives()[k]) == k);
        for (int t = 0; t < 200; ++t) {
            RingElem a = random_elem(R, rng, 5), b = random_elem(R, rng, 5);
            CHECK((*m)(a * b) == m->field().mul((*m)(a), (*m)(b)));
            CHECK((*m)(a + b) == m->field().add((*m)(a), (*m)(b)));
        }
        CHECK((*m)(m->prime()) == 0);
    }
}
