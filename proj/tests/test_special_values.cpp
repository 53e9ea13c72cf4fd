#include <random>

#include "doctest.h"
#include "goss/error.hpp"
#include "goss/special_values.hpp"

using namespace goss;

namespace {

constexpr long kN = 80;

const Ring& A0() { return Ring::a0(3); }
const DrinfeldModule& carlitz() { return DrinfeldModule::get(A0()); }
const LocalField& field0() { return standard_field(A0(), kN); }

RingElem random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<Elem> c(0, 2);
    std::vector<Elem> v(static_cast<std::size_t>(max_deg) + 1);
    for (auto& x : v) x = c(rng);
    return RingElem(A0(), Poly(A0().base(), v));
}

}  // namespace

TEST_CASE("character values") {
    const FiniteField& F = field0().constants();
    const DirichletCharacter chi(RingElem::theta(A0()), 1, F);
    CHECK(chi(RingElem::parse(A0(), "t+1")) == F.from_int(1));
    CHECK(chi(RingElem::parse(A0(), "t+2")) == F.from_int(2));
    CHECK(chi(RingElem::theta(A0())) == 0);
    CHECK(chi.group_order() == 2);

    const DirichletCharacter psi = DirichletCharacter::parse(A0(), "t^2+1:1", F);
    const Elem i = psi(RingElem::theta(A0()));
    CHECK(F.mul(i, i) == F.from_int(-1));
    CHECK(psi.group_order() == 8);
    CHECK(psi.inverse().exponent() == 7);
    CHECK(DirichletCharacter::parse(A0(), "t^2+1:3", F).label() == "t^2+1:3");

    const DirichletCharacter trivial(RingElem::parse(A0(), "t^2+1"), 0, F);
    CHECK(trivial.is_trivial());
    CHECK(trivial(RingElem::parse(A0(), "t^5+t+2")) == F.one());
    CHECK(trivial(RingElem::parse(A0(), "t^3+t")) == 0);

    CHECK_THROWS_AS(DirichletCharacter::parse(A0(), "t^2+1", F), ParseError);
    CHECK_THROWS_AS(DirichletCharacter::parse(A0(), "t^2+1:x", F), ParseError);
    // F_3 cannot hold the values of a character mod a degree-2 prime
    CHECK_THROWS_AS(DirichletCharacter(RingElem::parse(A0(), "t^2+1"), 1, A0().base()), InsufficientField);
}

TEST_CASE("multiplicativity and orthogonality") {
    const FiniteField& F = field0().constants();
    const RingElem p = RingElem::parse(A0(), "t^2+1");
    std::mt19937_64 rng(404);
    for (std::uint64_t j : {1u, 3u, 6u}) {
        const DirichletCharacter chi(p, j, F);
        int tested = 0;
        while (tested < 500) {
            const RingElem a = random_poly(rng, 4), b = random_poly(rng, 4);
            if (chi(a) == 0 || chi(b) == 0) continue;
            CHECK(chi(a * b) == F.mul(chi(a), chi(b)));
            ++tested;
        }
    }
    for (std::uint64_t j = 0; j < 8; ++j) {
        const DirichletCharacter chi(p, j, F);
        Elem s = 0;
        for (const auto& a : chi.map().representatives()) s = F.add(s, chi(a));
        CHECK(s == (j == 0 ? F.from_int(8) : 0));
    }
    // A1 modulo t: eta maps to a square root of -1
    const LocalField& L1 = standard_field(Ring::a1(), 40);
    const DirichletCharacter chi1(RingElem::theta(Ring::a1()), 1, L1.constants());
    const Elem i1 = chi1(RingElem::eta(Ring::a1()));
    CHECK(L1.constants().mul(i1, i1) == L1.constants().from_int(-1));
    CHECK(chi1(RingElem::parse(Ring::a1(), "t+e")) == i1);
}

TEST_CASE("degree blocks reproduce a direct fraction sum") {
    const LocalField& L = field0();
    const PrimeData& D = PrimeData::get(carlitz(), RingElem::theta(A0()), L);
    LaurentElem lib = L.zero();
    for (long d = 0; d <= 1; ++d)
        for (const auto& x : D.block(d)) lib += x;
    FractionElem direct(RingElem::from_int(A0(), 1));
    for (const char* a : {"t", "t+1", "t+2"}) direct = direct + FractionElem(RingElem::parse(A0(), a)).inverse();
    CHECK(residual(lib, L.embed(direct)) >= kN - 5);
}

TEST_CASE("L-values at the prime t") {
    const LocalField& L = field0();
    const RingElem t = RingElem::theta(A0());
    const DirichletCharacter trivial(t, 0, L.constants());
    const SeriesResult r = goss_l_value(carlitz(), trivial, 1, L);
    CHECK(residual(r.value, (L.one() - L.theta().inverse()) * carlitz().log(L.one())) >= kN - 10);
    CHECK(r.last_increments[0] >= r.value.precision());
    CHECK(r.last_increments[1] >= r.value.precision());
    for (std::uint64_t j = 0; j < 2; ++j) {
        const LaurentElem v = goss_l_value(carlitz(), DirichletCharacter(t, j, L.constants()), 1, L).value;
        CHECK(v.valuation() == 0);
        CHECK(v.lead() == L.constants().one());
    }
    CHECK_THROWS_AS(goss_l_value(carlitz(), DirichletCharacter(t, 1, A0().base()), 1, L), FieldMismatch);
    CHECK_THROWS(goss_l_value(carlitz(), trivial, 0, L));
}

TEST_CASE("lambda_1 is the period over the prime") {
    for (const char* p : {"t", "t^2+1"}) {
        const LocalField& L = field0();
        const RingElem P = RingElem::parse(A0(), p);
        const LaurentElem lam = lambda_value(carlitz(), 1, RingElem::from_int(A0(), 1), P, L).value;
        CHECK(residual(lam, carlitz().period(PeriodMethod::TorsionLog, L) / L.embed(P)) >= kN - 10);
    }
    // m = 0 collapses to the zeta value
    const LocalField& L = field0();
    const RingElem t = RingElem::theta(A0());
    const LaurentElem zeta = lambda_value(carlitz(), 0, RingElem::from_int(A0(), 1), t, L).value;
    const LaurentElem also = lambda_value(carlitz(), 0, t, t, L).value;
    CHECK(residual(zeta, also) >= kN - 10);
    CHECK(zeta.valuation() == 0);
}

TEST_CASE("dual coefficients mod t against the 2x2 closed form") {
    const LocalField& L = field0();
    const RingElem t = RingElem::theta(A0());
    const DualCoeffTable T = dual_coeffs(carlitz(), t, L);
    REQUIRE(T.size() == 2);
    const LaurentElem& x1 = T.nodes[0];
    const LaurentElem& x2 = T.nodes[1];
    CHECK((x1 + x2).is_zero());
    CHECK(residual(x1 * x1, -L.theta()) >= kN - 5);
    // Cramer's rule on [[x1, x1^2], [x2, x2^2]] e = t * unit vector
    const LaurentElem det = x1 * x2 * x2 - x2 * x1 * x1;
    const LaurentElem& th = L.theta();
    const LaurentElem e1[2] = {th * x2 * x2 / det, -(th * x1 * x1) / det};
    const LaurentElem e2[2] = {-(th * x2) / det, th * x1 / det};
    for (std::size_t a = 0; a < 2; ++a) {
        CHECK(residual(T.coeffs[a][0], e1[a]) >= kN - 10);
        CHECK(residual(T.coeffs[a][1], e2[a]) >= kN - 10);
    }
    CHECK(T.relation_residual >= kN - 10);
    CHECK(T.index_of(RingElem::parse(A0(), "t^2+2")) == T.index_of(RingElem::from_int(A0(), 2)));
    CHECK_THROWS(T.index_of(t));
}

TEST_CASE("solve_linear") {
    const LocalField& L = field0();
    const Elem two = L.constants().from_int(2);
    const LaurentElem a = L.theta(), b = L.one(), c = L.v();
    // [[t, 1], [1, v]] x = [t + 2, 1 + 2v] has x = (1, 2)
    const std::vector<LaurentElem> x = solve_linear({{a, b}, {b, c}}, {a + b.scaled(two), b + c.scaled(two)});
    CHECK(residual(x[0], L.one()) >= kN - 5);
    CHECK(residual(x[1], L.constant(two)) >= kN - 5);
    CHECK_THROWS_AS(solve_linear({{a, b}, {a, b}}, {a, b}), SingularSystem);
}

TEST_CASE("partial zeta values over all classes sum to the zeta value") {
    const LocalField& L = field0();
    const RingElem p = RingElem::parse(A0(), "t^2+1");
    const PrimeData& D = PrimeData::get(carlitz(), p, L);
    const LaurentElem zeta = goss_l_value(carlitz(), DirichletCharacter(p, 0, L.constants()), 1, L).value;
    for (const char* b : {"1", "t+2"}) {
        LaurentElem s = L.zero();
        for (const auto& a : D.map().representatives()) {
            if (D.map()(a) == 0) continue;
            s += partial_zeta(carlitz(), a, RingElem::parse(A0(), b), p, L).value;
        }
        CHECK(residual(s, zeta) >= kN - 10);
    }
    CHECK_THROWS(partial_zeta(carlitz(), p, RingElem::from_int(A0(), 1), p, L));
}

TEST_CASE("L-values and lambdas determine each other") {
    const LocalField& L = field0();
    const FiniteField& F = L.constants();
    const RingElem p = RingElem::parse(A0(), "t^2+1");
    const PrimeData& D = PrimeData::get(carlitz(), p, L);
    const DualCoeffTable T = dual_coeffs(carlitz(), p, L);
    std::vector<LaurentElem> lams, Ls;
    for (std::uint64_t m = 1; m <= 8; ++m)
        lams.push_back(lambda_value(carlitz(), m, RingElem::from_int(A0(), 1), p, L).value);
    for (std::uint64_t j = 0; j < 8; ++j)
        Ls.push_back(goss_l_value(carlitz(), DirichletCharacter(p, j, F), 1, L).value);
    for (std::uint64_t j = 0; j < 8; ++j) {
        const LFromLambdas r = l_from_lambdas(DirichletCharacter(p, j, F), T, lams);
        CHECK(residual(r.value, Ls[j]) >= kN - 15);
        CHECK(r.root_numbers.size() == 8);
    }
    for (std::uint64_t m : {1u, 2u, 4u, 6u, 8u}) CHECK(residual(lambda_from_ls(m, D, Ls), lams[m - 1]) >= kN - 15);
}

TEST_CASE("rank sets") {
    CHECK(rank_set(3, 1).members == std::vector<std::uint64_t>{1, 2});
    CHECK(rank_set(3, 1).rank == 1);
    CHECK(rank_set(3, 2).members == std::vector<std::uint64_t>{1, 2, 4, 6, 8});
    CHECK(rank_set(3, 2).rank == 4);
    for (std::uint64_t d = 1; d <= 4; ++d) CHECK(rank_set(2, d).rank == 0);
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 8u, 9u})
        for (std::uint64_t d = 1; d <= 4; ++d) CHECK(rank_set(q, d).rank == rank_formula(q, d));
    CHECK_THROWS(rank_set(6, 1));
    CHECK_THROWS(rank_set(3, 0));
}
