#include "goss/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "goss/drinfeld.hpp"
#include "goss/error.hpp"
#include "goss/log_algebraicity.hpp"
#include "goss/special_values.hpp"

namespace goss {

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.gating; });
}

const Check* VerificationReport::find(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

namespace {

using LE = LaurentElem;

long vanish_or_precision(const LE& x) { return x.is_zero() ? x.precision() : x.valuation(); }

// Relative agreement, except that an identity whose sides vanish to precision
// is measured against `scale`, the least valuation of the summands that cancel.
long agreement(const LE& a, const LE& b, long scale) {
    if (!a.is_zero() && !b.is_zero()) return residual(a, b);
    return vanish_or_precision(a - b) - std::min({scale, vanish_or_precision(a), vanish_or_precision(b)});
}

class Recorder {
public:
    Recorder(VerificationReport& rep) : rep_(rep), required_(rep.options.required()) {}

    void residual_check(std::string id, std::string anchor, long r, std::string note = {}, bool gating = true) {
        Check c{std::move(id), std::move(anchor), r, required_, r >= required_, gating, std::move(note)};
        rep_.checks.push_back(std::move(c));
    }
    void equal(std::string id, std::string anchor, const LE& a, const LE& b, std::string note = {},
               bool gating = true) {
        residual_check(std::move(id), std::move(anchor), residual(a, b), std::move(note), gating);
    }
    void exact(std::string id, std::string anchor, bool ok, std::string note = {}, bool gating = true) {
        rep_.checks.push_back(Check{std::move(id), std::move(anchor), std::nullopt, 0, ok, gating, std::move(note)});
    }
    // Runs f; a library error becomes a failed entry instead of escaping.
    void guarded(const std::string& id, const std::string& anchor, const std::function<void()>& f) {
        try {
            f();
        } catch (const Error& e) {
            rep_.checks.push_back(Check{id, anchor, std::nullopt, required_, false, true,
                                        std::string(e.kind()) + ": " + e.what()});
        }
    }

private:
    VerificationReport& rep_;
    long required_;
};

// A1 entries past the default bound are too costly to compute; their
// contribution at small torsion points is reported alongside the check.
const SpecialPolynomial& cached_special(const DrinfeldModule& rho, std::uint64_t m) {
    static std::mutex mutex;
    static std::map<std::pair<const DrinfeldModule*, std::uint64_t>, std::unique_ptr<SpecialPolynomial>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{&rho, m}];
    if (!slot) {
        SpecialPolyOptions o;
        if (rho.ring().id() == RingId::A1) o.z_bound = default_z_bound(rho, m);
        slot = std::make_unique<SpecialPolynomial>(special_poly(rho, m, o));
    }
    return *slot;
}

struct Evaluated {
    LE value;
    long least_term;
    long top_term;
};

Evaluated evaluate_special(const SpecialPolynomial& S, const LE& x) {
    const LocalField& L = x.field();
    Evaluated out{LE::zero_to(L, L.precision()), L.precision(), L.precision()};
    for (const auto& [n, P] : S.entries) {
        const LE v = P.eval(x, L);
        out.value += v;
        if (!v.is_zero()) out.least_term = std::min(out.least_term, v.valuation());
        out.top_term = vanish_or_precision(v);
    }
    return out;
}

std::string tail_note(const SpecialPolynomial& S, const Evaluated& ev) {
    std::string s = "terms through z^(q^" + std::to_string(S.z_bound) + ")";
    if (!S.stabilized()) s += ", not stabilized; top term valuation " + std::to_string(ev.top_term);
    return s;
}

std::vector<LE> l_values(const DrinfeldModule& rho, const RingElem& prime, const LocalField& L) {
    const PrimeData& D = PrimeData::get(rho, prime, L);
    std::vector<LE> out;
    for (std::size_t j = 0; j < D.unit_count(); ++j)
        out.push_back(goss_l_value(rho, DirichletCharacter(prime, j, L.constants()), 1, L).value);
    return out;
}

void conjugation_checks(Recorder& rec, const std::vector<LE>& Ls) {
    const std::size_t n = Ls.size();
    for (std::size_t j = 1; j < n; ++j)
        rec.equal("conjugate/j=" + std::to_string(j),
                  "conj L(1,chi^" + std::to_string(j) + ") = L(1,chi^" + std::to_string(3 * j % n) + ")",
                  Ls[j].constant_automorphism(3), Ls[3 * j % n]);
}

// ---------------------------------------------------------------- example 1

void example1(Recorder& rec, const VerifyOptions& opts) {
    const Ring& R = Ring::a0(3);
    const DrinfeldModule& rho = DrinfeldModule::get(R);
    const LocalField& L = standard_field(R, opts.working());
    const RingElem P = RingElem::theta(R);
    const PrimeData& D = PrimeData::get(rho, P, L);
    const LE pi = rho.period(PeriodMethod::TorsionLog, L);
    const LE& t = L.theta();
    const LE root = D.point(RingElem::from_int(R, 1));  // sqrt(-t)
    const DirichletCharacter chi(P, 1, L.constants());
    const LE L1 = goss_l_value(rho, chi, 1, L).value;
    const LE L2 = goss_l_value(rho, DirichletCharacter(P, 0, L.constants()), 1, L).value;

    rec.equal("torsion-square", "e(1/t)^2 = -t", root * root, -t);
    rec.guarded("explambda", "exp(sum_a e(a/t)/a) = e(1/t)", [&] {
        const LE lam = lambda_value(rho, 1, RingElem::from_int(R, 1), P, L).value;
        rec.equal("explambda", "exp(sum_a e(a/t)/a) = e(1/t)", rho.exp(lam),
                  evaluate_special(cached_special(rho, 1), root).value);
    });

    long intended = L.precision(), literal = L.precision();
    for (const auto& a : D.map().representatives()) {
        if (D.map()(a) == 0) continue;
        // a and a + t^3 share a class; the shifted one checks the action off the representatives
        for (const RingElem& b : {a, a + RingElem::theta(R).pow(3)}) {
            const LE x = D.point(b);
            intended = std::min(intended, residual(x, root.scaled(chi(b))));
            literal = std::min(literal, residual(rho.apply(b, x), x.scaled(chi(b))));
        }
    }
    rec.residual_check("torsion-character", "e(a/t) = chi(a) e(1/t)", intended);
    rec.residual_check("torsion-action-literal", "rho_a(e(a/t)) = chi(a) e(a/t)", literal,
                       "reported, not gating: follows from the character relation since chi(a)^2 = chi(a^2)", false);

    rec.equal("L-chi", "L(1,chi) = pi0/(t sqrt(-t))", L1, pi / (t * root));
    rec.residual_check("L-chi-scaled", "sqrt(-t) L(1,chi) - pi0/t = 0",
                       residual_from(root * L1 - pi / t, (pi / t).valuation()));
    rec.equal("exp-L-chi", "exp(sqrt(-t) L(1,chi)) = sqrt(-t)", rho.exp(root * L1), root);
    rec.equal("L-trivial", "L(1,chi^2) = (1 - 1/t) log(1)", L2, (L.one() - t.inverse()) * rho.log(L.one()));
}

// ---------------------------------------------------------------- example 2

void example2(Recorder& rec, const VerifyOptions& opts) {
    const Ring& R = Ring::a0(3);
    const DrinfeldModule& rho = DrinfeldModule::get(R);
    const LocalField& L = standard_field(R, opts.working());
    const FiniteField& F = L.constants();
    const RingElem P = RingElem::parse(R, "t^2+1");
    const PrimeData& D = PrimeData::get(rho, P, L);
    const LE pi = rho.period(PeriodMethod::TorsionLog, L);
    const LE& t = L.theta();
    const LE one = L.one();
    const LE p = L.embed(P);
    const LE z1 = D.point(RingElem::from_int(R, 1)), z2 = D.point(RingElem::theta(R));
    const DirichletCharacter chi(P, 1, F);
    const Elem i = chi(RingElem::theta(R));
    const LE I = L.constant(i);
    const LE r = nth_root(p, 2, 1);
    const std::vector<LE> Ls = l_values(rho, P, L);

    rec.exact("abs-zeta1", "|zeta1| = 3^(-1/2)", z1.abs_value() == make_qpower(-1, 2), z1.abs_value().to_string());
    rec.exact("abs-zeta2", "|zeta2| = 3^(1/2)", z2.abs_value() == make_qpower(1, 2), z2.abs_value().to_string());
    rec.guarded("explambda", "exp(sum_a e(a/(t^2+1))/a) = zeta1", [&] {
        const LE lam = lambda_value(rho, 1, RingElem::from_int(R, 1), P, L).value;
        rec.equal("explambda", "exp(sum_a e(a/(t^2+1))/a) = zeta1", rho.exp(lam), z1);
    });

    long plain = L.precision(), shifted = L.precision();
    for (const auto& a : D.map().representatives()) {
        const Elem c1 = chi(a);
        if (c1 == 0) continue;
        const Elem c3 = F.pow(c1, 3);
        const Elem sum = F.add(c1, c3), diff = F.sub(c1, c3), idiff = F.mul(i, diff);
        plain = std::min(plain, residual(D.point(a), z2.scaled(idiff) - z1.scaled(sum)));
        shifted = std::min(shifted, residual(D.point(a * RingElem::theta(R)), -z1.scaled(idiff) - z2.scaled(sum)));
    }
    rec.residual_check("torsion-basis", "e(a/(t^2+1)) = -(chi+chi^3)(a) zeta1 + i (chi-chi^3)(a) zeta2", plain);
    rec.residual_check("torsion-basis-shifted",
                       "e(a t/(t^2+1)) = -i (chi-chi^3)(a) zeta1 - (chi+chi^3)(a) zeta2", shifted);

    rec.equal("chi-chi3-one", "(-zeta1 + i zeta2) L(1,chi) - (zeta1 + i zeta2) L(1,chi^3) = pi0/(t^2+1)",
              (-z1 + I * z2) * Ls[1] - (z1 + I * z2) * Ls[3], pi / p);
    rec.equal("chi-chi3-two", "(-i zeta1 - zeta2) L(1,chi) + (i zeta1 - zeta2) L(1,chi^3) = t pi0/(t^2+1)",
              (-(I * z1) - z2) * Ls[1] + (I * z1 - z2) * Ls[3], t * pi / p);
    rec.equal("L-chi", "L(1,chi) = pi0/((zeta1 - i zeta2)(1 + i t))", Ls[1], pi / ((z1 - I * z2) * (one + I * t)));
    rec.equal("L-chi3", "L(1,chi^3) = pi0/((zeta1 + i zeta2)(1 - i t))", Ls[3],
              pi / ((z1 + I * z2) * (one - I * t)));
    rec.equal("zeta-sum", "zeta1^2 + zeta2^2 = -sqrt(t^2+1)", z1 * z1 + z2 * z2, -r);
    rec.equal("zeta-product", "zeta1 zeta2 (zeta1^2 - zeta2^2) = -sqrt(t^2+1)", z1 * z2 * (z1 * z1 - z2 * z2), -r);

    rec.guarded("L-chi2", "L(1,chi^2) as a combination of log(zeta1^2), log(zeta2^2), log(zeta1^4 - zeta1^6)", [&] {
        const LE a = rho.log(z1 * z1), b = rho.log(z2 * z2), c = rho.log(z1.pow(4) - z1.pow(6));
        const LE zz = z1 * z2, z3 = zz.pow(3);
        const LE rhs = r.inverse() * (-(z3 / p) * a + zz.inverse() * b + (zz / r) * c) +
                       I * (-z3.inverse() * a + (zz / p) * b - (zz * r).inverse() * c);
        rec.equal("L-chi2", "L(1,chi^2) as a combination of log(zeta1^2), log(zeta2^2), log(zeta1^4 - zeta1^6)",
                  Ls[2], rhs);
    });
    rec.equal("L-chi4", "exp(sqrt(t^2+1) L(1,chi^4)) = sqrt(t^2+1)", rho.exp(r * Ls[4]), r);
    rec.equal("L-chi5", "L(1,chi^5) = pi0/((i zeta1 + zeta2) sqrt(t^2+1))", Ls[5], pi / ((I * z1 + z2) * r));
    rec.equal("L-trivial", "L(1,chi^8) = (1 - 1/(t^2+1)) log(1)", Ls[0], (one - p.inverse()) * rho.log(one));
    conjugation_checks(rec, Ls);
}

// ---------------------------------------------------------------- example 3

void example3(Recorder& rec, const VerifyOptions& opts) {
    const Ring& R = Ring::a1();
    const DrinfeldModule& rho = DrinfeldModule::get(R);
    const LocalField& L = standard_field(R, opts.working());
    const FiniteField& F = L.constants();
    const RingElem P = RingElem::theta(R);
    const PrimeData& D = PrimeData::get(rho, P, L);
    const LE pi = rho.period(PeriodMethod::TorsionLog, L);
    const LE& t = L.theta();
    const LE& e = L.eta();
    const LE one = L.one();
    const LE st = nth_root(t, 2, 1);
    const LE x1 = D.point(RingElem::from_int(R, 1)), x2 = D.point(RingElem::eta(R));
    const DirichletCharacter chi(P, 1, F);
    const LE I = L.constant(chi(RingElem::eta(R)));
    const std::vector<LE> Ls = l_values(rho, P, L);

    rec.exact("abs-period", "|pi1| = 3^(-3/2)", pi.abs_value() == make_qpower(-3, 2), pi.abs_value().to_string());
    rec.residual_check("period-torsion", "exp(pi1) = 0", residual_from(rho.exp(pi), pi.valuation()));
    rec.guarded("period-product", "pi1 = i Pi1^(1/8)", [&] {
        const LE prod = rho.period(PeriodMethod::Product, L);
        rec.equal("period-product", "pi1 = i Pi1^(1/8)", prod, pi, "reported, not gating: literal product form",
                  false);
        rec.equal("period-product-reciprocal", "pi1 = i Pi1^(-1/8)", -prod.inverse(), pi,
                  "reported, not gating: the product reproduces the period with the eighth root inverted", false);
    });
    rec.exact("abs-xi1", "|xi1| = 3^(-7/2)", x1.abs_value() == make_qpower(-7, 2), x1.abs_value().to_string());
    rec.exact("abs-xi2", "|xi2| = 3^(3/2)", x2.abs_value() == make_qpower(3, 2), x2.abs_value().to_string());
    rec.equal("xi-product", "xi1 xi2 (xi1^2 - xi2^2) = sqrt(t)", x1 * x2 * (x1 * x1 - x2 * x2), st);
    rec.equal("xi-square-sum", "xi1^2 + xi2^2 = -(t+1) sqrt(t)", x1 * x1 + x2 * x2, -(t + one) * st);
    rec.equal("xi-fourth-sum", "xi1^4 + xi2^4 = e(t-1) sqrt(t)", x1.pow(4) + x2.pow(4), e * (t - one) * st);

    const LE den = (t + one) * t * st, k = e * (t - one);
    rec.equal("L-chi", "L(1,chi) = (-xi1 + e(t-1) xi2 - (xi2 + e(t-1) xi1) i) pi1/((t+1) t sqrt(t))", Ls[1],
              (-x1 + k * x2 - (x2 + k * x1) * I) / den * pi);
    rec.equal("L-chi3", "L(1,chi^3) = (-xi1 + e(t-1) xi2 + (xi2 + e(t-1) xi1) i) pi1/((t+1) t sqrt(t))", Ls[3],
              (-x1 + k * x2 + (x2 + k * x1) * I) / den * pi);
    rec.equal("L-chi5", "L(1,chi^5) = (-i xi1 + xi2)(t+1) pi1/t", Ls[5], (-(I * x1) + x2) * (t + one) / t * pi);
    rec.equal("L-chi7", "L(1,chi^7) = (i xi1 + xi2)(t+1) pi1/t", Ls[7], (I * x1 + x2) * (t + one) / t * pi);
    rec.equal("L-chi4", "exp(sqrt(t) L(1,chi^4)) = t^4 sqrt(t) + (e+1) t sqrt(t) + sqrt(t)", rho.exp(st * Ls[4]),
              t.pow(4) * st + (e + one) * t * st + st);
    rec.equal("L-trivial", "exp(L(1,chi^8)/(1 - 1/t)) = e - 1", rho.exp(Ls[0] / (one - t.inverse())), e - one);

    const LE zz = x1 * x2, A = st / zz;
    const LE s2 = x1 * x1 - (e.pow(4) + e * e - e) * x1.pow(6) + e * x1.pow(12) -
                  (e.pow(9) - e.pow(3) - e - one) * x1.pow(18) + x1.pow(36) + x1.pow(54);
    rec.guarded("S2-argument", "log argument = S_2(xi1, 1)", [&] {
        rec.equal("S2-argument", "log argument = S_2(xi1, 1)", s2,
                  evaluate_special(cached_special(rho, 2), x1).value);
    });
    const LE lhs1 = (A + I * zz) * Ls[2] + (t + one) * st * Ls[4] + (A - I * zz) * Ls[6];
    rec.guarded("L-chi2-chi6", "(sqrt(t)/(xi1 xi2) + i xi1 xi2) L(1,chi^2) + (t+1) sqrt(t) L(1,chi^4) + "
                               "(sqrt(t)/(xi1 xi2) - i xi1 xi2) L(1,chi^6) = log(S_2(xi1, 1))",
                [&] {
                    rec.equal("L-chi2-chi6",
                              "(sqrt(t)/(xi1 xi2) + i xi1 xi2) L(1,chi^2) + (t+1) sqrt(t) L(1,chi^4) + "
                              "(sqrt(t)/(xi1 xi2) - i xi1 xi2) L(1,chi^6) = log(S_2(xi1, 1))",
                              lhs1, rho.log(s2));
                });

    const std::string anchor4 =
        "exp(-((sqrt(t)/(xi1 xi2) - i xi1 xi2)(t+1) sqrt(t) L(1,chi^2) + e(t-1) sqrt(t) L(1,chi^4) + "
        "(sqrt(t)/(xi1 xi2) + i xi1 xi2)(t+1) sqrt(t) L(1,chi^6))) = S_4(xi1, 1)";
    rec.guarded("L-chi2-chi6-S4", anchor4, [&] {
        const LE lhs2 = (A - I * zz) * (t + one) * st * Ls[2] + e * (t - one) * st * Ls[4] +
                        (A + I * zz) * (t + one) * st * Ls[6];
        const SpecialPolynomial& S4 = cached_special(rho, 4);
        const Evaluated s4 = evaluate_special(S4, x1);
        rec.equal("L-chi2-chi6-S4", anchor4, rho.exp(-lhs2), s4.value, tail_note(S4, s4));
        rec.exact("S4-small", "|S_4(xi1, 1)| < |pi1|", s4.value.abs_value() < pi.abs_value(),
                  "reported, not gating: |S_4(xi1, 1)| = " + s4.value.abs_value().to_string(), false);
        rec.guarded("S4-log-branch", "-log(S_4(xi1, 1)) equals the combination", [&] {
            rec.equal("S4-log-branch", "-log(S_4(xi1, 1)) equals the combination", -lhs2, rho.log(s4.value),
                      "reported, not gating", false);
        });
    });
    conjugation_checks(rec, Ls);
}

std::string residue_label(const RingElem& a) { return a.pretty(); }

}  // namespace

VerificationReport verify_example(int example, const VerifyOptions& opts) {
    if (opts.precision < 60) throw Error("InvalidArgument", "verification needs precision >= 60");
    VerificationReport rep;
    rep.options = opts;
    Recorder rec(rep);
    switch (example) {
        case 1:
            rep.title = "Example 1: Carlitz module over F_3[t], prime t";
            example1(rec, opts);
            break;
        case 2:
            rep.title = "Example 2: Carlitz module over F_3[t], prime t^2+1";
            example2(rec, opts);
            break;
        case 3:
            rep.title = "Example 3: Hayes module over A1, prime t";
            example3(rec, opts);
            break;
        default:
            throw Error("InvalidArgument", "examples are numbered 1 to 3");
    }
    return rep;
}

VerificationReport verify_prime(const Ring& ring, const RingElem& prime, const VerifyOptions& opts) {
    if (opts.precision < 60) throw Error("InvalidArgument", "verification needs precision >= 60");
    VerificationReport rep;
    rep.options = opts;
    rep.title = "Identities for " + ring.name() + " at prime " + prime.pretty();
    Recorder rec(rep);
    const DrinfeldModule& rho = DrinfeldModule::get(ring);
    const LocalField& L = standard_field(ring, opts.working());
    const FiniteField& F = L.constants();
    const PrimeData& D = PrimeData::get(rho, prime, L);
    const std::size_t n = D.unit_count();
    const LE p = L.embed(prime);
    const LE pinv = p.inverse();
    const RingElem one = RingElem::from_int(ring, 1);
    const LE pi = rho.period(PeriodMethod::TorsionLog, L);
    const LE x = D.point(one);

    // lambda_m(b/prime) for every class b, m = 1..n
    std::vector<RingElem> units;
    for (const auto& r : D.map().representatives())
        if (D.map()(r) != 0) units.push_back(r);
    std::vector<std::vector<LE>> lam(units.size());
    for (std::size_t b = 0; b < units.size(); ++b)
        for (std::size_t m = 1; m <= n; ++m) lam[b].push_back(lambda_value(rho, m, units[b], prime, L).value);
    const std::size_t unit_index = static_cast<std::size_t>(
        std::find(units.begin(), units.end(), one) - units.begin());
    const std::vector<LE>& lam1 = lam[unit_index];

    rec.equal("lambda1", "lambda_1(1/p) = pi/p", lam1[0], pi * pinv);

    for (std::size_t m = 1; m <= n; ++m) {
        const std::string id = "explambda/m=" + std::to_string(m);
        const std::string anchor = "exp(lambda_" + std::to_string(m) + "(1/p)) = S_" + std::to_string(m) + "(e(1/p), 1)";
        rec.guarded(id, anchor, [&] {
            const SpecialPolynomial& S = cached_special(rho, m);
            const Evaluated ev = evaluate_special(S, x);
            rec.residual_check(id, anchor, agreement(rho.exp(lam1[m - 1]), ev.value, ev.least_term),
                               tail_note(S, ev));
        });
    }

    std::optional<DualCoeffTable> dual;
    rec.guarded("dual-coefficients", "the node matrix (e(a/p)^m) is invertible", [&] {
        dual.emplace(dual_coeffs(rho, prime, L));
        rec.exact("dual-coefficients", "the node matrix (e(a/p)^m) is invertible", true,
                  "determinant valuation " + std::to_string(dual->determinant_valuation));
    });
    if (dual) {
        for (std::size_t a = 0; a < dual->size(); ++a) {
            long worst = L.precision();
            for (std::size_t b = 0; b < dual->size(); ++b) {
                LE s = LE::zero_to(L, L.precision() * 4);
                for (std::size_t m = 0; m < n; ++m)
                    s += dual->coeffs[a][m] * dual->nodes[b].pow(static_cast<long>(m + 1));
                worst = std::min(worst, a == b ? residual(s, p) : residual_from(s, p.valuation()));
            }
            rec.residual_check("estar/a=" + residue_label(dual->residues[a]),
                               "sum_m e*_m(a) e(b/p)^m = p delta_ab for all b", worst);
        }
        for (std::size_t a = 0; a < units.size(); ++a) {
            const std::size_t ka = dual->index_of(units[a]);
            long worst = L.precision();
            for (std::size_t b = 0; b < units.size(); ++b) {
                LE rhs = LE::zero_to(L, L.precision() * 4);
                for (std::size_t m = 0; m < n; ++m) rhs += dual->coeffs[ka][m] * lam[b][m];
                const LE lhs = partial_zeta(rho, units[a], units[b], prime, L).value;
                worst = std::min(worst, residual(lhs, rhs * pinv));
            }
            rec.residual_check("partial-zeta/a=" + residue_label(units[a]),
                               "sum_{b n = a mod p} 1/n = (1/p) sum_m e*_m(a) lambda_m(b/p) for all b", worst);
        }
    }

    std::vector<LE> Ls;
    for (std::size_t j = 0; j < n; ++j) {
        const DirichletCharacter chi(prime, j, F);
        const LE v = goss_l_value(rho, chi, 1, L).value;
        rec.exact("abs-L/j=" + std::to_string(j), "|L(1,chi^" + std::to_string(j) + ")| = 1 with leading coefficient 1",
                  !v.is_zero() && v.valuation() == 0 && v.lead() == F.one());
        Ls.push_back(v);
    }
    if (dual) {
        std::vector<LE> lam_from_l;
        for (std::size_t m = 1; m <= n; ++m) {
            long scale = 0;
            lam_from_l.push_back(lambda_from_ls(m, D, Ls, &scale));
            rec.residual_check("lambda-from-L/m=" + std::to_string(m),
                               "lambda_" + std::to_string(m) + "(1/p) from L(1,chi), orthogonality",
                               agreement(lam_from_l.back(), lam1[m - 1], scale));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const DirichletCharacter chi(prime, j, F);
            rec.equal("L-from-lambda/j=" + std::to_string(j),
                      "L(1,chi^" + std::to_string(j) + ") = sum_m root number * lambda_m(1/p)",
                      l_from_lambdas(chi, *dual, lam1).value, Ls[j]);
            rec.equal("round-trip/j=" + std::to_string(j),
                      "L(1,chi^" + std::to_string(j) + ") through lambdas and back",
                      l_from_lambdas(chi, *dual, lam_from_l).value, Ls[j]);
        }
    }
    return rep;
}

}  // namespace goss
