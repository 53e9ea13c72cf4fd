#include "goss/drinfeld.hpp"

#include <algorithm>
#include <numeric>

#include "goss/error.hpp"

namespace goss {

namespace {

constexpr int kMaxSeriesTerms = 64;
constexpr int kMaxNewtonSteps = 400;

std::uint64_t upow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

RingTwisted twisted_from(const Ring& R, const std::vector<std::string>& coeffs) {
    std::vector<RingElem> c;
    for (const auto& s : coeffs) c.push_back(RingElem::parse(R, s));
    return RingTwisted(std::move(c), RingElem(R), R.q());
}

}  // namespace

const LocalField& standard_field(const Ring& ring, long precision) {
    if (ring.id() == RingId::A1) return LocalField::get(ring, 2, 2, precision);
    const std::uint32_t e = std::max<std::uint32_t>(1, ring.q() - 1);
    return LocalField::get(ring, 2, e, precision);
}

long residual_from(const LaurentElem& x, long reference_valuation) {
    return (x.is_zero() ? x.precision() : x.valuation()) - reference_valuation;
}

// ---------------------------------------------------------------- module data

DrinfeldModule::DrinfeldModule(const Ring& ring)
    : ring_(&ring),
      rho_theta_(ring.id() == RingId::A0 ? twisted_from(ring, {"t", "1"})
                                         : twisted_from(ring, {"t", "e^3+e", "1"})) {
    if (ring.id() == RingId::A1) rho_eta_ = twisted_from(ring, {"e", "e^4-e^2", "e^9+e^3+e", "1"});
    exact_e_.emplace_back(RingElem::from_int(ring, 1));
    exact_l_.emplace_back(RingElem::from_int(ring, 1));
}

const DrinfeldModule& DrinfeldModule::get(const Ring& ring) {
    static std::mutex mutex;
    static std::map<const Ring*, std::unique_ptr<DrinfeldModule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[&ring];
    if (!slot) slot.reset(new DrinfeldModule(ring));
    return *slot;
}

std::string DrinfeldModule::name() const {
    return ring_->id() == RingId::A0 ? "carlitz(q=" + std::to_string(q()) + ")" : "hayes(A1)";
}

const RingTwisted& DrinfeldModule::rho_eta() const {
    if (!rho_eta_) throw Unsupported("rho_eta exists only for A1");
    return *rho_eta_;
}

RingTwisted DrinfeldModule::rho(const RingElem& a) const {
    if (&a.ring() != ring_) throw FieldMismatch("element of " + a.ring().name() + " passed to " + name());
    const RingElem zero(*ring_);
    auto horner = [&](const Poly& p) {
        RingTwisted acc(zero, q());
        for (long k = p.degree(); k >= 0; --k) {
            acc = acc * rho_theta_;
            const Elem c = p.coeffs()[k];
            if (c != 0) acc = acc + RingTwisted({RingElem::constant(*ring_, c)}, zero, q());
        }
        return acc;
    };
    RingTwisted out = horner(a.p());
    if (!a.r().is_zero()) out = out + horner(a.r()) * rho_eta();
    return out;
}

LaurentElem DrinfeldModule::apply(const RingElem& a, const LaurentElem& x) const {
    const LocalField& L = x.field();
    const RingTwisted ra = rho(a);
    LaurentElem acc = LaurentElem::zero_to(L, std::numeric_limits<long>::max() / 4);
    LaurentElem xp = x;
    for (std::size_t i = 0; i < ra.coeffs().size(); ++i) {
        if (i > 0) xp = xp.frobenius(q());
        if (!ra.coeffs()[i].is_zero()) acc = acc + L.embed(ra.coeffs()[i]) * xp;
    }
    return acc;
}

// ---------------------------------------------------------------- exact coefficients

std::vector<FractionElem> DrinfeldModule::exp_coeffs(std::size_t count) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto& c = rho_theta_.coeffs();
    const Poly t = Poly::monomial(ring_->base(), 1, 1);
    while (exact_e_.size() < count) {
        const std::size_t i = exact_e_.size();
        FractionElem acc(*ring_);
        for (std::size_t s = 1; s < c.size() && s <= i; ++s)
            acc = acc + FractionElem(c[s]) * exact_e_[i - s].frobenius(upow(q(), s));
        const Poly gap = Poly::frobenius_minus_identity(ring_->base(), upow(q(), i));
        exact_e_.emplace_back(acc.num(), acc.den() * gap);
    }
    return {exact_e_.begin(), exact_e_.begin() + static_cast<long>(count)};
}

std::vector<FractionElem> DrinfeldModule::log_coeffs(std::size_t count) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto& c = rho_theta_.coeffs();
    while (exact_l_.size() < count) {
        const std::size_t i = exact_l_.size();
        FractionElem acc(*ring_);
        for (std::size_t s = 1; s < c.size() && s <= i; ++s)
            acc = acc + exact_l_[i - s] * FractionElem(c[s].frobenius(upow(q(), i - s)));
        const Poly gap = Poly::frobenius_minus_identity(ring_->base(), upow(q(), i));
        exact_l_.emplace_back(-acc.num(), acc.den() * gap);
    }
    return {exact_l_.begin(), exact_l_.begin() + static_cast<long>(count)};
}

// ---------------------------------------------------------------- Laurent backend

DrinfeldModule::LocalCache& DrinfeldModule::cache_for(const LocalField& L) const {
    if (&L.ring() != ring_) throw FieldMismatch(L.describe() + " is not a completion of " + ring_->name());
    auto& slot = local_[&L];
    if (!slot) {
        slot = std::make_unique<LocalCache>();
        slot->rho_theta = rho_theta_.map([&](const RingElem& a) { return L.embed(a); }, L.zero());
        slot->e.push_back(L.one());
        slot->l.push_back(L.one());
    }
    return *slot;
}

LaurentElem DrinfeldModule::theta_power_gap(const LocalField& L, std::size_t i) const {
    return L.theta().frobenius(upow(q(), i)) - L.theta();
}

std::vector<LaurentElem> DrinfeldModule::exp_coeffs(const LocalField& L, std::size_t count) const {
    std::lock_guard<std::mutex> lock(mutex_);
    LocalCache& cache = cache_for(L);
    const auto& c = cache.rho_theta->coeffs();
    while (cache.e.size() < count) {
        const std::size_t i = cache.e.size();
        LaurentElem acc = L.zero();
        bool first = true;
        for (std::size_t s = 1; s < c.size() && s <= i; ++s) {
            LaurentElem term = c[s] * cache.e[i - s].frobenius(upow(q(), s));
            acc = first ? term : acc + term;
            first = false;
        }
        LaurentElem ei = acc / theta_power_gap(L, i);
        if (ei.relative_precision() < 2)
            throw PrecisionExhausted("exp coefficient " + std::to_string(i) + " has no known digits in " +
                                     L.describe());
        cache.e.push_back(std::move(ei));
    }
    return {cache.e.begin(), cache.e.begin() + static_cast<long>(count)};
}

std::vector<LaurentElem> DrinfeldModule::log_coeffs(const LocalField& L, std::size_t count) const {
    std::lock_guard<std::mutex> lock(mutex_);
    LocalCache& cache = cache_for(L);
    const auto& c = cache.rho_theta->coeffs();
    while (cache.l.size() < count) {
        const std::size_t i = cache.l.size();
        LaurentElem acc = L.zero();
        bool first = true;
        for (std::size_t s = 1; s < c.size() && s <= i; ++s) {
            LaurentElem term = cache.l[i - s] * c[s].frobenius(upow(q(), i - s));
            acc = first ? term : acc + term;
            first = false;
        }
        LaurentElem li = -(acc / theta_power_gap(L, i));
        if (li.relative_precision() < 2)
            throw PrecisionExhausted("log coefficient " + std::to_string(i) + " has no known digits in " +
                                     L.describe());
        cache.l.push_back(std::move(li));
    }
    return {cache.l.begin(), cache.l.begin() + static_cast<long>(count)};
}

namespace {

// sum_i c_i z^(q^i); stops once two consecutive terms lie beyond the known
// precision of the partial sum and the term valuations are increasing.
template <class CoeffFn>
LaurentElem frobenius_series(const LaurentElem& z, std::uint32_t q, CoeffFn coeff, const char* what) {
    if (z.is_zero()) return z;
    LaurentElem acc = z;
    LaurentElem zp = z;
    long prev = z.valuation();
    int quiet = 0;
    for (std::size_t i = 1; i < static_cast<std::size_t>(kMaxSeriesTerms); ++i) {
        zp = zp.frobenius(q);
        const LaurentElem term = coeff(i) * zp;
        acc = acc + term;
        const long tv = term.valuation();
        if (tv >= acc.precision() && tv > prev) {
            if (++quiet == 2) return acc;
        } else {
            quiet = 0;
        }
        prev = tv;
    }
    throw NoConvergence(std::string(what) + " series did not reach working precision");
}

}  // namespace

LaurentElem DrinfeldModule::exp(const LaurentElem& z) const {
    const LocalField& L = z.field();
    std::vector<LaurentElem> coeffs = exp_coeffs(L, 8);
    return frobenius_series(z, q(), [&](std::size_t i) -> const LaurentElem& {
        if (i >= coeffs.size()) coeffs = exp_coeffs(L, i + 4);
        return coeffs[i];
    }, "exp");
}

LaurentElem DrinfeldModule::log(const LaurentElem& z) const {
    if (z.is_zero()) return z;
    const QPower r = period_abs();
    const long e = static_cast<long>(z.field().ramification());
    // |z| < |period|  <=>  -val/e < r.num/r.den
    if (-z.valuation() * r.den >= r.num * e)
        throw DivergentInput("log needs |z| < |period| = " + r.to_string() + ", got " + z.abs_value().to_string());
    const LocalField& L = z.field();
    std::vector<LaurentElem> coeffs = log_coeffs(L, 8);
    return frobenius_series(z, q(), [&](std::size_t i) -> const LaurentElem& {
        if (i >= coeffs.size()) coeffs = log_coeffs(L, i + 4);
        return coeffs[i];
    }, "log");
}

// ---------------------------------------------------------------- periods

QPower DrinfeldModule::period_abs() const {
    if (ring_->id() == RingId::A0) return make_qpower(static_cast<long>(q()), static_cast<long>(q()) - 1);
    return make_qpower(-3, 2);
}

Elem DrinfeldModule::period_lead(const LocalField& L) const {
    if (q() == 2) return 1;
    return L.constants().root_of_minus_one(q() - 1);
}

LaurentElem DrinfeldModule::period(PeriodMethod method, const LocalField& L) const {
    const int key = static_cast<int>(method);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        LocalCache& cache = cache_for(L);
        auto it = cache.periods.find(key);
        if (it != cache.periods.end()) return it->second;
    }
    LaurentElem p = method == PeriodMethod::Product ? period_product(L) : period_torsion_log(L);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_for(L).periods.emplace(key, p);
    return p;
}

LaurentElem DrinfeldModule::period_torsion_log(const LocalField& L) const {
    const RingElem t = RingElem::theta(*ring_);
    const auto roots = smallest_torsion_roots(t, L);
    const LaurentElem raw = L.embed(t) * log(roots.front());
    const FiniteField& F = L.constants();
    const Elem unit = F.div(period_lead(L), raw.lead());
    if (!F.in_subfield(unit, q()))
        throw MethodDisagreement("t * log(torsion) has leading coefficient " + F.to_string(raw.lead()) +
                                 ", not an F_q-multiple of the pinned period sign");
    return raw.scaled(unit);
}

LaurentElem DrinfeldModule::period_product(const LocalField& L) const {
    const FiniteField& F = L.constants();
    const LaurentElem& t = L.theta();
    if (ring_->id() == RingId::A0) {
        // t (-t)^(1/(q-1)) prod_{i >= 1} (1 - t^(1 - q^i))^(-1)
        LaurentElem root = q() == 2 ? -t : nth_root(-t, q() - 1, period_lead(L));
        LaurentElem acc = t * root;
        for (std::size_t i = 1; i < 64; ++i) {
            const LaurentElem x = t.pow(1 - static_cast<long>(upow(q(), i)));
            if (x.valuation() >= acc.relative_precision() + 1) return acc;
            acc = acc / (L.one() - x);
        }
        throw NoConvergence("period product did not converge");
    }
    // t^-9 (e^6 + e^4 + e^2) prod_{a monic} [prod_s (1 - s^2/(a^2 t^2))]^2, then
    // sqrt(-1) times the eighth root with sgn 1.
    const LaurentElem& e = L.eta();
    const LaurentElem one = L.one();
    const std::vector<LaurentElem> s2{one, e * e, (e + one) * (e + one), (e - one) * (e - one)};
    LaurentElem acc = t.pow(-9) * (e.pow(6) + e.pow(4) + e.pow(2));
    int quiet = 0;
    for (long d = 0; d <= 16; ++d) {
        const auto monics = monic_elements(*ring_, d);
        if (monics.empty()) continue;
        LaurentElem block = one;
        for (const auto& a : monics) {
            const LaurentElem a2t2 = (L.embed(a) * t).pow(2);
            LaurentElem f = one;
            for (const auto& s : s2) f = f * (one - s / a2t2);
            block = block * f * f;
        }
        acc = acc * block;
        if (residual(block, one) >= acc.relative_precision()) {
            if (++quiet == 2) {
                const Elem i = F.root_of_minus_one(2);
                return nth_root(acc, 8, 1).scaled(i);
            }
        } else {
            quiet = 0;
        }
    }
    throw NoStabilization("A1 period product did not stabilize by degree 16");
}

// ---------------------------------------------------------------- torsion

std::vector<LaurentElem> DrinfeldModule::smallest_torsion_roots(const RingElem& prime, const LocalField& L) const {
    const RingTwisted rp = rho(prime);
    std::vector<LaurentElem> c;
    for (const auto& a : rp.coeffs()) c.push_back(L.embed(a));
    // first Newton polygon segment from the point (1, v(c_0))
    long best_num = 0, best_den = 1;
    bool have = false;
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        const long num = c[0].valuation() - c[k].valuation();
        const long den = static_cast<long>(upow(q(), k)) - 1;
        if (!have || num * best_den > best_num * den) {
            best_num = num;
            best_den = den;
            have = true;
        }
    }
    if (!have) throw Unsupported("rho_prime has no twisted terms");
    if (best_num % best_den != 0)
        throw RamificationNeeded("torsion of " + prime.pretty() + " has valuation " + std::to_string(best_num) +
                                 "/" + std::to_string(best_den) + " in " + L.describe());
    const long nu = best_num / best_den;
    const FiniteField& F = L.constants();
    std::vector<LaurentElem> out;
    for (std::uint32_t lg = 0; lg + 1 < F.size(); ++lg) {
        const Elem tt = F.exp(lg);
        Elem s = 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            const long den = static_cast<long>(upow(q(), k));
            if (c[k].valuation() + den * nu != c[0].valuation() + nu) continue;
            s = F.add(s, F.mul(c[k].lead(), F.pow(tt, den)));
        }
        if (s == 0) out.push_back(refine_torsion_root(*this, prime, L.monomial(tt, nu)));
    }
    if (out.empty())
        throw InsufficientField("no torsion roots of " + prime.pretty() + " with leading term in " + F.describe());
    return out;
}

LaurentElem refine_torsion_root(const DrinfeldModule& rho, const RingElem& prime, const LaurentElem& seed) {
    const LocalField& L = seed.field();
    const RingTwisted rp = rho.rho(prime);
    std::vector<LaurentElem> c;
    for (const auto& a : rp.coeffs()) c.push_back(L.embed(a));
    const LaurentTwisted f(c, L.zero(), rho.q());
    const LaurentElem c0inv = c[0].inverse();
    LaurentElem x = seed;
    long last = std::numeric_limits<long>::min();
    for (int it = 0; it < kMaxNewtonSteps; ++it) {
        const LaurentElem delta = f(x) * c0inv;
        if (delta.is_zero() || delta.valuation() >= x.precision()) return x;
        if (delta.valuation() <= x.valuation() || delta.valuation() <= last)
            throw NoConvergence("torsion Newton step does not contract");
        last = delta.valuation();
        x = x - delta;
    }
    throw NoConvergence("torsion Newton iteration limit reached");
}

TorsionTable torsion_points(const DrinfeldModule& rho, const RingElem& prime, const LocalField& L) {
    ResidueMap map(prime, L.constants());
    LaurentElem period = rho.period(PeriodMethod::TorsionLog, L);
    const LaurentElem scaled = period / L.embed(prime);
    std::vector<LaurentElem> points;
    const auto& reps = map.representatives();
    points.reserve(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k)
        points.push_back(k == 0 ? L.zero() : rho.exp(scaled * L.embed(reps[k])));
    TorsionTable table{prime, std::move(map), std::move(period), std::move(points), 0};
    const LaurentElem& e1 = table.at(RingElem::from_int(prime.ring(), 1));
    long worst = std::numeric_limits<long>::max();
    const long vp = L.embed(prime).valuation();
    for (std::size_t k = 1; k < reps.size(); ++k) {
        const LaurentElem& x = table.points[k];
        worst = std::min(worst, residual_from(rho.apply(prime, x), vp + x.valuation()));
        worst = std::min(worst, residual(x, rho.apply(reps[k], e1)));
        worst = std::min(worst, residual(x, refine_torsion_root(rho, prime, x)));
    }
    table.cross_check = worst;
    return table;
}

}  // namespace goss
