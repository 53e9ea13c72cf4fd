#include "goss/laurent.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "goss/error.hpp"

namespace goss {

// ---------------------------------------------------------------- QPower

QPower make_qpower(long num, long den) {
    if (den == 0) throw Error("InvalidArgument", "zero denominator in exponent");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long g = std::gcd(std::labs(num), den);
    return g > 1 ? QPower{num / g, den / g} : QPower{num, den};
}

std::string QPower::to_string() const {
    std::string s = "q^(" + std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s + ")";
}

// ---------------------------------------------------------------- LocalField

namespace {
using FieldKey = std::tuple<const Ring*, std::uint32_t, std::uint32_t, long>;
}

LocalField::LocalField(const Ring& ring, std::uint32_t k, std::uint32_t e, long precision)
    : ring_(&ring),
      constants_(&FiniteField::get(ring.base().characteristic(), ring.base().degree() * k)),
      emb_(ring.base(), *constants_),
      k_(k),
      e_(e),
      n_(precision) {
    if (e == 0 || k == 0 || precision < 1) throw Error("InvalidArgument", "bad local field parameters");
    if (ring.id() == RingId::A0) {
        theta_ = new LaurentElem(monomial(1, -static_cast<long>(e)));
    } else {
        // e = u^-3 w with w^2 - w^3 + u^4 w + u^6 = 0, w = 1 + O(u^4):
        // the relation e^2 - t^3 + t + 1 = 0 after substituting t = u e.
        const LaurentElem uu = u();
        const LaurentPoly f{uu.pow(6), uu.pow(4), one(), -one()};
        const LaurentElem w = newton_root(f, one());
        eta_ = new LaurentElem(w.shifted(-3 * static_cast<long>(e)));
        theta_ = new LaurentElem(w.shifted(-2 * static_cast<long>(e)));
    }
}

LocalField::~LocalField() {
    delete theta_;
    delete eta_;
}

const LocalField& LocalField::get(const Ring& ring, std::uint32_t constant_degree, std::uint32_t e,
                                  long precision) {
    static std::mutex mutex;
    static std::map<FieldKey, std::unique_ptr<LocalField>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[FieldKey{&ring, constant_degree, e, precision}];
    if (!slot) slot.reset(new LocalField(ring, constant_degree, e, precision));
    return *slot;
}

const LocalField& LocalField::with_precision(long precision) const {
    return get(*ring_, k_, e_, precision);
}

LaurentElem LocalField::zero() const { return LaurentElem::zero_to(*this, n_); }
LaurentElem LocalField::one() const { return monomial(1, 0); }
LaurentElem LocalField::constant(Elem c) const { return monomial(c, 0); }
LaurentElem LocalField::v() const { return monomial(1, 1); }
LaurentElem LocalField::u() const { return monomial(1, e_); }

LaurentElem LocalField::monomial(Elem c, long n) const {
    if (c == 0) return LaurentElem::zero_to(*this, n + n_);
    std::vector<Elem> coeffs(n_, 0);
    coeffs[0] = c;
    return LaurentElem(*this, n, n + n_, std::move(coeffs));
}

const LaurentElem& LocalField::theta() const { return *theta_; }

const LaurentElem& LocalField::eta() const {
    if (!eta_) throw Unsupported("eta exists only in A1");
    return *eta_;
}

LaurentElem LocalField::embed(const Poly& a) const {
    if (a.is_zero()) return zero();
    if (ring_->id() == RingId::A0) {
        const long deg = a.degree();
        const long val = -static_cast<long>(e_) * deg;
        std::vector<Elem> c(n_, 0);
        for (long i = deg; i >= 0; --i) {
            const long pos = (deg - i) * static_cast<long>(e_);
            if (pos >= n_) break;
            c[pos] = emb_(a.coeffs()[i]);
        }
        return LaurentElem(*this, val, val + n_, std::move(c));
    }
    const LaurentElem& t = theta();
    LaurentElem acc = constant(emb_(a.lead()));
    for (long i = a.degree() - 1; i >= 0; --i) {
        acc = acc * t;
        const Elem c = a.coeffs()[i];
        if (c != 0) acc = acc + constant(emb_(c));
    }
    return acc;
}

LaurentElem LocalField::embed(const RingElem& a) const {
    if (&a.ring() != ring_) throw FieldMismatch("element of " + a.ring().name() + " embedded into " + describe());
    if (ring_->id() == RingId::A0 || a.r().is_zero()) return embed(a.p());
    return embed(a.p()) + embed(a.r()) * eta();
}

LaurentElem LocalField::embed(const FractionElem& a) const {
    LaurentElem num = embed(a.num());
    if (a.den().is_one()) return num;
    return num / embed(a.den());
}

std::string LocalField::describe() const {
    std::ostringstream os;
    os << constants_->describe() << "((v)), v";
    if (e_ > 1) os << "^" << e_;
    os << " = u = " << (ring_->id() == RingId::A0 ? "1/t" : "t/e") << ", " << ring_->name()
       << " over F_" << ring_->q() << ", N = " << n_;
    return os.str();
}

// ---------------------------------------------------------------- LaurentElem

LaurentElem::LaurentElem(const LocalField& field, long val, long prec, std::vector<Elem> coeffs)
    : field_(&field), val_(val), prec_(prec), c_(std::move(coeffs)) {
    if (prec_ < val_) prec_ = val_;
    c_.resize(static_cast<std::size_t>(prec_ - val_), 0);
    normalize();
}

LaurentElem LaurentElem::zero_to(const LocalField& field, long prec) {
    return LaurentElem(field, prec, prec, {});
}

void LaurentElem::normalize() {
    std::size_t z = 0;
    while (z < c_.size() && c_[z] == 0) ++z;
    if (z == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    if (z > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(z));
        val_ += static_cast<long>(z);
    }
    const long cap = field_->precision();
    if (static_cast<long>(c_.size()) > cap) {
        c_.resize(cap);
        prec_ = val_ + cap;
    }
}

Elem LaurentElem::coeff(long n) const {
    if (n < val_ || n >= prec_) return 0;
    return c_[static_cast<std::size_t>(n - val_)];
}

LaurentElem LaurentElem::operator-() const {
    LaurentElem r(*this);
    const FiniteField& F = field_->constants();
    for (auto& x : r.c_) x = F.neg(x);
    return r;
}

namespace {

void check_same(const LaurentElem& a, const LaurentElem& b) {
    if (&a.field() != &b.field())
        throw FieldMismatch("operands live in different local fields: " + a.field().describe() + " vs " +
                            b.field().describe());
}

LaurentElem add_impl(const LaurentElem& a, const LaurentElem& b, bool subtract) {
    check_same(a, b);
    const LocalField& L = a.field();
    const FiniteField& F = L.constants();
    const long prec = std::min(a.precision(), b.precision());
    const long low = std::min(a.valuation(), b.valuation());
    if (low >= prec) return LaurentElem::zero_to(L, prec);
    std::vector<Elem> c(static_cast<std::size_t>(prec - low), 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const long pos = a.valuation() + static_cast<long>(i);
        if (pos >= prec) break;
        c[pos - low] = a.coeffs()[i];
    }
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) {
        const long pos = b.valuation() + static_cast<long>(i);
        if (pos >= prec) break;
        const Elem x = b.coeffs()[i];
        c[pos - low] = subtract ? F.sub(c[pos - low], x) : F.add(c[pos - low], x);
    }
    return LaurentElem(L, low, prec, std::move(c));
}

}  // namespace

LaurentElem operator+(const LaurentElem& a, const LaurentElem& b) { return add_impl(a, b, false); }
LaurentElem operator-(const LaurentElem& a, const LaurentElem& b) { return add_impl(a, b, true); }

LaurentElem operator*(const LaurentElem& a, const LaurentElem& b) {
    check_same(a, b);
    const LocalField& L = a.field();
    const long prec = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
    if (a.is_zero() || b.is_zero()) return LaurentElem::zero_to(L, prec);
    const long val = a.val_ + b.val_;
    const std::size_t rel = static_cast<std::size_t>(std::min(prec - val, L.precision()));
    const FiniteField& F = L.constants();
    std::vector<Elem> c(rel, 0);
    if (F.is_prime()) {
        const std::int64_t p = F.characteristic();
        std::vector<std::int64_t> acc(rel, 0);
        for (std::size_t i = 0; i < a.c_.size() && i < rel; ++i) {
            const std::int64_t ai = a.c_[i];
            if (ai == 0) continue;
            const std::size_t lim = std::min(b.c_.size(), rel - i);
            for (std::size_t j = 0; j < lim; ++j) acc[i + j] += ai * b.c_[j];
            if ((i & 1023) == 1023)
                for (auto& x : acc) x %= p;
        }
        for (std::size_t k = 0; k < rel; ++k) c[k] = static_cast<Elem>(acc[k] % p);
    } else {
        std::vector<std::uint32_t> lb(b.c_.size());
        for (std::size_t j = 0; j < b.c_.size(); ++j) lb[j] = b.c_[j] ? F.log(b.c_[j]) : 0;
        for (std::size_t i = 0; i < a.c_.size() && i < rel; ++i) {
            if (a.c_[i] == 0) continue;
            const std::uint32_t la = F.log(a.c_[i]);
            const std::size_t lim = std::min(b.c_.size(), rel - i);
            for (std::size_t j = 0; j < lim; ++j) {
                if (b.c_[j] == 0) continue;
                c[i + j] = F.add(c[i + j], F.exp(static_cast<long long>(la) + lb[j]));
            }
        }
    }
    return LaurentElem(L, val, val + static_cast<long>(rel), std::move(c));
}

LaurentElem LaurentElem::inverse() const {
    if (is_zero()) throw ZeroToPrecision("inverse of an element that is zero to precision O(v^" + std::to_string(prec_) + ")");
    const FiniteField& F = field_->constants();
    const std::size_t rel = c_.size();
    std::vector<Elem> d(rel, 0);
    const Elem inv0 = F.inv(c_[0]);
    d[0] = inv0;
    const Elem minus_inv0 = F.neg(inv0);
    for (std::size_t k = 1; k < rel; ++k) {
        Elem s = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            if (c_[i] == 0 || d[k - i] == 0) continue;
            s = F.add(s, F.mul(c_[i], d[k - i]));
        }
        d[k] = F.mul(minus_inv0, s);
    }
    return LaurentElem(*field_, -val_, -val_ + static_cast<long>(rel), std::move(d));
}

LaurentElem operator/(const LaurentElem& a, const LaurentElem& b) { return a * b.inverse(); }

LaurentElem LaurentElem::scaled(Elem c) const {
    if (c == 0) return zero_to(*field_, prec_);
    LaurentElem r(*this);
    const FiniteField& F = field_->constants();
    for (auto& x : r.c_) x = F.mul(x, c);
    return r;
}

LaurentElem LaurentElem::shifted(long n) const {
    LaurentElem r(*this);
    r.val_ += n;
    r.prec_ += n;
    return r;
}

LaurentElem LaurentElem::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    LaurentElem result = field_->one(), base = *this;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

LaurentElem LaurentElem::frobenius(std::uint64_t n) const {
    if (n == 1) return *this;
    const long ln = static_cast<long>(n);
    if (is_zero()) return zero_to(*field_, prec_ * ln);
    const FiniteField& F = field_->constants();
    const long rel = std::min(static_cast<long>(c_.size()) * ln, field_->precision());
    std::vector<Elem> c(static_cast<std::size_t>(rel), 0);
    for (std::size_t i = 0; static_cast<long>(i) * ln < rel; ++i) c[i * n] = F.pow(c_[i], ln);
    return LaurentElem(*field_, val_ * ln, val_ * ln + rel, std::move(c));
}

LaurentElem LaurentElem::constant_automorphism(std::uint64_t n) const {
    LaurentElem r(*this);
    const FiniteField& F = field_->constants();
    for (auto& x : r.c_) x = F.pow(x, static_cast<long long>(n));
    return r;
}

LaurentElem LaurentElem::truncated(long prec) const {
    if (prec >= prec_) return *this;
    if (prec <= val_) return zero_to(*field_, prec);
    std::vector<Elem> c(c_.begin(), c_.begin() + (prec - val_));
    return LaurentElem(*field_, val_, prec, std::move(c));
}

QPower LaurentElem::abs_value() const {
    if (is_zero()) throw ZeroToPrecision("absolute value of an element that is zero to precision");
    return make_qpower(-val_, static_cast<long>(field_->ramification()));
}

std::string LaurentElem::to_string(std::size_t max_terms) const {
    const FiniteField& F = field_->constants();
    std::ostringstream os;
    std::size_t terms = 0;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (max_terms && terms == max_terms) {
            os << " + ...";
            break;
        }
        ++terms;
        const long n = val_ + static_cast<long>(i);
        if (!first) os << " + ";
        first = false;
        std::string cs = F.to_string(c_[i]);
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        if (n == 0) {
            os << cs;
            continue;
        }
        if (c_[i] != 1) os << cs << "*";
        os << "v";
        if (n != 1) os << "^" << n;
    }
    if (!first) os << " + ";
    os << "O(v^" << prec_ << ")";
    return os.str();
}

long residual(const LaurentElem& a, const LaurentElem& b) {
    const LaurentElem d = a - b;
    const long ref = std::min(a.valuation(), b.valuation());
    return (d.is_zero() ? d.precision() : d.valuation()) - ref;
}

// ---------------------------------------------------------------- root finding

LaurentElem evaluate(const LaurentPoly& f, const LaurentElem& x) {
    if (f.empty()) return LaurentElem::zero_to(x.field(), x.field().precision());
    LaurentElem acc = f.back();
    for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * x + f[i];
    return acc;
}

LaurentElem newton_root(const LaurentPoly& f, const LaurentElem& seed, int max_iterations) {
    const LocalField& L = seed.field();
    const FiniteField& F = L.constants();
    LaurentPoly df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i].scaled(F.from_int(static_cast<long long>(i))));
    LaurentElem x = seed;
    long last_gain = std::numeric_limits<long>::min();
    for (int it = 0; it < max_iterations; ++it) {
        const LaurentElem fx = evaluate(f, x);
        if (fx.is_zero()) return x;
        const LaurentElem dfx = evaluate(df, x);
        if (dfx.is_zero()) throw MultipleRoot("derivative vanishes to working precision at the iterate");
        const LaurentElem delta = fx / dfx;
        if (!x.is_zero() && delta.valuation() <= x.valuation())
            throw NoConvergence("Newton correction is not smaller than the iterate (Hensel condition fails)");
        if (delta.valuation() <= last_gain)
            throw NoConvergence("Newton corrections stopped shrinking");
        last_gain = delta.valuation();
        if (delta.is_zero() || delta.valuation() >= x.precision()) return x;
        x = x - delta;
    }
    throw NoConvergence("Newton iteration limit reached");
}

LaurentElem nth_root(const LaurentElem& x, long n, Elem leading_choice) {
    const LocalField& L = x.field();
    const FiniteField& F = L.constants();
    if (n <= 0 || n % static_cast<long>(F.characteristic()) == 0)
        throw Unsupported("root index must be positive and prime to p");
    if (x.is_zero()) throw ZeroToPrecision("root of an element that is zero to precision");
    if (x.valuation() % n != 0)
        throw RamificationNeeded("valuation " + std::to_string(x.valuation()) + " is not divisible by " +
                                 std::to_string(n));
    if (F.roots(x.lead(), static_cast<std::uint32_t>(n)).empty())
        throw NoRootInField("leading coefficient has no " + std::to_string(n) + "-th root in " + F.describe());
    if (F.pow(leading_choice, n) != x.lead())
        throw NoRootInField("leading_choice^n does not match the leading coefficient");
    // x = c v^(nk) y with y a 1-unit; solve t^n = y from t = 1.
    const long k = x.valuation() / n;
    const LaurentElem y = x.shifted(-x.valuation()).scaled(F.inv(x.lead()));
    const LaurentPoly f = [&] {
        LaurentPoly g(static_cast<std::size_t>(n) + 1, L.zero());
        g[0] = -y;
        g[static_cast<std::size_t>(n)] = L.one();
        return g;
    }();
    const LaurentElem t = newton_root(f, L.one());
    return t.scaled(leading_choice).shifted(k);
}

LaurentElem nth_root(const LaurentElem& x, long n) {
    if (x.is_zero()) throw ZeroToPrecision("root of an element that is zero to precision");
    const auto roots = x.field().constants().roots(x.lead(), static_cast<std::uint32_t>(n));
    if (roots.empty())
        throw NoRootInField("leading coefficient has no " + std::to_string(n) + "-th root in " +
                            x.field().constants().describe());
    return nth_root(x, n, roots.front());
}

}  // namespace goss
