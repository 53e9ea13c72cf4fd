#include "goss/ring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "goss/error.hpp"

namespace goss {

// ---------------------------------------------------------------- Ring

Ring::Ring(RingId id, const FiniteField& base) : id_(id), base_(&base), eta_sq_(base) {
    if (id == RingId::A1) {
        // e^2 = t^3 - t - 1
        eta_sq_ = Poly(base, {base.neg(1), base.neg(1), 0, 1});
    }
}

const Ring& Ring::a0(std::uint32_t q) {
    static std::mutex mutex;
    static std::map<std::uint32_t, std::unique_ptr<Ring>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[q];
    if (!slot) slot.reset(new Ring(RingId::A0, FiniteField::of_order(q)));
    return *slot;
}

const Ring& Ring::a1() {
    static const Ring* ring = new Ring(RingId::A1, FiniteField::get(3, 1));
    return *ring;
}

const Ring& Ring::get(RingId id, std::uint32_t q) {
    if (id == RingId::A0) return a0(q);
    if (q != 3) throw Unsupported("A1 is defined over F_3 only");
    return a1();
}

// ---------------------------------------------------------------- RingElem

RingElem::RingElem(const Ring& ring) : ring_(&ring), p_(ring.base()), r_(ring.base()) {}

RingElem::RingElem(const Ring& ring, Poly p, Poly r) : ring_(&ring), p_(std::move(p)), r_(std::move(r)) {
    reduce_check();
}

RingElem::RingElem(const Ring& ring, Poly p) : ring_(&ring), p_(std::move(p)), r_(ring.base()) {}

void RingElem::reduce_check() const {
    if (ring_->id() == RingId::A0 && !r_.is_zero())
        throw Unsupported("A0 elements have no eta part");
}

RingElem RingElem::constant(const Ring& ring, Elem c) {
    return RingElem(ring, Poly::constant(ring.base(), c));
}

RingElem RingElem::from_int(const Ring& ring, long long n) {
    return constant(ring, ring.base().from_int(n));
}

RingElem RingElem::theta(const Ring& ring) {
    return RingElem(ring, Poly::monomial(ring.base(), 1, 1));
}

RingElem RingElem::eta(const Ring& ring) {
    if (ring.id() != RingId::A1) throw Unsupported("eta exists only in A1");
    return RingElem(ring, Poly(ring.base()), Poly::constant(ring.base(), 1));
}

long RingElem::degree() const {
    if (is_zero()) throw ZeroElement("degree of zero");
    if (ring_->id() == RingId::A0) return p_.degree();
    const long dp = p_.is_zero() ? std::numeric_limits<long>::min() : 2 * p_.degree();
    const long dr = r_.is_zero() ? std::numeric_limits<long>::min() : 2 * r_.degree() + 3;
    return std::max(dp, dr);
}

Elem RingElem::sgn() const {
    if (is_zero()) throw ZeroElement("sign of zero");
    if (ring_->id() == RingId::A0) return p_.lead();
    // sgn(t) = sgn(e) = 1; the two parts never tie since their degrees differ in parity.
    const long d = degree();
    return (d % 2 == 0) ? p_.lead() : r_.lead();
}

RingElem RingElem::operator-() const { return RingElem(*ring_, -p_, -r_); }

RingElem& RingElem::operator+=(const RingElem& o) {
    p_ += o.p_;
    r_ += o.r_;
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) {
    p_ -= o.p_;
    r_ -= o.r_;
    return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
    const Ring& ring = *a.ring_;
    if (ring.id() == RingId::A0) return RingElem(ring, a.p_ * b.p_);
    Poly p = a.p_ * b.p_;
    if (a.r_.is_zero() || b.r_.is_zero()) return RingElem(ring, std::move(p), a.p_ * b.r_ + a.r_ * b.p_);
    // three products: the cross term is (p1 + r1)(p2 + r2) - p1 p2 - r1 r2
    const Poly rr = a.r_ * b.r_;
    Poly r = (a.p_ + a.r_) * (b.p_ + b.r_) - p - rr;
    p += rr * ring.eta_square();
    return RingElem(ring, std::move(p), std::move(r));
}

RingElem RingElem::scaled(Elem c) const { return RingElem(*ring_, p_.scaled(c), r_.scaled(c)); }

RingElem RingElem::times(const Poly& c) const { return RingElem(*ring_, p_ * c, r_ * c); }

RingElem RingElem::pow(std::uint64_t n) const {
    RingElem result = from_int(*ring_, 1), base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

RingElem RingElem::frobenius(std::uint64_t n) const {
    const std::uint64_t p = ring_->base().characteristic();
    if (ring_->id() == RingId::A0) return RingElem(*ring_, p_.frobenius(n));
    RingElem x = *this;
    for (std::uint64_t m = n; m > 1; m /= p) {
        if (m % p != 0) throw Unsupported("frobenius exponent must be a power of p");
        // (P + R e)^p = P^p + R^p e^(p-1) e with e^2 = f
        Poly r = x.r_.frobenius(p);
        if (!r.is_zero()) r = r * ring_->eta_square().pow((p - 1) / 2);
        x = RingElem(*ring_, x.p_.frobenius(p), std::move(r));
    }
    return x;
}

RingElem RingElem::conj() const { return RingElem(*ring_, p_, -r_); }

RingElem RingElem::norm_cofactor() const {
    return ring_->id() == RingId::A0 ? RingElem::from_int(*ring_, 1) : conj();
}

Poly RingElem::norm() const {
    if (ring_->id() == RingId::A0) return p_;
    return p_ * p_ - r_ * r_ * ring_->eta_square();
}

bool operator<(const RingElem& a, const RingElem& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    return a.r_ < b.r_;
}

std::string RingElem::to_string() const {
    if (ring_->id() == RingId::A0) return p_.to_string("t");
    return "(" + p_.to_string("t") + ") + (" + r_.to_string("t") + ")*e";
}

std::string RingElem::pretty() const {
    if (ring_->id() == RingId::A0 || r_.is_zero()) return p_.to_string("t");
    std::string rs = r_.to_string("t");
    std::string eta_part;
    if (r_.is_one()) {
        eta_part = "e";
    } else if (r_.degree() == 0 || (r_.coeffs().size() >= 1 && std::count_if(r_.coeffs().begin(), r_.coeffs().end(), [](Elem c) { return c != 0; }) == 1)) {
        eta_part = rs + "*e";
    } else {
        eta_part = "(" + rs + ")*e";
    }
    if (p_.is_zero()) return eta_part;
    return p_.to_string("t") + "+" + eta_part;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(const Ring& ring, const std::string& s) : ring_(ring), s_(s) {}

    RingElem parse() {
        RingElem v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    RingElem expr() {
        bool negate = false;
        if (eat("-")) negate = true;
        else eat("+");
        RingElem acc = term();
        if (negate) acc = -acc;
        while (true) {
            if (eat("+")) acc += term();
            else if (eat("-")) acc -= term();
            else break;
        }
        return acc;
    }

    RingElem term() {
        RingElem acc = factor();
        while (eat("*")) acc *= factor();
        return acc;
    }

    RingElem factor() {
        RingElem base = primary();
        if (eat("^")) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(std::stoull(s_.substr(start, pos_ - start)));
        }
        return base;
    }

    RingElem primary() {
        skip();
        if (eat("(")) {
            RingElem v = expr();
            if (!eat(")")) fail("expected ')'");
            return v;
        }
        if (eat("-")) return -factor();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RingElem::from_int(ring_, std::stoll(s_.substr(start, pos_ - start)));
        }
        if (eat("theta") || eat("\xCE\xB8") || eat("t")) return RingElem::theta(ring_);
        if (eat("eta") || eat("\xCE\xB7") || eat("e")) {
            if (ring_.id() != RingId::A1) fail("eta is not available in A0");
            return RingElem::eta(ring_);
        }
        if (eat("y")) {
            const FiniteField& f = ring_.base();
            if (f.is_prime()) fail("'y' needs a non-prime base field");
            return RingElem::constant(ring_, f.generator());
        }
        fail("unexpected token");
    }

    const Ring& ring_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

RingElem RingElem::parse(const Ring& ring, const std::string& text) { return Parser(ring, text).parse(); }

// ---------------------------------------------------------------- FractionElem

Poly content(const RingElem& a) { return gcd(a.p(), a.r()); }

FractionElem::FractionElem(const Ring& ring) : num_(ring), den_(Poly::constant(ring.base(), 1)) {}

FractionElem::FractionElem(RingElem num) : num_(std::move(num)), den_(Poly::constant(num_.ring().base(), 1)) {}

FractionElem::FractionElem(RingElem num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroElement("zero denominator");
    normalize();
}

void FractionElem::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.ring().base(), 1);
        return;
    }
    if (!den_.is_constant()) {
        Poly g = gcd(content(num_), den_);
        if (!g.is_one()) {
            num_ = RingElem(num_.ring(), num_.p() / g, num_.r() / g);
            den_ = den_ / g;
        }
    }
    if (den_.lead() != 1) {
        const Elem c = num_.ring().base().inv(den_.lead());
        num_ = num_.scaled(c);
        den_ = den_.scaled(c);
    }
}

FractionElem FractionElem::operator-() const {
    FractionElem r(*this);
    r.num_ = -r.num_;
    return r;
}

FractionElem operator+(const FractionElem& a, const FractionElem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return FractionElem(a.num_ + b.num_, a.den_);
    Poly g = gcd(a.den_, b.den_);
    Poly bq = b.den_ / g;
    Poly aq = a.den_ / g;
    return FractionElem(a.num_.times(bq) + b.num_.times(aq), a.den_ * bq);
}

FractionElem operator*(const FractionElem& a, const FractionElem& b) {
    return FractionElem(a.num_ * b.num_, a.den_ * b.den_);
}

FractionElem FractionElem::inverse() const {
    if (num_.is_zero()) throw ZeroElement("inverse of zero fraction");
    return FractionElem(num_.norm_cofactor().times(den_), num_.norm());
}

FractionElem operator/(const FractionElem& a, const FractionElem& b) { return a * b.inverse(); }

FractionElem FractionElem::frobenius(std::uint64_t n) const {
    FractionElem r(ring());
    r.num_ = num_.frobenius(n);
    r.den_ = den_.frobenius(n);
    return r;
}

std::string FractionElem::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string("t") + ")";
}

// ---------------------------------------------------------------- enumeration

namespace {

std::uint64_t upow(std::uint64_t b, long e) {
    std::uint64_t r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// Writes counter n (base q) into `digits` most significant first.
void counter_digits(std::uint64_t n, std::uint32_t q, std::vector<Elem>& digits) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        digits[i] = static_cast<Elem>(n % q);
        n /= q;
    }
}

// Polynomial with given leading coefficient (or none) and lower coefficients
// listed from the top.
Poly from_top(const FiniteField& f, const std::vector<Elem>& top_down, std::size_t from, std::size_t count,
              bool monic_lead) {
    std::vector<Elem> c(count + (monic_lead ? 1 : 0), 0);
    for (std::size_t i = 0; i < count; ++i) c[count - 1 - i] = top_down[from + i];
    if (monic_lead) c[count] = 1;
    return Poly(f, std::move(c));
}

}  // namespace

std::uint64_t monic_count(const Ring& ring, long d) {
    if (d < 0) return 0;
    if (d == 0) return 1;
    if (ring.id() == RingId::A0) return upow(ring.q(), d);
    return d == 1 ? 0 : upow(ring.q(), d - 1);
}

std::vector<RingElem> monic_elements(const Ring& ring, long d) {
    std::vector<RingElem> out;
    if (d < 0) return out;
    const FiniteField& f = ring.base();
    const std::uint32_t q = ring.q();
    if (d == 0) {
        out.push_back(RingElem::from_int(ring, 1));
        return out;
    }
    if (ring.id() == RingId::A0) {
        const std::uint64_t total = upow(q, d);
        std::vector<Elem> digits(d);
        out.reserve(total);
        for (std::uint64_t n = 0; n < total; ++n) {
            counter_digits(n, q, digits);
            out.emplace_back(ring, from_top(f, digits, 0, d, true));
        }
        return out;
    }
    if (d == 1) return out;
    // A1: degree 2k has p monic of degree k, deg r <= k-2;
    //     degree 2k+3 has r monic of degree k, deg p <= k+1.
    const bool even = d % 2 == 0;
    const long k = even ? d / 2 : (d - 3) / 2;
    const std::size_t lead_free = k;
    const std::size_t other = even ? k - 1 : k + 2;
    const std::uint64_t total = upow(q, lead_free + other);
    std::vector<Elem> digits(lead_free + other);
    out.reserve(total);
    for (std::uint64_t n = 0; n < total; ++n) {
        counter_digits(n, q, digits);
        Poly lead_part = from_top(f, digits, 0, lead_free, true);
        Poly other_part = from_top(f, digits, lead_free, other, false);
        if (even) out.emplace_back(ring, std::move(lead_part), std::move(other_part));
        else out.emplace_back(ring, std::move(other_part), std::move(lead_part));
    }
    return out;
}

std::vector<RingElem> elements_of_degree(const Ring& ring, long d) {
    std::vector<RingElem> out;
    const auto monics = monic_elements(ring, d);
    const FiniteField& f = ring.base();
    for (Elem c = 1; c < f.size(); ++c)
        for (const auto& m : monics) out.push_back(m.scaled(c));
    return out;
}

bool is_prime_element(const RingElem& a) {
    if (a.is_zero() || a.is_constant()) return false;
    const Ring& ring = a.ring();
    if (ring.id() == RingId::A0) return is_irreducible(a.p());
    if (!a.r().is_zero()) return is_irreducible(a.norm());
    // a in F_q[t]: prime iff irreducible and inert, i.e. t^3 - t - 1 is a
    // nonsquare in the residue field F_q[t]/(a).
    const Poly& p = a.p();
    if (!is_irreducible(p)) return false;
    const Poly f = ring.eta_square() % p;
    if (f.is_zero()) return false;
    const std::uint64_t residue_size = upow(ring.q(), p.degree());
    const Poly chi = f.powmod((residue_size - 1) / 2, p);
    return !chi.is_one();
}

std::vector<RingElem> irreducible_monics(const Ring& ring, long d) {
    if (d < 1) throw Unsupported("irreducibles need degree >= 1");
    if (d > 12) throw Unsupported("irreducible enumeration is limited to degree 12");
    std::vector<RingElem> out;
    for (auto& a : monic_elements(ring, d))
        if (is_prime_element(a)) out.push_back(std::move(a));
    return out;
}

// ---------------------------------------------------------------- ResidueMap

namespace {

const FiniteField& default_residue_field(const RingElem& prime) {
    const FiniteField& base = prime.ring().base();
    return FiniteField::get(base.characteristic(), base.degree() * static_cast<std::uint32_t>(prime.degree()));
}

Poly mapped(const Poly& a, const FieldEmbedding& emb) {
    std::vector<Elem> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = emb(a.coeffs()[i]);
    return Poly(emb.target(), std::move(c));
}

// Roots in the target, smallest discrete log first (0 sorts first).
std::vector<Elem> roots_in(const Poly& a, const FiniteField& F) {
    std::vector<Elem> out;
    if (a.eval(0) == 0) out.push_back(0);
    for (std::uint32_t t = 0; t + 1 < F.size(); ++t)
        if (a.eval(F.exp(t)) == 0) out.push_back(F.exp(t));
    return out;
}

}  // namespace

ResidueMap::ResidueMap(const RingElem& prime) : ResidueMap(prime, default_residue_field(prime)) {}

ResidueMap::ResidueMap(const RingElem& prime, const FiniteField& target)
    : prime_(prime), field_(&target), emb_(prime.ring().base(), target), degree_(0) {
    if (!prime.is_monic()) throw NotIrreducible("residue map needs a monic prime");
    if (!is_prime_element(prime)) throw NotIrreducible(prime.to_string() + " is not prime");
    degree_ = prime.degree();
    const FiniteField& base = ring().base();
    if (target.degree() % (base.degree() * degree_) != 0)
        throw InsufficientField("residue field F_{q^" + std::to_string(degree_) + "} does not embed in " +
                                target.describe());
    if (ring().id() == RingId::A0) {
        theta0_ = roots_in(mapped(prime.p(), emb_), target).at(0);
    } else if (prime.r().is_zero()) {
        theta0_ = roots_in(mapped(prime.p(), emb_), target).at(0);
        const Elem f0 = mapped(ring().eta_square(), emb_).eval(theta0_);
        eta0_ = target.roots(f0, 2).at(0);
    } else {
        theta0_ = roots_in(mapped(prime.norm(), emb_), target).at(0);
        const Elem r0 = mapped(prime.r(), emb_).eval(theta0_);
        eta0_ = target.neg(target.div(mapped(prime.p(), emb_).eval(theta0_), r0));
    }
    if ((*this)(prime) != 0) throw NotIrreducible("residue map does not kill the prime");
    build_representatives();
}

std::uint64_t ResidueMap::residue_count() const { return upow(ring().q(), degree_); }

Elem ResidueMap::operator()(const RingElem& a) const {
    const FiniteField& F = *field_;
    Elem v = mapped(a.p(), emb_).eval(theta0_);
    if (!a.r().is_zero()) v = F.add(v, F.mul(mapped(a.r(), emb_).eval(theta0_), eta0_));
    return v;
}

void ResidueMap::build_representatives() {
    const std::size_t total = residue_count();
    image_index_.assign(field_->size(), std::numeric_limits<std::size_t>::max());
    reps_.clear();
    reps_.push_back(RingElem(ring()));
    image_index_[0] = 0;
    for (long d = 0; reps_.size() < total; ++d) {
        for (auto& a : elements_of_degree(ring(), d)) {
            const Elem img = (*this)(a);
            if (image_index_[img] != std::numeric_limits<std::size_t>::max()) continue;
            image_index_[img] = reps_.size();
            reps_.push_back(std::move(a));
            if (reps_.size() == total) break;
        }
        if (d > 4 * degree_ + 8) throw Unsupported("residue representatives not found");
    }
}

std::size_t ResidueMap::class_index(const RingElem& a) const { return image_index_[(*this)(a)]; }

}  // namespace goss
