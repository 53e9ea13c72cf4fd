#include "goss/log_algebraicity.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "goss/error.hpp"
#include "goss/parallel.hpp"

namespace goss {

// ---------------------------------------------------------------- XPoly

XPoly XPoly::monomial(const RingElem& c, std::uint64_t n) {
    XPoly p(c.ring());
    p.add_term(n, c);
    return p;
}

RingElem XPoly::coeff(std::uint64_t n) const {
    auto it = t_.find(n);
    return it == t_.end() ? RingElem(*ring_) : it->second;
}

void XPoly::add_term(std::uint64_t n, const RingElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(n, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

XPoly& XPoly::operator+=(const XPoly& o) {
    for (const auto& [n, c] : o.t_) add_term(n, c);
    return *this;
}

XPoly operator-(const XPoly& a, const XPoly& b) {
    XPoly r = a;
    for (const auto& [n, c] : b.t_) r.add_term(n, -c);
    return r;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
    XPoly r(*a.ring_);
    for (const auto& [n1, c1] : a.t_)
        for (const auto& [n2, c2] : b.t_) r.add_term(n1 + n2, c1 * c2);
    return r;
}

XPoly XPoly::times(const RingElem& c) const {
    XPoly r(*ring_);
    if (c.is_zero()) return r;
    for (const auto& [n, x] : t_) r.add_term(n, x * c);
    return r;
}

XPoly XPoly::times(const Poly& c) const {
    XPoly r(*ring_);
    if (c.is_zero()) return r;
    for (const auto& [n, x] : t_) r.add_term(n, x.times(c));
    return r;
}

XPoly XPoly::divided(const Poly& c) const {
    XPoly r(*ring_);
    for (const auto& [n, x] : t_) r.t_.emplace(n, RingElem(*ring_, x.p() / c, x.r() / c));
    return r;
}

XPoly XPoly::frobenius(std::uint64_t n) const {
    XPoly r(*ring_);
    for (const auto& [k, x] : t_) r.t_.emplace(k * n, x.frobenius(n));
    return r;
}

XPoly XPoly::pow(std::uint64_t n) const {
    const std::uint64_t q = ring_->q();
    XPoly result = monomial(RingElem::from_int(*ring_, 1), 0);
    XPoly base = *this;
    std::uint64_t qj = 1;
    while (n) {
        const std::uint64_t digit = n % q;
        if (digit) {
            const XPoly f = qj == 1 ? base : base.frobenius(qj);
            for (std::uint64_t i = 0; i < digit; ++i) result = result * f;
        }
        n /= q;
        qj *= q;
    }
    return result;
}

Poly XPoly::content(const std::optional<Poly>& start) const {
    Poly g = start ? *start : Poly(ring_->base());
    for (const auto& [n, x] : t_) {
        if (g.is_one()) break;
        g = gcd(g, x.p());
        if (!g.is_one() && !x.r().is_zero()) g = gcd(g, x.r());
    }
    return g;
}

LaurentElem XPoly::eval(const LaurentElem& x, const LocalField& L) const {
    LaurentElem acc = L.zero();
    bool first = true;
    for (const auto& [n, c] : t_) {
        LaurentElem term = L.embed(c) * x.pow(static_cast<long>(n));
        acc = first ? term : acc + term;
        first = false;
    }
    return acc;
}

// ---------------------------------------------------------------- XFrac

XFrac::XFrac(const Ring& ring) : num(ring), den(Poly::constant(ring.base(), 1)) {}

XFrac::XFrac(XPoly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw ZeroElement("zero denominator");
    normalize();
}

void XFrac::normalize() {
    if (num.is_zero()) {
        den = Poly::constant(den.field(), 1);
        return;
    }
    if (!den.is_constant()) {
        const Poly g = num.content(den);
        if (!g.is_one()) {
            num = num.divided(g);
            den = den / g;
        }
    }
    if (den.lead() != 1) {
        const Elem c = den.field().inv(den.lead());
        num = num.times(RingElem::constant(num.ring(), c));
        den = den.scaled(c);
    }
}

XFrac operator+(const XFrac& a, const XFrac& b) {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    if (a.den == b.den) return XFrac(a.num + b.num, a.den);
    const Poly g = gcd(a.den, b.den);
    const Poly ac = b.den / g, bc = a.den / g;
    return XFrac(a.num.times(ac) + b.num.times(bc), a.den * ac);
}

XFrac XFrac::times(const FractionElem& c) const {
    return XFrac(num.times(c.num()), den * c.den());
}

XFrac XFrac::frobenius(std::uint64_t n) const {
    XFrac r(num.ring());
    r.num = num.frobenius(n);
    r.den = den.frobenius(n);
    return r;
}

std::string XFrac::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, c] : num.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.pretty() << ")*x^" << n;
    }
    if (first) os << "0";
    if (!den.is_one()) os << " / (" << den.to_string("t") << ")";
    return os.str();
}

// ---------------------------------------------------------------- harmonic sums

namespace {

// a + b over the lcm of the denominators, without removing common content
XFrac add_unreduced(const XFrac& a, const XFrac& b) {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    XFrac r(a.num.ring());
    if (a.den == b.den) {
        r.num = a.num + b.num;
        r.den = a.den;
        return r;
    }
    const Poly g = gcd(a.den, b.den);
    const Poly ac = b.den / g, bc = a.den / g;
    r.num = a.num.times(ac) + b.num.times(bc);
    r.den = a.den * ac;
    return r;
}

// Pairwise reduction tree; content is removed once at the end.
XFrac tree_sum(std::vector<XFrac> v, const Ring& ring) {
    if (v.empty()) return XFrac(ring);
    while (v.size() > 1) {
        const std::size_t half = v.size() / 2;
        std::vector<XFrac> next =
            parallel_map<XFrac>(half, [&](std::size_t i) { return add_unreduced(v[2 * i], v[2 * i + 1]); });
        if (v.size() % 2) next.push_back(std::move(v.back()));
        v = std::move(next);
    }
    return XFrac(std::move(v.front().num), std::move(v.front().den));
}

XPoly rho_poly(const DrinfeldModule& rho, const RingElem& a) {
    const RingTwisted ra = rho.rho(a);
    XPoly p(rho.ring());
    std::uint64_t qk = 1;
    for (std::size_t k = 0; k < ra.coeffs().size(); ++k, qk *= rho.q())
        if (!ra.coeffs()[k].is_zero()) p += XPoly::monomial(ra.coeffs()[k], qk);
    return p;
}

}  // namespace

XFrac harmonic_coeff(const DrinfeldModule& rho, std::uint64_t m, long d) {
    const Ring& R = rho.ring();
    const auto monics = monic_elements(R, d);
    std::vector<XFrac> terms = parallel_map<XFrac>(monics.size(), [&](std::size_t i) {
        const RingElem& a = monics[i];
        XFrac term(R);
        term.num = rho_poly(rho, a).pow(m).times(a.norm_cofactor());
        term.den = a.norm();
        return term;
    });
    return tree_sum(std::move(terms), R);
}

int default_z_bound(const DrinfeldModule& rho, std::uint64_t m) {
    const std::uint64_t q = rho.q();
    auto ceil_log = [&](std::uint64_t x) {
        int k = 0;
        for (std::uint64_t p = 1; p < x; p *= q) ++k;
        return k;
    };
    if (rho.ring().id() == RingId::A0) return ceil_log(std::max<std::uint64_t>(m, 1)) + 2;
    return ceil_log(m + 1) + 4;
}

SpecialPolynomial special_poly(const DrinfeldModule& rho, std::uint64_t m, const SpecialPolyOptions& opts) {
    const Ring& R = rho.ring();
    SpecialPolynomial S;
    S.module = &rho;
    S.m = m;
    S.z_bound = opts.z_bound.value_or(default_z_bound(rho, m));
    if (S.z_bound < 0) throw Error("InvalidArgument", "z bound must be non-negative");
    const int hard_bound = S.z_bound + (opts.z_bound ? 0 : std::max(opts.auto_extend, 0));
    const auto e = rho.exp_coeffs(static_cast<std::size_t>(hard_bound) + 1);
    std::vector<XFrac> c;
    const std::uint64_t q = rho.q();
    for (int n = 0; n <= hard_bound; ++n) {
        if (n > S.z_bound) {
            // extend only while the previous top entry is nonzero
            if (S.last_nonzero() < S.z_bound) break;
            S.z_bound = n;
        }
        if (monic_count(R, n) > opts.max_block) {
            S.partial = true;
            break;
        }
        c.push_back(harmonic_coeff(rho, m, n));
        // P_n = sum_{i + d = n} e_i c_d^(q^i)
        std::vector<XFrac> parts;
        std::uint64_t qi = 1;
        for (int i = 0; i <= n; ++i, qi *= q) {
            const XFrac& cd = c[static_cast<std::size_t>(n - i)];
            if (cd.num.is_zero()) continue;
            parts.push_back((i == 0 ? cd : cd.frobenius(qi)).times(e[static_cast<std::size_t>(i)]));
        }
        XFrac Pn = tree_sum(std::move(parts), R);
        if (!Pn.is_integral())
            throw IntegralityViolation("coefficient of z^(q^" + std::to_string(n) + ") in S_" + std::to_string(m) +
                                       " keeps the denominator " + Pn.den.to_string("t"));
        if (!Pn.num.is_zero()) S.entries.emplace(n, std::move(Pn.num));
        S.complete_through = n;
    }
    return S;
}

int SpecialPolynomial::last_nonzero() const { return entries.empty() ? -1 : entries.rbegin()->first; }

bool SpecialPolynomial::stabilized() const { return complete_through > last_nonzero(); }

// ---------------------------------------------------------------- display

std::optional<std::string> as_eta_polynomial(const RingElem& a) {
    const Ring& R = a.ring();
    if (R.id() != RingId::A1) return std::nullopt;
    std::map<long, Elem, std::greater<>> c;
    RingElem rem = a;
    const RingElem eta = RingElem::eta(R);
    while (!rem.is_zero()) {
        const long d = rem.degree();
        if (d % 3 != 0) return std::nullopt;
        const Elem s = rem.sgn();
        c[d / 3] = s;
        rem -= eta.pow(static_cast<std::uint64_t>(d / 3)).scaled(s);
    }
    if (c.empty()) return "0";
    const FiniteField& F = R.base();
    std::string out;
    for (const auto& [k, s] : c) {
        const bool negative = F.characteristic() == 3 && s == 2;
        std::string coef = negative ? "" : (s == 1 ? "" : F.to_string(s));
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? "-" : "+";
        if (k == 0) {
            out += coef.empty() ? "1" : coef;
            continue;
        }
        if (!coef.empty()) out += coef + "*";
        out += "e";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

std::string display_coeff(const RingElem& a) {
    if (auto s = as_eta_polynomial(a)) return *s;
    return a.pretty();
}

namespace {

// Appends the terms of P, each multiplied by the monomial `zs` (may be empty).
void append_terms(std::string& out, const XPoly& P, const std::string& zs) {
    for (const auto& [k, c] : P.terms()) {
        std::string coef = display_coeff(c);
        const std::string negated = display_coeff(-c);
        const bool negative = coef[0] == '-' && negated[0] != '-';
        if (negative) coef = negated;
        std::string mono;
        if (k > 0) mono = k == 1 ? "x" : "x^" + std::to_string(k);
        if (!zs.empty()) mono += (mono.empty() ? "" : "*") + zs;
        if (coef.find_first_of("+-", 1) != std::string::npos && !mono.empty()) coef = "(" + coef + ")";
        std::string term = mono.empty() ? coef : coef == "1" ? mono : coef + "*" + mono;
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += (negative ? " - " : " + ") + term;
    }
}

}  // namespace

std::string XPoly::to_string() const {
    std::string out;
    append_terms(out, *this, "");
    return out.empty() ? "0" : out;
}

std::string SpecialPolynomial::to_string() const {
    const std::uint64_t q = module->q();
    std::string out;
    for (const auto& [n, P] : entries) {
        std::uint64_t zexp = 1;
        for (int i = 0; i < n; ++i) zexp *= q;
        append_terms(out, P, zexp == 1 ? "z" : "z^" + std::to_string(zexp));
    }
    if (out.empty()) out = "0";
    if (partial) out += " + O(z^" + std::to_string([&] {
                            std::uint64_t z = 1;
                            for (int i = 0; i <= complete_through; ++i) z *= q;
                            return z;
                        }()) + ")";
    return out;
}

LaurentElem SpecialPolynomial::specialize(const LaurentElem& x0) const {
    const LocalField& L = x0.field();
    LaurentElem acc = L.zero();
    bool first = true;
    for (const auto& [n, P] : entries) {
        LaurentElem v = P.eval(x0, L);
        acc = first ? v : acc + v;
        first = false;
    }
    return acc;
}

// ---------------------------------------------------------------- display parser

namespace {

using Key = std::pair<std::uint64_t, std::uint64_t>;  // (x exponent, z exponent)

struct XZ {
    std::map<Key, RingElem> t;
};

class DisplayParser {
public:
    DisplayParser(const Ring& R, const std::string& s) : R_(R), s_(s) {}

    XZ parse() {
        XZ v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("special polynomial display, position " + std::to_string(pos_) + ": " + why);
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
    static void add(XZ& a, const Key& k, const RingElem& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = a.t.emplace(k, c);
        if (inserted) return;
        it->second += c;
        if (it->second.is_zero()) a.t.erase(it);
    }
    static XZ mul(const XZ& a, const XZ& b) {
        XZ r;
        for (const auto& [k1, c1] : a.t)
            for (const auto& [k2, c2] : b.t) add(r, {k1.first + k2.first, k1.second + k2.second}, c1 * c2);
        return r;
    }
    XZ constant(const RingElem& c) const {
        XZ r;
        add(r, {0, 0}, c);
        return r;
    }
    XZ expr() {
        XZ acc;
        bool first = true;
        for (;;) {
            skip();
            bool negative = false;
            if (eat("+")) {
            } else if (eat("-")) {
                negative = true;
            } else if (!first) {
                break;
            }
            XZ t = term();
            for (const auto& [k, c] : t.t) add(acc, k, negative ? -c : c);
            first = false;
        }
        return acc;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 't' || c == 'e' || c == 'x' ||
               c == 'z';
    }
    XZ term() {
        XZ acc = factor();
        for (;;) {
            if (eat("*")) {
                acc = mul(acc, factor());
            } else if (starts_factor()) {
                acc = mul(acc, factor());
            } else {
                return acc;
            }
        }
    }
    XZ factor() {
        XZ base = primary();
        if (!eat("^")) return base;
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        std::uint64_t n = std::stoull(s_.substr(start, pos_ - start));
        XZ result = constant(RingElem::from_int(R_, 1));
        while (n) {
            if (n & 1) result = mul(result, base);
            n >>= 1;
            if (n) base = mul(base, base);
        }
        return result;
    }
    XZ primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (eat("(")) {
            XZ v = expr();
            if (!eat(")")) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return constant(RingElem::from_int(R_, std::stoll(s_.substr(start, pos_ - start))));
        }
        if (eat("theta") || eat("t")) return constant(RingElem::theta(R_));
        if (eat("eta") || eat("e")) {
            if (R_.id() != RingId::A1) fail("e is not in A0");
            return constant(RingElem::eta(R_));
        }
        XZ r;
        if (eat("x")) {
            add(r, {1, 0}, RingElem::from_int(R_, 1));
            return r;
        }
        if (eat("z")) {
            add(r, {0, 1}, RingElem::from_int(R_, 1));
            return r;
        }
        fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }

    const Ring& R_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::map<int, XPoly> parse_special_display(const DrinfeldModule& rho, const std::string& text) {
    const Ring& R = rho.ring();
    const XZ v = DisplayParser(R, text).parse();
    std::map<int, XPoly> out;
    for (const auto& [k, c] : v.t) {
        int n = 0;
        std::uint64_t z = k.second;
        while (z > 1 && z % rho.q() == 0) {
            z /= rho.q();
            ++n;
        }
        if (z != 1) throw ParseError("z exponent " + std::to_string(k.second) + " is not a power of q");
        auto it = out.emplace(n, XPoly(R)).first;
        it->second += XPoly::monomial(c, k.first);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace goss
