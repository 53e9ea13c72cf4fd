#include "goss/poly.hpp"

#include <gmp.h>

#include <algorithm>
#include <bit>
#include <sstream>

#include "goss/error.hpp"

namespace goss {

namespace {

constexpr std::size_t kKaratsubaCutoff = 48;

void schoolbook(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                std::int64_t* out) {
    for (std::size_t i = 0; i < na; ++i) {
        const std::int64_t ai = a[i];
        if (ai == 0) continue;
        std::int64_t* o = out + i;
        for (std::size_t j = 0; j < nb; ++j) o[j] += ai * b[j];
    }
}

// out[0 .. 2n-1) += a * b for equal-length inputs; scratch holds 4n.
void karatsuba(const std::int64_t* a, const std::int64_t* b, std::size_t n, std::int64_t* out,
               std::int64_t* scratch) {
    if (n <= kKaratsubaCutoff) {
        schoolbook(a, n, b, n, out);
        return;
    }
    const std::size_t h = n / 2, hi = n - h;
    std::int64_t* sa = scratch;
    std::int64_t* sb = scratch + hi;
    std::int64_t* mid = scratch + 2 * hi;
    std::int64_t* rest = scratch + 4 * hi;
    for (std::size_t i = 0; i < hi; ++i) {
        sa[i] = a[h + i] + (i < h ? a[i] : 0);
        sb[i] = b[h + i] + (i < h ? b[i] : 0);
    }
    std::fill(mid, mid + 2 * hi, 0);
    karatsuba(sa, sb, hi, mid, rest);
    std::vector<std::int64_t> low(2 * h, 0), high(2 * hi, 0);
    karatsuba(a, b, h, low.data(), rest);
    karatsuba(a + h, b + h, hi, high.data(), rest);
    for (std::size_t i = 0; i + 1 < 2 * hi; ++i) mid[i] -= high[i];
    for (std::size_t i = 0; i + 1 < 2 * h; ++i) mid[i] -= low[i];
    for (std::size_t i = 0; i + 1 < 2 * h; ++i) out[i] += low[i];
    for (std::size_t i = 0; i + 1 < 2 * hi; ++i) out[i + h] += mid[i];
    for (std::size_t i = 0; i + 1 < 2 * hi; ++i) out[i + 2 * h] += high[i];
}

constexpr std::size_t kKroneckerCutoff = 16;

// Kronecker substitution: pack both operands into integers with slots wide
// enough for every product coefficient, multiply with GMP, unpack mod p.
std::vector<Elem> mul_kronecker(const std::vector<Elem>& a, const std::vector<Elem>& b, std::uint32_t p) {
    const std::uint64_t bound = std::uint64_t(p - 1) * (p - 1) * std::min(a.size(), b.size());
    const unsigned bits = static_cast<unsigned>(std::bit_width(bound));
    auto pack = [&](const std::vector<Elem>& v, mpz_t z) {
        std::vector<std::uint64_t> words((v.size() * bits + 63) / 64 + 1, 0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::size_t pos = i * bits, w = pos / 64, off = pos % 64;
            words[w] |= std::uint64_t(v[i]) << off;
            if (off + bits > 64 && off) words[w + 1] |= std::uint64_t(v[i]) >> (64 - off);
        }
        mpz_import(z, words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
    };
    mpz_t za, zb;
    mpz_init(za);
    mpz_init(zb);
    pack(a, za);
    pack(b, zb);
    mpz_mul(za, za, zb);
    const std::size_t n = a.size() + b.size() - 1;
    std::vector<std::uint64_t> words((n * bits + 63) / 64 + 2, 0);
    std::size_t count = 0;
    mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, za);
    mpz_clear(za);
    mpz_clear(zb);
    const std::uint64_t mask = bits == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << bits) - 1;
    std::vector<Elem> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pos = i * bits, w = pos / 64, off = pos % 64;
        std::uint64_t x = words[w] >> off;
        if (off + bits > 64 && off) x |= words[w + 1] << (64 - off);
        r[i] = static_cast<Elem>((x & mask) % p);
    }
    return r;
}

std::vector<Elem> mul_prime(const std::vector<Elem>& a, const std::vector<Elem>& b,
                            std::uint32_t p) {
    const std::size_t na = a.size(), nb = b.size();
    if (std::min(na, nb) > kKroneckerCutoff && p < (1u << 20)) return mul_kronecker(a, b, p);
    std::vector<std::int64_t> out(na + nb - 1, 0);
    const bool small = p < 1024 && std::max(na, nb) < (1u << 16);
    if (!small || std::min(na, nb) <= kKaratsubaCutoff) {
        std::vector<std::int64_t> A(a.begin(), a.end()), B(b.begin(), b.end());
        if (small) {
            schoolbook(A.data(), na, B.data(), nb, out.data());
        } else {
            for (std::size_t i = 0; i < na; ++i)
                for (std::size_t j = 0; j < nb; ++j)
                    out[i + j] = (out[i + j] + A[i] * B[j]) % p;
        }
    } else {
        // Split the longer operand into blocks the size of the shorter one.
        const bool swap = na < nb;
        const auto& L = swap ? b : a;
        const auto& S = swap ? a : b;
        const std::size_t n = S.size();
        std::vector<std::int64_t> s(S.begin(), S.end()), blk(n), scratch(8 * n + 64);
        std::vector<std::int64_t> prod(2 * n);
        for (std::size_t off = 0; off < L.size(); off += n) {
            std::fill(blk.begin(), blk.end(), 0);
            for (std::size_t i = 0; i < n && off + i < L.size(); ++i) blk[i] = L[off + i];
            std::fill(prod.begin(), prod.end(), 0);
            karatsuba(blk.data(), s.data(), n, prod.data(), scratch.data());
            for (std::size_t i = 0; i + 1 < 2 * n && off + i < out.size(); ++i) out[off + i] += prod[i];
        }
    }
    std::vector<Elem> r(out.size());
    const std::int64_t P = p;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::int64_t v = out[i] % P;
        r[i] = static_cast<Elem>(v < 0 ? v + P : v);
    }
    return r;
}

}  // namespace

Poly::Poly(const FiniteField& f, std::vector<Elem> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const FiniteField& f, Elem c) { return Poly(f, {c}); }

Poly Poly::monomial(const FiniteField& f, Elem c, std::size_t n) {
    if (c == 0) return Poly(f);
    std::vector<Elem> v(n + 1, 0);
    v[n] = c;
    return Poly(f, std::move(v));
}

Poly Poly::frobenius_minus_identity(const FiniteField& f, std::uint64_t n) {
    if (n == 1) return Poly(f);
    std::vector<Elem> v(n + 1, 0);
    v[n] = 1;
    v[1] = f.neg(1);
    return Poly(f, std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& x : r.c_) x = f_->neg(x);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_->add(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_->sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(*a.f_);
    const FiniteField& f = *a.f_;
    if (f.is_prime()) return Poly(f, mul_prime(a.c_, b.c_, f.characteristic()));
    std::vector<Elem> out(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] = f.add(out[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(out));
}

Poly Poly::scaled(Elem c) const {
    if (c == 0) return Poly(*f_);
    Poly r(*this);
    for (auto& x : r.c_) x = f_->mul(x, c);
    return r;
}

Poly Poly::shifted(std::size_t n) const {
    if (is_zero()) return *this;
    std::vector<Elem> v(n, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(*f_, std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw ZeroElement("polynomial division by zero");
    if (degree() < d.degree()) return {Poly(*f_), *this};
    const FiniteField& f = *f_;
    std::vector<Elem> r = c_;
    const std::size_t dn = d.c_.size();
    std::vector<Elem> q(c_.size() - dn + 1, 0);
    const Elem inv_lead = f.inv(d.lead());
    const bool monic = d.lead() == 1;
    if (f.is_prime()) {
        const std::int64_t p = f.characteristic();
        for (std::size_t i = q.size(); i-- > 0;) {
            const Elem top = r[i + dn - 1];
            if (top == 0) continue;
            const Elem qc = monic ? top : f.mul(top, inv_lead);
            q[i] = qc;
            const std::int64_t neg = p - qc;
            for (std::size_t j = 0; j < dn; ++j)
                r[i + j] = static_cast<Elem>((r[i + j] + neg * d.c_[j]) % p);
        }
    } else {
        for (std::size_t i = q.size(); i-- > 0;) {
            const Elem top = r[i + dn - 1];
            if (top == 0) continue;
            const Elem qc = f.mul(top, inv_lead);
            q[i] = qc;
            for (std::size_t j = 0; j < dn; ++j) r[i + j] = f.sub(r[i + j], f.mul(qc, d.c_[j]));
        }
    }
    r.resize(dn - 1);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly Poly::operator/(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw Error("InexactDivision", "polynomial division is not exact");
    return q;
}

Poly Poly::monic() const {
    if (is_zero() || lead() == 1) return *this;
    return scaled(f_->inv(lead()));
}

Poly Poly::pow(std::uint64_t n) const {
    Poly result = constant(*f_, 1), base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

Poly Poly::powmod(std::uint64_t n, const Poly& m) const {
    Poly result = constant(*f_, 1) % m, base = *this % m;
    while (n) {
        if (n & 1) result = (result * base) % m;
        n >>= 1;
        if (n) base = (base * base) % m;
    }
    return result;
}

Poly Poly::frobenius(std::uint64_t n) const {
    if (is_zero() || n == 1) return *this;
    std::vector<Elem> v((c_.size() - 1) * n + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * n] = f_->pow(c_[i], static_cast<long long>(n));
    return Poly(*f_, std::move(v));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(*f_);
    std::vector<Elem> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = f_->mul(f_->from_int(static_cast<long long>(i)), c_[i]);
    return Poly(*f_, std::move(v));
}

Elem Poly::eval(Elem x) const {
    Elem acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
    return acc;
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Elem c = c_[i];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = f_->to_string(c);
        const bool compound = cs.find('+') != std::string::npos || cs.find('*') != std::string::npos;
        if (compound) cs = "(" + cs + ")";
        if (i == 0) {
            os << cs;
            continue;
        }
        if (c != 1) os << cs << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field());
    return (a / gcd(a, b) * b).monic();
}

bool is_irreducible(const Poly& f) {
    const long n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const std::uint64_t q = f.field().size();
    const Poly x = Poly::monomial(f.field(), 1, 1);
    // x^(q^n) == x mod f, and gcd(x^(q^(n/r)) - x, f) = 1 for prime r | n
    auto frob_power = [&](long k) {
        Poly y = x;
        for (long i = 0; i < k; ++i) y = y.powmod(q, f);
        return y;
    };
    if (frob_power(n) != x % f) return false;
    for (long r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool prime = true;
        for (long s = 2; s * s <= r; ++s)
            if (r % s == 0) prime = false;
        if (!prime) continue;
        if (gcd(frob_power(n / r) - x, f).degree() != 0) return false;
    }
    return true;
}

}  // namespace goss
