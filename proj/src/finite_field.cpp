#include "goss/finite_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "goss/error.hpp"

namespace goss {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q) {
    for (std::uint32_t p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        if (!is_prime(p)) break;
        std::uint32_t r = 0, m = q;
        while (m % p == 0) {
            m /= p;
            ++r;
        }
        if (m != 1) break;
        return {p, r};
    }
    throw Unsupported("not a prime power: " + std::to_string(q));
}

namespace {

// Conway polynomials, coefficients low to high.
const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>& conway_table() {
    static const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> table{
        {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},    {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 2}, {2, 2, 1}},          {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},    {{5, 2}, {2, 4, 1}},
        {{7, 2}, {3, 6, 1}},
    };
    return table;
}

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
    std::uint32_t r = 1;
    while (e--) r *= b;
    return r;
}

// Multiplication by y on coordinate vectors, reducing by a monic modulus.
void times_y(std::vector<std::uint32_t>& c, const std::vector<std::uint32_t>& modulus,
             std::uint32_t p) {
    const std::size_t k = c.size();
    const std::uint32_t top = c[k - 1];
    for (std::size_t i = k - 1; i > 0; --i) c[i] = c[i - 1];
    c[0] = 0;
    for (std::size_t i = 0; i < k; ++i)
        c[i] = (c[i] + (p - top) * modulus[i]) % p;
}

std::uint32_t encode(const std::vector<std::uint32_t>& c, std::uint32_t p) {
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return code;
}

// Exp table of y modulo `modulus`; empty when y is not primitive.
std::vector<Elem> primitive_powers(const std::vector<std::uint32_t>& modulus, std::uint32_t p,
                                   std::uint32_t k) {
    const std::uint32_t order = ipow(p, k) - 1;
    std::vector<std::uint32_t> c(k, 0);
    c[0] = 1;
    std::vector<Elem> table;
    table.reserve(order);
    for (std::uint32_t i = 0; i < order; ++i) {
        const Elem code = encode(c, p);
        if (i > 0 && code == 1) return {};
        table.push_back(code);
        times_y(c, modulus, p);
    }
    if (encode(c, p) != 1) return {};
    return table;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k), size_(ipow(p, k)) {
    if (!goss::is_prime(p)) throw Unsupported("characteristic must be prime");
    if (k == 0 || size_ > (1u << 20)) throw Unsupported("field size out of range");
    const std::uint32_t order = size_ - 1;
    std::vector<Elem> powers;
    if (k == 1) {
        for (std::uint32_t g = 1; g < p; ++g) {
            std::vector<Elem> t;
            Elem x = 1;
            bool ok = true;
            for (std::uint32_t i = 0; i < order; ++i) {
                if (i > 0 && x == 1) {
                    ok = false;
                    break;
                }
                t.push_back(x);
                x = static_cast<Elem>((static_cast<std::uint64_t>(x) * g) % p);
            }
            if (ok && x == 1) {
                powers = std::move(t);
                modulus_ = {(p - g) % p, 1};
                break;
            }
        }
    } else {
        auto it = conway_table().find({p, k});
        if (it != conway_table().end()) {
            powers = primitive_powers(it->second, p, k);
            if (!powers.empty()) modulus_ = it->second;
        }
        // Fallback: the lexicographically first primitive polynomial.
        for (std::uint32_t code = 0; powers.empty() && code < size_; ++code) {
            std::vector<std::uint32_t> m(k + 1, 0);
            std::uint32_t c = code;
            for (std::uint32_t i = 0; i < k; ++i) {
                m[i] = c % p;
                c /= p;
            }
            m[k] = 1;
            if (m[0] == 0) continue;
            powers = primitive_powers(m, p, k);
            if (!powers.empty()) modulus_ = m;
        }
    }
    if (powers.size() != order) throw Unsupported("failed to construct finite field");

    exp_.resize(2 * static_cast<std::size_t>(order));
    log_.assign(size_, 0);
    for (std::uint32_t i = 0; i < order; ++i) {
        exp_[i] = exp_[i + order] = powers[i];
        log_[powers[i]] = i;
    }
    neg_.resize(size_);
    for (Elem a = 0; a < size_; ++a) {
        auto c = coords(a);
        for (auto& x : c) x = (p_ - x) % p_;
        neg_[a] = encode(c, p_);
    }
    if (size_ <= 256) {
        add_table_.resize(static_cast<std::size_t>(size_) * size_);
        for (Elem a = 0; a < size_; ++a)
            for (Elem b = 0; b < size_; ++b) add_table_[a * size_ + b] = add_slow(a, b);
    }
}

const FiniteField& FiniteField::get(std::uint32_t p, std::uint32_t k) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{p, k}];
    if (!slot) slot.reset(new FiniteField(p, k));
    return *slot;
}

const FiniteField& FiniteField::of_order(std::uint32_t q) {
    auto [p, r] = prime_power(q);
    return get(p, r);
}

Elem FiniteField::add_slow(Elem a, Elem b) const {
    Elem result = 0, scale = 1;
    while (a != 0 || b != 0) {
        result += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return result;
}

Elem FiniteField::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw ZeroElement("inverse of zero in " + describe());
    const std::uint32_t order = size_ - 1;
    return exp_[(order - log_[a]) % order];
}

Elem FiniteField::pow(Elem a, long long n) const {
    if (n == 0) return 1;
    if (a == 0) {
        if (n < 0) throw ZeroElement("negative power of zero");
        return 0;
    }
    const long long order = size_ - 1;
    long long e = (static_cast<long long>(log_[a]) * (n % order)) % order;
    if (e < 0) e += order;
    return exp_[e];
}

Elem FiniteField::exp(long long n) const {
    const long long order = size_ - 1;
    long long e = n % order;
    if (e < 0) e += order;
    return exp_[e];
}

std::vector<Elem> FiniteField::roots(Elem a, std::uint32_t n) const {
    std::vector<Elem> out;
    if (n == 0) return out;
    if (a == 0) return {0};
    const std::uint32_t order = size_ - 1;
    // x = g^t with n t = log a (mod order)
    for (std::uint32_t t = 0; t < order; ++t)
        if ((static_cast<std::uint64_t>(n) * t) % order == log_[a]) out.push_back(exp_[t]);
    return out;
}

Elem FiniteField::root_of_minus_one(std::uint32_t n) const {
    auto r = roots(neg(1), n);
    if (r.empty())
        throw Unsupported("no " + std::to_string(n) + "-th root of -1 in " + describe());
    return r.front();
}

std::vector<std::uint32_t> FiniteField::coords(Elem a) const {
    std::vector<std::uint32_t> c(k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

std::string FiniteField::to_string(Elem a) const {
    if (k_ == 1) return std::to_string(a);
    auto c = coords(a);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c[i];
        } else {
            if (c[i] != 1) os << c[i] << "*";
            os << "y";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::string FiniteField::describe() const {
    std::ostringstream os;
    os << "F_" << size_;
    if (k_ > 1) {
        os << " = F_" << p_ << "[y]/(";
        bool first = true;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            if (modulus_[i] == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) {
                os << modulus_[i];
            } else {
                if (modulus_[i] != 1) os << modulus_[i] << "*";
                os << "y";
                if (i > 1) os << "^" << i;
            }
        }
        os << ")";
    }
    return os.str();
}

FieldEmbedding::FieldEmbedding(const FiniteField& small, const FiniteField& big)
    : small_(&small), big_(&big) {
    if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0)
        throw FieldMismatch(small.describe() + " does not embed in " + big.describe());
    image_.resize(small.size());
    if (small.is_prime()) {
        for (Elem a = 0; a < small.size(); ++a) image_[a] = a;
        return;
    }
    // Find the root of small's modulus in big with least discrete log.
    const auto& m = small.modulus();
    Elem beta = 0;
    bool found = false;
    for (std::uint32_t t = 0; t + 1 < big.size() && !found; ++t) {
        const Elem x = big.exp(t);
        Elem acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, x), big.from_int(m[i]));
        if (acc == 0) {
            beta = x;
            found = true;
        }
    }
    if (!found) throw FieldMismatch("no root of subfield modulus");
    for (Elem a = 0; a < small.size(); ++a) {
        auto c = small.coords(a);
        Elem acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = big.add(big.mul(acc, beta), big.from_int(c[i]));
        image_[a] = acc;
    }
}

Elem FieldEmbedding::preimage(Elem b) const {
    for (Elem a = 0; a < image_.size(); ++a)
        if (image_[a] == b) return a;
    throw FieldMismatch("element not in the embedded subfield");
}

}  // namespace goss
