#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace goss {

/// Polynomial sum c_i tau^i in the twisted ring C{tau}, where tau c = c^q tau.
/// C must provide +, -, *, is_zero() and frobenius(n) (x -> x^n for n a
/// power of the characteristic).
template <class C>
class TwistedPoly {
public:
    TwistedPoly(C zero, std::uint64_t q) : zero_(std::move(zero)), q_(q) {}
    TwistedPoly(std::vector<C> coeffs, C zero, std::uint64_t q)
        : c_(std::move(coeffs)), zero_(std::move(zero)), q_(q) {
        trim();
    }

    std::uint64_t q() const { return q_; }
    const std::vector<C>& coeffs() const { return c_; }
    /// tau-degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const C& coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
    const C& zero_coeff() const { return zero_; }

    friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
        std::vector<C> r;
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) + b.coeff(i));
        return TwistedPoly(std::move(r), a.zero_, a.q_);
    }
    friend TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) {
        std::vector<C> r;
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) - b.coeff(i));
        return TwistedPoly(std::move(r), a.zero_, a.q_);
    }
    /// (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^(q^i) tau^(i+j)
    friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
        if (a.is_zero() || b.is_zero()) return TwistedPoly(a.zero_, a.q_);
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        std::uint64_t qi = 1;
        for (std::size_t i = 0; i < a.c_.size(); ++i, qi *= a.q_) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j].frobenius(qi);
            }
        }
        return TwistedPoly(std::move(r), a.zero_, a.q_);
    }
    TwistedPoly& operator+=(const TwistedPoly& o) { return *this = *this + o; }
    TwistedPoly& operator*=(const TwistedPoly& o) { return *this = *this * o; }

    /// Left multiplication by a scalar.
    TwistedPoly scaled(const C& s) const {
        std::vector<C> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(s * c);
        return TwistedPoly(std::move(r), zero_, q_);
    }

    /// sum c_i x^(q^i)
    C operator()(const C& x) const {
        C acc = zero_;
        C xp = x;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) xp = xp.frobenius(q_);
            if (!c_[i].is_zero()) acc = acc + c_[i] * xp;
        }
        return acc;
    }

    /// Coefficientwise change of domain.
    template <class F>
    auto map(F&& f, decltype(f(std::declval<const C&>())) zero) const {
        using D = decltype(f(std::declval<const C&>()));
        std::vector<D> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(f(c));
        return TwistedPoly<D>(std::move(r), std::move(zero), q_);
    }

    friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    /// "t + (e^3+e)*T + T^2" with a caller-supplied coefficient printer.
    std::string to_string(const std::function<std::string(const C&)>& show) const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = show(c_[i]);
            if (i == 0) {
                s += cs;
                continue;
            }
            if (cs != "1") s += (cs.find_first_of("+-") != std::string::npos ? "(" + cs + ")" : cs) + "*";
            s += "T";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<C> c_;
    C zero_;
    std::uint64_t q_;
};

}  // namespace goss
