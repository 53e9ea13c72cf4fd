#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "goss/laurent.hpp"
#include "goss/ring.hpp"
#include "goss/twisted.hpp"

namespace goss {

using RingTwisted = TwistedPoly<RingElem>;
using FracTwisted = TwistedPoly<FractionElem>;
using LaurentTwisted = TwistedPoly<LaurentElem>;

/// The local field used for analytic work over a ring: constants F_{q^2} and
/// ramification q - 1 for A0 (so (-t)^(1/(q-1)) exists), e = 2 for A1.
const LocalField& standard_field(const Ring& ring, long precision);

enum class PeriodMethod { Product, TorsionLog };

/// The sgn-normalized rank one Drinfeld module of a supported ring: the
/// Carlitz module on A0 and the Hayes module on A1. Interned per ring;
/// coefficient tables are extended lazily and shared between threads.
class DrinfeldModule {
public:
    static const DrinfeldModule& get(const Ring& ring);

    const Ring& ring() const { return *ring_; }
    std::uint32_t q() const { return ring_->q(); }
    std::string name() const;

    const RingTwisted& rho_theta() const { return rho_theta_; }
    /// Throws Unsupported for A0.
    const RingTwisted& rho_eta() const;
    /// rho_a = p(rho_t) + r(rho_t) rho_e for a = p + r e.
    RingTwisted rho(const RingElem& a) const;
    /// rho_a(x) for x in a local field.
    LaurentElem apply(const RingElem& a, const LaurentElem& x) const;

    /// e_0 .. e_{count-1} and l_0 .. l_{count-1} as exact elements of K.
    std::vector<FractionElem> exp_coeffs(std::size_t count) const;
    std::vector<FractionElem> log_coeffs(std::size_t count) const;
    /// The same coefficients from the recursions run in L.
    std::vector<LaurentElem> exp_coeffs(const LocalField& L, std::size_t count) const;
    std::vector<LaurentElem> log_coeffs(const LocalField& L, std::size_t count) const;

    /// exp(z) summed until the terms pass the working precision.
    LaurentElem exp(const LaurentElem& z) const;
    /// log(z); throws DivergentInput unless |z| < |period|.
    LaurentElem log(const LaurentElem& z) const;

    /// |period| as an exact power of q: q^(q/(q-1)) for A0, 3^(-3/2) for A1.
    QPower period_abs() const;
    /// Leading coefficient fixed for the period: the (q-1)-th root of -1
    /// with smallest discrete logarithm in the constant field.
    Elem period_lead(const LocalField& L) const;

    /// TorsionLog: prime t, period = t * log(smallest nonzero root of rho_t),
    /// rescaled by F_q^* to the pinned leading coefficient. Product: the
    /// classical product for A0 and the degree-grouped product for A1.
    LaurentElem period(PeriodMethod method, const LocalField& L) const;

    /// Nonzero roots of rho_prime of largest valuation, found from the first
    /// Newton polygon segment and refined by the additive Newton step.
    std::vector<LaurentElem> smallest_torsion_roots(const RingElem& prime, const LocalField& L) const;

    DrinfeldModule(const DrinfeldModule&) = delete;
    DrinfeldModule& operator=(const DrinfeldModule&) = delete;

private:
    explicit DrinfeldModule(const Ring& ring);
    struct LocalCache {
        std::vector<LaurentElem> e, l;
        std::optional<LaurentTwisted> rho_theta;
        std::map<int, LaurentElem> periods;
    };
    LocalCache& cache_for(const LocalField& L) const;
    LaurentElem period_product(const LocalField& L) const;
    LaurentElem period_torsion_log(const LocalField& L) const;
    LaurentElem theta_power_gap(const LocalField& L, std::size_t i) const;

    const Ring* ring_;
    RingTwisted rho_theta_;
    std::optional<RingTwisted> rho_eta_;
    mutable std::mutex mutex_;
    mutable std::vector<FractionElem> exact_e_, exact_l_;
    mutable std::map<const LocalField*, std::unique_ptr<LocalCache>> local_;
};

/// Additive Newton refinement of a root of rho_prime: x <- x - rho_prime(x)/prime.
LaurentElem refine_torsion_root(const DrinfeldModule& rho, const RingElem& prime, const LaurentElem& seed);

/// Torsion points e(b/prime) = exp(period * b/prime) indexed like the
/// residue representatives of `map` (index 0 is the zero class).
struct TorsionTable {
    RingElem prime;
    ResidueMap map;
    LaurentElem period;
    std::vector<LaurentElem> points;
    /// Smallest residual among the cross-checks rho_prime(x) = 0,
    /// x = rho_b(e(1/prime)) and the Newton refinement of x.
    long cross_check = 0;

    const LaurentElem& at(const RingElem& b) const { return points[map.class_index(b)]; }
};

TorsionTable torsion_points(const DrinfeldModule& rho, const RingElem& prime, const LocalField& L);

/// Digits of agreement counted from the given reference valuation.
long residual_from(const LaurentElem& x, long reference_valuation);

}  // namespace goss
