#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "goss/drinfeld.hpp"
#include "goss/laurent.hpp"
#include "goss/ring.hpp"

namespace goss {

/// chi^j where chi is the canonical character A -> (A/prime)^* -> F,
/// F the constant field of the working local field.
class DirichletCharacter {
public:
    DirichletCharacter(const RingElem& prime, std::uint64_t j, const FiniteField& target);
    /// "t^2+1:3" -> (prime t^2+1, j = 3).
    static DirichletCharacter parse(const Ring& ring, const std::string& text, const FiniteField& target);

    const RingElem& prime() const { return map_->prime(); }
    std::uint64_t exponent() const { return j_; }
    /// q^d - 1, the order of the character group.
    std::uint64_t group_order() const { return order_; }
    const ResidueMap& map() const { return *map_; }
    const FiniteField& target() const { return map_->field(); }
    bool is_trivial() const { return j_ == 0; }

    /// chi(a); 0 when prime | a.
    Elem operator()(const RingElem& a) const;
    /// chi^(-1) = chi^(order - j).
    DirichletCharacter inverse() const;
    std::string label() const;

private:
    std::shared_ptr<const ResidueMap> map_;
    std::uint64_t j_;
    std::uint64_t order_;
};

Elem char_eval(const DirichletCharacter& chi, const RingElem& a);

/// A sum over A_+ grouped by degree, with the data used to stop.
struct SeriesResult {
    LaurentElem value;
    /// Largest degree included.
    long degree_cutoff = 0;
    /// Valuations of the last two nonempty block increments (precision when
    /// the increment vanishes to precision).
    long last_increments[2] = {0, 0};
};

/// Torsion points and residue-class block sums sum_{a monic, deg a = D,
/// a = r mod prime} 1/a^s for one prime in one local field. Interned.
class PrimeData {
public:
    static const PrimeData& get(const DrinfeldModule& rho, const RingElem& prime, const LocalField& L);

    const DrinfeldModule& module() const { return *rho_; }
    const RingElem& prime() const { return torsion_.prime; }
    const LocalField& field() const { return *field_; }
    const TorsionTable& torsion() const { return torsion_; }
    const ResidueMap& map() const { return torsion_.map; }
    /// q^d - 1.
    std::size_t unit_count() const { return torsion_.points.size() - 1; }
    /// e(b/prime) for any b.
    const LaurentElem& point(const RingElem& b) const { return torsion_.at(b); }

    /// Block of degree D for exponent s, indexed like map().representatives();
    /// empty when A has no monics of degree D.
    const std::vector<LaurentElem>& block(long D, long s = 1) const;
    /// Largest degree tried before NoStabilization: 3N/e + 20.
    long degree_cap() const;

    /// sum over monic a of weights[class of a] / a^s, block by block until two
    /// consecutive nonempty increments vanish to the precision of the sum.
    SeriesResult weighted_sum(const std::vector<LaurentElem>& weights, long s = 1) const;

    PrimeData(const PrimeData&) = delete;
    PrimeData& operator=(const PrimeData&) = delete;

private:
    PrimeData(const DrinfeldModule& rho, TorsionTable torsion, const LocalField& L);
    const DrinfeldModule* rho_;
    TorsionTable torsion_;
    const LocalField* field_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<long, long>, std::vector<LaurentElem>> blocks_;
};

/// L(s, chi) = sum_{a in A_+} chi(a)/a^s. Throws NoStabilization past the cap.
SeriesResult goss_l_value(const DrinfeldModule& rho, const DirichletCharacter& chi, long s, const LocalField& L);

/// lambda_m(b/prime) = sum_{a in A_+} e(ab/prime)^m / a, with 0^0 = 1.
SeriesResult lambda_value(const DrinfeldModule& rho, std::uint64_t m, const RingElem& b, const RingElem& prime,
                          const LocalField& L);

/// sum_{n in A_+, b n = a mod prime} 1/n.
SeriesResult partial_zeta(const DrinfeldModule& rho, const RingElem& a, const RingElem& b, const RingElem& prime,
                          const LocalField& L);

/// Dual coefficients e*_m(a), 1 <= m <= q^d - 1, for the nonzero residue
/// classes a (index k - 1 for representatives()[k]).
struct DualCoeffTable {
    explicit DualCoeffTable(RingElem p) : prime(std::move(p)) {}

    RingElem prime;
    std::vector<RingElem> residues;
    /// nodes[k] = e(residues[k]/prime)
    std::vector<LaurentElem> nodes;
    /// coeffs[k][m - 1] = e*_m(residues[k])
    std::vector<std::vector<LaurentElem>> coeffs;
    /// Valuation of the determinant of (nodes[k]^m).
    long determinant_valuation = 0;
    /// Smallest residual of sum_m e*_m(a) e(b/prime)^m = prime * delta_ab
    /// over all pairs, measured from the valuation of prime.
    long relation_residual = 0;

    std::size_t size() const { return residues.size(); }
    /// Index of the class of a among residues; throws if prime | a.
    std::size_t index_of(const RingElem& a) const;

private:
    friend DualCoeffTable dual_coeffs(const DrinfeldModule&, const RingElem&, const LocalField&);
    std::shared_ptr<const ResidueMap> map_;
};

/// Throws SingularSystem when a pivot vanishes to precision.
DualCoeffTable dual_coeffs(const DrinfeldModule& rho, const RingElem& prime, const LocalField& L);

/// Solves M x = rhs by Gaussian elimination, pivoting on the entry of least
/// valuation. Rows of M are equations. Throws SingularSystem.
std::vector<LaurentElem> solve_linear(std::vector<std::vector<LaurentElem>> M, std::vector<LaurentElem> rhs);

/// L(1, chi) = sum_m r_m lambda_m(1/prime) with root numbers
/// r_m = (1/prime) sum_a chi(a) e*_m(a).
struct LFromLambdas {
    LaurentElem value;
    std::vector<LaurentElem> root_numbers;
};
/// lambdas[m - 1] = lambda_m(1/prime) for 1 <= m <= q^d - 1.
LFromLambdas l_from_lambdas(const DirichletCharacter& chi, const DualCoeffTable& table,
                            const std::vector<LaurentElem>& lambdas);

/// lambda_m(1/prime) = (1/(q^d - 1)) sum_chi (sum_a chi^(-1)(a) e(a/prime)^m) L(1, chi).
/// l_values[j] = L(1, chi^j) for 0 <= j < q^d - 1; chi is the canonical
/// character into the constant field of the points. term_valuation, when
/// given, receives the least valuation of the summands, the scale against
/// which a vanishing result is measured.
LaurentElem lambda_from_ls(std::uint64_t m, const PrimeData& data, const std::vector<LaurentElem>& l_values,
                           long* term_valuation = nullptr);

/// N = {1} u {1 < m <= q^d - 1 : m != 1 mod (q - 1)} and rank #N - 1.
struct RankSet {
    std::vector<std::uint64_t> members;
    std::uint64_t rank = 0;
};
RankSet rank_set(std::uint64_t q, std::uint64_t d);
/// (q^d - 1)(q - 2)/(q - 1).
std::uint64_t rank_formula(std::uint64_t q, std::uint64_t d);

}  // namespace goss
