#include "goss/special_values.hpp"

#include <algorithm>
#include <limits>

#include "goss/error.hpp"
#include "goss/parallel.hpp"

namespace goss {

namespace {

constexpr long kUnbounded = std::numeric_limits<long>::max() / 4;

std::uint64_t upow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

bool is_absent(const LaurentElem& x) { return x.is_zero() && x.precision() >= kUnbounded / 2; }

long valuation_or_precision(const LaurentElem& x) { return x.is_zero() ? x.precision() : x.valuation(); }

}  // namespace

// ---------------------------------------------------------------- characters

DirichletCharacter::DirichletCharacter(const RingElem& prime, std::uint64_t j, const FiniteField& target)
    : map_(std::make_shared<ResidueMap>(prime, target)), j_(0), order_(0) {
    order_ = map_->residue_count() - 1;
    j_ = j % order_;
}

DirichletCharacter DirichletCharacter::parse(const Ring& ring, const std::string& text, const FiniteField& target) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon + 1 == text.size())
        throw ParseError("character '" + text + "' is not of the form prime:j");
    const std::string js = text.substr(colon + 1);
    if (!std::all_of(js.begin(), js.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("character exponent '" + js + "' is not a non-negative integer");
    return DirichletCharacter(RingElem::parse(ring, text.substr(0, colon)), std::stoull(js), target);
}

Elem DirichletCharacter::operator()(const RingElem& a) const {
    const Elem x = (*map_)(a);
    if (x == 0) return 0;
    return map_->field().pow(x, static_cast<long long>(j_));
}

DirichletCharacter DirichletCharacter::inverse() const {
    DirichletCharacter r = *this;
    r.j_ = (order_ - j_) % order_;
    return r;
}

std::string DirichletCharacter::label() const { return prime().to_string() + ":" + std::to_string(j_); }

Elem char_eval(const DirichletCharacter& chi, const RingElem& a) { return chi(a); }

// ---------------------------------------------------------------- prime data

const PrimeData& PrimeData::get(const DrinfeldModule& rho, const RingElem& prime, const LocalField& L) {
    static std::mutex mutex;
    static std::map<std::tuple<const DrinfeldModule*, const LocalField*, std::string>, std::unique_ptr<PrimeData>>
        cache;
    const auto key = std::make_tuple(&rho, &L, prime.to_string());
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    std::unique_ptr<PrimeData> fresh(new PrimeData(rho, torsion_points(rho, prime, L), L));
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[key];
    if (!slot) slot = std::move(fresh);
    return *slot;
}

PrimeData::PrimeData(const DrinfeldModule& rho, TorsionTable torsion, const LocalField& L)
    : rho_(&rho), torsion_(std::move(torsion)), field_(&L) {}

long PrimeData::degree_cap() const { return 3 * field_->precision() / static_cast<long>(field_->ramification()) + 20; }

const std::vector<LaurentElem>& PrimeData::block(long D, long s) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = blocks_.find({D, s});
        if (it != blocks_.end()) return it->second;
    }
    const LocalField& L = *field_;
    const auto monics = monic_elements(module().ring(), D);
    std::vector<LaurentElem> sums;
    if (!monics.empty()) {
        struct Term {
            std::size_t cls;
            LaurentElem inv;
        };
        std::vector<Term> terms = parallel_map<Term>(monics.size(), [&](std::size_t i) {
            return Term{map().class_index(monics[i]), L.embed(monics[i]).pow(s).inverse()};
        });
        sums.assign(map().representatives().size(), LaurentElem::zero_to(L, kUnbounded));
        for (const auto& t : terms) sums[t.cls] += t.inv;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return blocks_.emplace(std::make_pair(D, s), std::move(sums)).first->second;
}

SeriesResult PrimeData::weighted_sum(const std::vector<LaurentElem>& weights, long s) const {
    const LocalField& L = *field_;
    if (weights.size() != map().representatives().size())
        throw Error("InvalidArgument", "one weight per residue class is required");
    SeriesResult out{LaurentElem::zero_to(L, kUnbounded), 0, {0, 0}};
    if (std::all_of(weights.begin(), weights.end(), [](const LaurentElem& w) { return w.is_zero(); })) {
        out.value = LaurentElem::zero_to(L, L.precision());
        return out;
    }
    int quiet = 0;
    bool started = false;
    for (long D = 0; D <= degree_cap(); ++D) {
        const auto& blk = block(D, s);
        LaurentElem inc = LaurentElem::zero_to(L, kUnbounded);
        bool any = false;
        for (std::size_t r = 0; r < blk.size(); ++r) {
            if (weights[r].is_zero() || is_absent(blk[r])) continue;
            inc += weights[r] * blk[r];
            any = true;
        }
        if (!any) continue;
        out.value += inc;
        out.degree_cutoff = D;
        out.last_increments[0] = out.last_increments[1];
        out.last_increments[1] = valuation_or_precision(inc);
        const bool below = out.last_increments[1] >= out.value.precision();
        if (started && below) {
            if (++quiet == 2) return out;
        } else {
            quiet = 0;
        }
        started = started || !out.value.is_zero();
    }
    throw NoStabilization("series mod " + prime().pretty() + " did not stabilize by degree " +
                          std::to_string(degree_cap()));
}

// ---------------------------------------------------------------- series

SeriesResult goss_l_value(const DrinfeldModule& rho, const DirichletCharacter& chi, long s, const LocalField& L) {
    if (s < 1) throw Error("InvalidArgument", "s must be positive");
    if (&chi.target() != &L.constants())
        throw FieldMismatch("character values lie in " + chi.target().describe() + ", not in " +
                            L.constants().describe());
    const PrimeData& data = PrimeData::get(rho, chi.prime(), L);
    std::vector<LaurentElem> w;
    for (const auto& r : data.map().representatives()) w.push_back(L.constant(chi(r)));
    return data.weighted_sum(w, s);
}

SeriesResult lambda_value(const DrinfeldModule& rho, std::uint64_t m, const RingElem& b, const RingElem& prime,
                          const LocalField& L) {
    const PrimeData& data = PrimeData::get(rho, prime, L);
    std::vector<LaurentElem> w;
    for (const auto& r : data.map().representatives()) {
        const LaurentElem& x = data.point(r * b);
        w.push_back(m == 0 ? L.one() : x.is_zero() ? x : x.pow(static_cast<long>(m)));
    }
    return data.weighted_sum(w);
}

SeriesResult partial_zeta(const DrinfeldModule& rho, const RingElem& a, const RingElem& b, const RingElem& prime,
                          const LocalField& L) {
    const PrimeData& data = PrimeData::get(rho, prime, L);
    const ResidueMap& map = data.map();
    if (map(a) == 0 || map(b) == 0) throw Error("InvalidArgument", "a and b must be prime to " + prime.pretty());
    std::vector<LaurentElem> w;
    for (const auto& r : map.representatives())
        w.push_back(map(r * b) == map(a) ? L.one() : LaurentElem::zero_to(L, kUnbounded));
    return data.weighted_sum(w);
}

// ---------------------------------------------------------------- dual coefficients

namespace {

// Gauss-Jordan on [M | R]; returns X with M X = R.
std::vector<std::vector<LaurentElem>> solve_multi(std::vector<std::vector<LaurentElem>> M,
                                                  std::vector<std::vector<LaurentElem>> R, long* det_valuation) {
    const std::size_t n = M.size();
    long det = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        for (std::size_t row = col; row < n; ++row) {
            if (M[row][col].is_zero()) continue;
            if (best == n || M[row][col].valuation() < M[best][col].valuation()) best = row;
        }
        if (best == n)
            throw SingularSystem("pivot " + std::to_string(col) + " vanishes to working precision");
        std::swap(M[col], M[best]);
        std::swap(R[col], R[best]);
        const LaurentElem inv = M[col][col].inverse();
        det += M[col][col].valuation();
        for (auto& x : M[col]) x = x * inv;
        for (auto& x : R[col]) x = x * inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || M[row][col].is_zero()) continue;
            const LaurentElem f = M[row][col];
            for (std::size_t k = 0; k < n; ++k) M[row][k] -= f * M[col][k];
            for (std::size_t k = 0; k < R[row].size(); ++k) R[row][k] -= f * R[col][k];
        }
    }
    if (det_valuation) *det_valuation = det;
    return R;
}

}  // namespace

std::vector<LaurentElem> solve_linear(std::vector<std::vector<LaurentElem>> M, std::vector<LaurentElem> rhs) {
    if (M.size() != rhs.size()) throw Error("InvalidArgument", "system shape mismatch");
    std::vector<std::vector<LaurentElem>> R;
    for (auto& x : rhs) R.push_back({std::move(x)});
    auto X = solve_multi(std::move(M), std::move(R), nullptr);
    std::vector<LaurentElem> out;
    for (auto& row : X) out.push_back(std::move(row[0]));
    return out;
}

std::size_t DualCoeffTable::index_of(const RingElem& a) const {
    const std::size_t k = map_->class_index(a);
    if (k == 0) throw Error("InvalidArgument", prime.pretty() + " divides " + a.pretty());
    return k - 1;
}

DualCoeffTable dual_coeffs(const DrinfeldModule& rho, const RingElem& prime, const LocalField& L) {
    const PrimeData& data = PrimeData::get(rho, prime, L);
    const std::size_t n = data.unit_count();
    DualCoeffTable T(prime);
    T.map_ = std::make_shared<ResidueMap>(data.map());
    const auto& reps = data.map().representatives();
    for (std::size_t k = 1; k <= n; ++k) {
        T.residues.push_back(reps[k]);
        T.nodes.push_back(data.torsion().points[k]);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (residual(T.nodes[i], T.nodes[j]) >= T.nodes[i].relative_precision())
                throw SingularSystem("torsion nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                     " coincide to working precision");
    // row b: sum_m e*_m(a) x_b^m = prime delta_ab, i.e. X E^T = prime I
    std::vector<std::vector<LaurentElem>> X(n), R(n);
    const LaurentElem p = L.embed(prime);
    for (std::size_t b = 0; b < n; ++b) {
        LaurentElem xp = T.nodes[b];
        for (std::size_t m = 0; m < n; ++m) {
            X[b].push_back(xp);
            xp = xp * T.nodes[b];
        }
        for (std::size_t a = 0; a < n; ++a) R[b].push_back(a == b ? p : LaurentElem::zero_to(L, kUnbounded));
    }
    const auto E = solve_multi(X, R, &T.determinant_valuation);  // E[m][a]
    T.coeffs.assign(n, {});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t m = 0; m < n; ++m) T.coeffs[a].push_back(E[m][a]);
    long worst = kUnbounded;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            LaurentElem s = LaurentElem::zero_to(L, kUnbounded);
            for (std::size_t m = 0; m < n; ++m) s += T.coeffs[a][m] * X[b][m];
            worst = std::min(worst, a == b ? residual(s, p) : residual_from(s, p.valuation()));
        }
    }
    T.relation_residual = worst;
    return T;
}

LFromLambdas l_from_lambdas(const DirichletCharacter& chi, const DualCoeffTable& table,
                            const std::vector<LaurentElem>& lambdas) {
    const std::size_t n = table.size();
    if (lambdas.size() != n) throw Error("InvalidArgument", "need lambda_m for 1 <= m <= q^d - 1");
    if (chi.prime() != table.prime) throw Error("InvalidArgument", "character and table use different primes");
    const LocalField& L = lambdas.front().field();
    const LaurentElem pinv = L.embed(table.prime).inverse();
    LFromLambdas out{LaurentElem::zero_to(L, kUnbounded), {}};
    for (std::size_t m = 0; m < n; ++m) {
        LaurentElem r = LaurentElem::zero_to(L, kUnbounded);
        for (std::size_t a = 0; a < n; ++a) {
            const Elem c = chi(table.residues[a]);
            if (c != 0) r += table.coeffs[a][m].scaled(c);
        }
        r = r * pinv;
        out.value += r * lambdas[m];
        out.root_numbers.push_back(std::move(r));
    }
    return out;
}

LaurentElem lambda_from_ls(std::uint64_t m, const PrimeData& data, const std::vector<LaurentElem>& l_values,
                           long* term_valuation) {
    const std::size_t n = data.unit_count();
    if (l_values.size() != n) throw Error("InvalidArgument", "need L(1, chi^j) for 0 <= j < q^d - 1");
    const LocalField& L = data.field();
    const FiniteField& F = L.constants();
    const auto& reps = data.map().representatives();
    LaurentElem acc = LaurentElem::zero_to(L, kUnbounded);
    long least = kUnbounded;
    for (std::size_t j = 0; j < n; ++j) {
        const DirichletCharacter chi_inv = DirichletCharacter(data.prime(), j, F).inverse();
        LaurentElem g = LaurentElem::zero_to(L, kUnbounded);
        for (std::size_t k = 1; k <= n; ++k)
            g += data.torsion().points[k].pow(static_cast<long>(m)).scaled(chi_inv(reps[k]));
        const LaurentElem term = g * l_values[j];
        if (!term.is_zero()) least = std::min(least, term.valuation());
        acc += term;
    }
    if (term_valuation) *term_valuation = least;
    // orthogonality produces (q^d - 1) lambda_m
    const Elem count = F.from_int(static_cast<long long>(n % F.characteristic()));
    return acc.scaled(F.inv(count));
}

// ---------------------------------------------------------------- rank

std::uint64_t rank_formula(std::uint64_t q, std::uint64_t d) {
    if (q < 2 || d < 1) throw Error("InvalidArgument", "need q >= 2 and d >= 1");
    return (upow(q, d) - 1) * (q - 2) / (q - 1);
}

RankSet rank_set(std::uint64_t q, std::uint64_t d) {
    if (q < 2 || d < 1) throw Error("InvalidArgument", "need q >= 2 and d >= 1");
    prime_power(static_cast<std::uint32_t>(q));
    RankSet out;
    out.members.push_back(1);
    const std::uint64_t top = upow(q, d) - 1;
    for (std::uint64_t m = 2; m <= top; ++m)
        if (m % (q - 1) != 1 % (q - 1)) out.members.push_back(m);
    out.rank = out.members.size() - 1;
    return out;
}

}  // namespace goss
