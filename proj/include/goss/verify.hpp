#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goss/ring.hpp"

namespace goss {

struct VerifyOptions {
    long precision = 80;
    long guard = 10;
    /// Extra working digits absorbing cancellation; negative means precision / 2.
    long headroom = -1;

    long working() const { return precision + guard + (headroom < 0 ? precision / 2 : headroom); }
    long required() const { return precision - guard; }
};

struct Check {
    std::string id;
    /// The identity being checked, in words and symbols.
    std::string anchor;
    /// Residual valuation; empty for exact checks (absolute values, counts).
    std::optional<long> residual;
    long required = 0;
    bool pass = false;
    /// Non-gating checks are reported but do not affect passed().
    bool gating = true;
    std::string note;
};

struct VerificationReport {
    std::string title;
    VerifyOptions options;
    std::vector<Check> checks;

    bool passed() const;
    const Check* find(const std::string& id) const;
};

/// Worked examples: 1 (Carlitz, prime t), 2 (Carlitz, prime t^2+1),
/// 3 (Hayes module over A1, prime t).
VerificationReport verify_example(int example, const VerifyOptions& opts = {});

/// Identities at one prime: lambda_1 = period/prime, exp(lambda_m) = S_m(e(1/prime), 1)
/// for 1 <= m <= q^d - 1, the dual-coefficient relations, partial zeta values,
/// L(1, chi) from lambdas, lambdas from L-values, the round trip, and |L(1, chi)| = 1.
VerificationReport verify_prime(const Ring& ring, const RingElem& prime, const VerifyOptions& opts = {});

}  // namespace goss
