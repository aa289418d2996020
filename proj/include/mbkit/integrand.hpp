#ifndef MBKIT_INTEGRAND_HPP
#define MBKIT_INTEGRAND_HPP

#include "mbkit/gamma.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mbkit {

// Product of gamma factors along a vertical line in s:
//
//   f(s) = prod_i Gamma(plus[i] + s) * prod_j Gamma(minus[j] - s)
//          / prod_k Gamma(den[k] + s) * power_base^s          (if present)
//
// Evaluation happens in log space and exponentiates once, so individual
// factors may be huge or tiny without overflowing.
struct GammaProductIntegrand {
    std::vector<Complex> plus_shifts;
    std::vector<Complex> minus_shifts;
    std::vector<Complex> den_shifts;
    std::optional<Complex> power_base;  // must avoid (-inf, 0]

    Complex log_eval(Complex s) const;
    Complex eval(Complex s) const;  // OverflowError past the log cap

    // log of the product with one numerator factor left out (for residues):
    // which = 0 skips plus_shifts[idx], which = 1 skips minus_shifts[idx].
    Complex log_eval_skipping(int which, int idx, Complex s) const;

    DecayRates decay_rates() const;
};

enum class PoleSide { Left, Right };

// Gamma(alpha+s) contributes the left family {-alpha - n : n >= 0} (base
// -alpha); Gamma(beta-s) the right family {beta + n : n >= 0} (base beta).
// Denominator factors contribute no poles.
struct PoleFamily {
    Complex base;      // n = 0 member
    PoleSide side;
    std::string source;  // which factor generates it, e.g. "gamma(plus[0]+s)"
    int factor_index;    // index into plus_shifts / minus_shifts
};

std::vector<PoleFamily> pole_families(const GammaProductIntegrand& f);

} // namespace mbkit

#endif
