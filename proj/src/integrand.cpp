// Gamma-product integrands on vertical lines.  All evaluation goes through
// log space; exponentiation is deferred so truncation bounds and overflow
// checks can work on log magnitudes directly.

#include "mbkit/integrand.hpp"
#include "mbkit/errors.hpp"

#include <cmath>
#include <string>

namespace mbkit {

namespace {

Complex log_power(const GammaProductIntegrand& f, Complex s) {
    if (!f.power_base) return Complex(0.0, 0.0);
    Complex w = *f.power_base;
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw DomainError("integrand: power base lies on the branch cut (-inf, 0]");
    return s * std::log(w);
}

} // namespace

Complex GammaProductIntegrand::log_eval(Complex s) const {
    Complex lg = log_power(*this, s);
    for (const Complex& a : plus_shifts) lg += log_gamma(a + s);
    for (const Complex& b : minus_shifts) lg += log_gamma(b - s);
    for (const Complex& c : den_shifts) lg -= log_gamma(c + s);
    return lg;
}

Complex GammaProductIntegrand::eval(Complex s) const {
    Complex lg = log_eval(s);
    if (lg.real() > kLogOverflow) throw OverflowError("integrand: log-magnitude overflow");
    return std::exp(lg);
}

Complex GammaProductIntegrand::log_eval_skipping(int which, int idx, Complex s) const {
    Complex lg = log_power(*this, s);
    for (std::size_t i = 0; i < plus_shifts.size(); ++i)
        if (!(which == 0 && i == static_cast<std::size_t>(idx))) lg += log_gamma(plus_shifts[i] + s);
    for (std::size_t i = 0; i < minus_shifts.size(); ++i)
        if (!(which == 1 && i == static_cast<std::size_t>(idx))) lg += log_gamma(minus_shifts[i] - s);
    for (const Complex& c : den_shifts) lg -= log_gamma(c + s);
    return lg;
}

DecayRates GammaProductIntegrand::decay_rates() const {
    double arg = 0.0;
    if (power_base) {
        Complex w = *power_base;
        if (w.imag() == 0.0 && w.real() <= 0.0)
            throw DomainError("integrand: power base lies on the branch cut (-inf, 0]");
        arg = std::arg(w);
    }
    return gamma_line_decay(static_cast<int>(plus_shifts.size()),
                            static_cast<int>(minus_shifts.size()),
                            static_cast<int>(den_shifts.size()), arg);
}

std::vector<PoleFamily> pole_families(const GammaProductIntegrand& f) {
    std::vector<PoleFamily> fams;
    fams.reserve(f.plus_shifts.size() + f.minus_shifts.size());
    for (std::size_t i = 0; i < f.plus_shifts.size(); ++i)
        fams.push_back({-f.plus_shifts[i], PoleSide::Left,
                        "gamma(plus[" + std::to_string(i) + "]+s)", static_cast<int>(i)});
    for (std::size_t i = 0; i < f.minus_shifts.size(); ++i)
        fams.push_back({f.minus_shifts[i], PoleSide::Right,
                        "gamma(minus[" + std::to_string(i) + "]-s)", static_cast<int>(i)});
    return fams;
}

} // namespace mbkit
