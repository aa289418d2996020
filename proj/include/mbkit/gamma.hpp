#ifndef MBKIT_GAMMA_HPP
#define MBKIT_GAMMA_HPP

#include <complex>

namespace mbkit {

using Complex = std::complex<double>;

// Absolute half-width of the band around non-positive integers that is
// treated as "sitting on a pole" by admissibility checks.
inline constexpr double kAdmissibleTol = 1e-12;

// Log-magnitude cap: exp() of anything above this raises OverflowError
// instead of producing Inf.
inline constexpr double kLogOverflow = 700.0;

struct Admissibility {
    Complex value;
    bool admissible;  // false iff value is a non-positive integer within kAdmissibleTol
};

Admissibility admissibility(Complex z);
bool is_admissible(Complex z);

// True when z is within tol of a real integer; *out receives the integer.
bool near_integer(Complex z, double tol, long* out = nullptr);

// Principal branch of log Gamma: analytic on C minus (-inf,0], real on (0,inf),
// on the cut the limit from above. Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

// exp(log_gamma(z)); OverflowError once |log Gamma| exceeds kLogOverflow.
Complex gamma(Complex z);

// 1/Gamma, entire: exactly zero at non-positive integers (within kAdmissibleTol).
Complex reciprocal_gamma(Complex z);

// Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1.
Complex pochhammer(Complex x, int n);

struct DecayRates {
    double up;    // exponential decay rate of the integrand as Im s -> +inf
    double down;  // ... as Im s -> -inf
};

// Vertical-line decay of a gamma-product integrand with num_plus factors
// Gamma(a_i+s), num_minus factors Gamma(b_j-s), den factors Gamma(c_k+s) in the
// denominator, and an optional power z^s with arg z = arg_z:
//   up   = (pi/2)(num_plus + num_minus - den) + arg_z
//   down = (pi/2)(num_plus + num_minus - den) - arg_z
DecayRates gamma_line_decay(int num_plus, int num_minus, int den, double arg_z);

} // namespace mbkit

#endif
