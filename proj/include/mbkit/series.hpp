#ifndef MBKIT_SERIES_HPP
#define MBKIT_SERIES_HPP

#include "mbkit/gamma.hpp"

namespace mbkit {

// Parameters of 2F1(a, b; c; z).  c must be admissible unless the series
// terminates (a or b a non-positive integer) before any zero of (c)_k; that
// terminating escape is only accepted for all-real parameters.
struct HypParams {
    Complex a, b, c;
};

void validate(const HypParams& p);

// -1 when neither a nor b is a non-positive integer; otherwise the smallest
// m >= 0 with a = -m or b = -m (series terminates at k = m).
int termination_index(const HypParams& p);

enum class SeriesStatus {
    Converged,       // tail passed the tolerance test
    Terminated,      // finite sum, exact termination
    NearUnitCircle,  // converged, but 1 - 1e-3 <= |z| < 1: slow tail
};

struct SeriesResult {
    Complex value;
    int terms;  // number of summed terms
    SeriesStatus status;
    double tail = 0.0;  // |last term| / max(|sum|, 1); 0 for terminated sums
};

// Power series sum of 2F1 inside the unit disc (or a terminating sum
// anywhere).  Stops once three consecutive terms fall below tol * |sum|.
// The result is within tol/(1-|z|) of the true value for |z| < 1.
SeriesResult f21_series_full(const HypParams& p, Complex z, double tol);
Complex f21_series(const HypParams& p, Complex z, double tol = 1e-12);

// Value of 2F1 at z = 1 as a gamma ratio:
//   Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
// requiring Re(c-a-b) > 0 or a terminating series (then evaluated as the
// equivalent pochhammer ratio, which tolerates poles of Gamma(c-a-b)).
Complex gauss_sum(const HypParams& p);

// Rice polynomial H_n(xi, p; v) = sum_j (-n)_j (n+1)_j (xi)_j / (j!^2 (p)_j) v^j.
struct RiceParams {
    Complex xi, p, v;
    int n;
};
Complex rice_poly(const RiceParams& rp);

// | sum_{n<=N} t^n H_n(xi,p;v) - (1-t)^{-1} 2F1(xi, 1/2; p; -4vt/(1-t)^2) |.
// Requires |t| < 0.3 and |4vt/(1-t)^2| < 1.
double rice_generating_check(Complex xi, Complex p, Complex v, Complex t, int N,
                             double tol = 1e-12);

// Max |H_n| over n <= N, for the generating-function tail bound
// 2 |t|^{N+1} / (1-|t|) * max_n |H_n|.
double rice_poly_max(Complex xi, Complex p, Complex v, int N);

// 3F2(a1,a2,a3; b1,b2; 1) by direct summation.  Terms decay like
// n^{-1-rho}, rho = b1+b2-a1-a2-a3; requires Re rho > 0 unless terminating.
// A Hurwitz-zeta style tail estimate is added so the result is accurate to
// ~tol even though the decay is only algebraic.
Complex hyp3f2_unit(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2,
                    double tol = 1e-12);

} // namespace mbkit

#endif
