// Power-series evaluators: 2F1 inside the unit disc, the gamma-ratio value
// at z=1, Rice polynomials, and 3F2 at unit argument with an algebraic-tail
// estimate.

#include "mbkit/series.hpp"
#include "mbkit/errors.hpp"

#include <cmath>

namespace mbkit {

namespace {

// Smallest m >= 0 with x = -m (within the admissibility band), else -1.
int nonpositive_int_index(Complex x) {
    long k = 0;
    if (near_integer(x, kAdmissibleTol, &k) && k <= 0) return static_cast<int>(-k);
    return -1;
}

bool all_real(const HypParams& p) {
    return std::abs(p.a.imag()) <= kAdmissibleTol && std::abs(p.b.imag()) <= kAdmissibleTol &&
           std::abs(p.c.imag()) <= kAdmissibleTol;
}

Complex exp_checked(Complex lg, const char* where) {
    if (lg.real() > kLogOverflow) throw OverflowError(std::string(where) + ": log-magnitude overflow");
    return std::exp(lg);
}

} // namespace

int termination_index(const HypParams& p) {
    int ma = nonpositive_int_index(p.a);
    int mb = nonpositive_int_index(p.b);
    if (ma < 0) return mb;
    if (mb < 0) return ma;
    return std::min(ma, mb);
}

void validate(const HypParams& p) {
    if (is_admissible(p.c)) return;
    // c pinned to a non-positive integer: only a real terminating series that
    // stops before the first zero of (c)_k makes sense.
    int m = termination_index(p);
    if (m < 0)
        throw NonAdmissibleError("2F1: c is a non-positive integer and the series does not terminate");
    if (!all_real(p))
        throw NonAdmissibleError("2F1: non-admissible c accepted only for real parameters");
    long L = -static_cast<long>(std::llround(p.c.real()));
    if (L < m)
        throw NonAdmissibleError("2F1: series hits a zero of (c)_k before terminating");
}

SeriesResult f21_series_full(const HypParams& p, Complex z, double tol) {
    validate(p);
    if (tol <= 0.0) throw DomainError("2F1: tolerance must be positive");
    int m = termination_index(p);
    bool terminating = m >= 0;
    if (!terminating && std::abs(z) >= 1.0)
        throw DomainError("2F1: |z| >= 1 and the series does not terminate");

    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    if (terminating && m == 0) return {sum, 1, SeriesStatus::Terminated, 0.0};

    int small_streak = 0;
    const int cap = 100000;
    for (int j = 1;; ++j) {
        double k = static_cast<double>(j - 1);
        term *= (p.a + k) * (p.b + k) / ((k + 1.0) * (p.c + k)) * z;
        sum += term;
        if (terminating) {
            if (j == m) return {sum, j + 1, SeriesStatus::Terminated, 0.0};
            continue;
        }
        if (std::abs(term) < tol * std::abs(sum)) {
            if (++small_streak == 3) {
                SeriesStatus st = (std::abs(z) >= 1.0 - 1e-3) ? SeriesStatus::NearUnitCircle
                                                              : SeriesStatus::Converged;
                return {sum, j + 1, st, std::abs(term) / std::max(std::abs(sum), 1.0)};
            }
        } else {
            small_streak = 0;
        }
        if (j >= cap) throw NoConvergenceError("2F1: 100000 terms without meeting tolerance");
    }
}

Complex f21_series(const HypParams& p, Complex z, double tol) {
    return f21_series_full(p, z, tol).value;
}

Complex gauss_sum(const HypParams& p) {
    validate(p);
    if (!is_admissible(p.c - p.a) || !is_admissible(p.c - p.b))
        throw NonAdmissibleError("gauss_sum: c-a and c-b must be admissible");
    int ma = nonpositive_int_index(p.a);
    int mb = nonpositive_int_index(p.b);
    if (ma >= 0 || mb >= 0) {
        // Chu-Vandermonde form of the same ratio; finite even when
        // Gamma(c-a-b) sits on a pole, and exactly 1 when the series is 1.
        if (ma >= 0 && (mb < 0 || ma <= mb))
            return pochhammer(p.c - p.b, ma) / pochhammer(p.c, ma);
        return pochhammer(p.c - p.a, mb) / pochhammer(p.c, mb);
    }
    if ((p.c - p.a - p.b).real() <= 0.0)
        throw DomainError("gauss_sum: Re(c-a-b) <= 0 and the series does not terminate");
    Complex lg = log_gamma(p.c) + log_gamma(p.c - p.a - p.b) - log_gamma(p.c - p.a) -
                 log_gamma(p.c - p.b);
    return exp_checked(lg, "gauss_sum");
}

Complex rice_poly(const RiceParams& rp) {
    if (rp.n < 0) throw DomainError("rice_poly: order must be non-negative");
    // (p)_j in the denominator: p in {0,-1,...,-(n-1)} kills a term
    long k = 0;
    if (near_integer(rp.p, kAdmissibleTol, &k) && k <= 0 && -k <= rp.n - 1)
        throw DegenerateError("rice_poly: (p)_j vanishes for some j <= n");

    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    double n = static_cast<double>(rp.n);
    for (int j = 1; j <= rp.n; ++j) {
        double jm = static_cast<double>(j - 1);
        term *= (-n + jm) * (n + 1.0 + jm) * (rp.xi + jm) /
                (static_cast<double>(j) * static_cast<double>(j) * (rp.p + jm)) * rp.v;
        sum += term;
    }
    return sum;
}

double rice_poly_max(Complex xi, Complex p, Complex v, int N) {
    double m = 0.0;
    for (int n = 0; n <= N; ++n)
        m = std::max(m, std::abs(rice_poly({xi, p, v, n})));
    return m;
}

double rice_generating_check(Complex xi, Complex p, Complex v, Complex t, int N, double tol) {
    if (std::abs(t) >= 0.3) throw DomainError("rice generating sum: |t| must be < 0.3");
    Complex one(1.0, 0.0);
    Complex w = -4.0 * v * t / ((one - t) * (one - t));
    if (std::abs(w) >= 1.0)
        throw DomainError("rice generating sum: transformed argument leaves the unit disc");

    Complex lhs(0.0, 0.0);
    Complex tn(1.0, 0.0);
    for (int n = 0; n <= N; ++n) {
        lhs += tn * rice_poly({xi, p, v, n});
        tn *= t;
    }
    Complex rhs = f21_series({xi, Complex(0.5, 0.0), p}, w, tol) / (one - t);
    return std::abs(lhs - rhs);
}

Complex hyp3f2_unit(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2, double tol) {
    if (!is_admissible(b1) || !is_admissible(b2))
        throw NonAdmissibleError("3F2: lower parameters must be admissible");

    int m = -1;
    for (Complex a : {a1, a2, a3}) {
        int mi = nonpositive_int_index(a);
        if (mi >= 0 && (m < 0 || mi < m)) m = mi;
    }
    Complex rho = b1 + b2 - a1 - a2 - a3;
    if (m < 0 && rho.real() <= 0.0)
        throw DomainError("3F2: Re(b1+b2-a1-a2-a3) <= 0 and the series does not terminate");

    // Gamma(k+x)/Gamma(k) = k^x (1 + x(x-1)/(2k) + O(k^-2)) gives the term
    // model t_k = C k^{-1-rho} (1 + c1/k + O(k^-2)); the modelled remainder
    //   C [zeta(1+rho, N+1) + c1 zeta(2+rho, N+1)]
    // leaves an O(t_N / N) error, so the loop can stop long before the raw
    // tail itself is below tolerance.
    Complex c1 = 0.5 * (a1 * (a1 - 1.0) + a2 * (a2 - 1.0) + a3 * (a3 - 1.0) -
                        b1 * (b1 - 1.0) - b2 * (b2 - 1.0));
    double c2_proxy = (std::abs(c1) + 1.0) * (std::abs(c1) + 1.0) + 10.0;

    auto hurwitz_tail = [](Complex s, double a) {
        // zeta(s, a) by Euler-Maclaurin: a^{1-s}/(s-1) + a^{-s}/2 + s a^{-1-s}/12
        Complex la = std::log(Complex(a, 0.0));
        return std::exp((1.0 - s) * la) / (s - 1.0) + 0.5 * std::exp(-s * la) +
               s * std::exp(-(s + 1.0) * la) / 12.0;
    };

    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    const long cap = 400000;
    for (long j = 1;; ++j) {
        double k = static_cast<double>(j - 1);
        term *= (a1 + k) * (a2 + k) * (a3 + k) /
                ((k + 1.0) * (b1 + k) * (b2 + k));
        sum += term;
        if (m >= 0) {
            if (j >= m) return sum;
            continue;
        }
        if (j >= 200) {
            double nj = static_cast<double>(j);
            double err_bound = std::abs(term) * c2_proxy / ((2.0 + rho.real()) * nj);
            if (err_bound <= 0.5 * tol * std::abs(sum)) {
                Complex C = term * std::exp((1.0 + rho) * std::log(Complex(nj, 0.0))) /
                            (1.0 + c1 / nj);
                Complex tail = C * (hurwitz_tail(1.0 + rho, nj + 1.0) +
                                    c1 * hurwitz_tail(2.0 + rho, nj + 1.0));
                return sum + tail;
            }
        }
        if (j >= cap) throw NoConvergenceError("3F2: term cap reached before tolerance");
    }
}

} // namespace mbkit
