// Identity checkers: each one evaluates a contour-integral side and a
// closed-form or series side independently and reports the scale-free
// residual between them.

#include "mbkit/identities.hpp"
#include "mbkit/errors.hpp"

#include <cmath>
#include <string>

namespace mbkit {

namespace {

Complex exp_checked(Complex lg, const char* where) {
    if (lg.real() > kLogOverflow) throw OverflowError(std::string(where) + ": log-magnitude overflow");
    return std::exp(lg);
}

void require_admissible(Complex z, const char* what) {
    if (!is_admissible(z))
        throw NonAdmissibleError(std::string(what) + " must not be a non-positive integer");
}

void fill_diag(IdentityReport& rep, const QuadratureResult& q) {
    rep.sigma = q.contour.sigma;
    rep.height = q.contour.height;
    rep.nodes = q.nodes;
    rep.corrections = q.corrections;
}

void finish(IdentityReport& rep, double tol) {
    rep.residual = residual_metric(rep.lhs, rep.rhs);
    rep.tol = tol;
    rep.passed = rep.residual <= tol;
}

} // namespace

double residual_metric(Complex lhs, Complex rhs) {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

Complex f21_barnes(const HypParams& p, Complex z, double tol, double max_height,
                   QuadratureResult* diag) {
    require_admissible(p.a, "f21_barnes: a");
    require_admissible(p.b, "f21_barnes: b");
    require_admissible(p.c, "f21_barnes: c");
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw DomainError("f21_barnes: z must avoid [0, inf)");

    GammaProductIntegrand f;
    f.plus_shifts = {p.a, p.b};
    f.minus_shifts = {Complex(0.0, 0.0)};
    f.den_shifts = {p.c};
    f.power_base = -z;
    QuadratureResult q = integrate_with_residue_correction(f, 0.25 * tol, max_height);
    if (diag) *diag = q;
    Complex pref = exp_checked(log_gamma(p.c) - log_gamma(p.a) - log_gamma(p.b), "f21_barnes");
    return pref * q.value;
}

Complex f21_main_theorem(const HypParams& p, Complex z, double tol, double max_height,
                         QuadratureResult* diag) {
    require_admissible(p.a, "f21_main_theorem: a");
    require_admissible(p.b, "f21_main_theorem: b");
    require_admissible(p.c, "f21_main_theorem: c");
    require_admissible(p.c - p.a, "f21_main_theorem: c-a");
    require_admissible(p.c - p.b, "f21_main_theorem: c-b");
    if (z.imag() == 0.0 && z.real() <= 0.0)
        throw DomainError("f21_main_theorem: z must avoid (-inf, 0]");

    GammaProductIntegrand f;
    f.plus_shifts = {p.a, p.b};
    f.minus_shifts = {p.c - p.a - p.b, Complex(0.0, 0.0)};
    f.power_base = z;
    QuadratureResult q = integrate_with_residue_correction(f, 0.25 * tol, max_height);
    if (diag) *diag = q;
    Complex pref = exp_checked(log_gamma(p.c) - log_gamma(p.a) - log_gamma(p.c - p.a) -
                                   log_gamma(p.b) - log_gamma(p.c - p.b),
                               "f21_main_theorem");
    return pref * q.value;
}

IdentityReport first_barnes_lemma(Complex a, Complex b, Complex c, Complex d, double tol) {
    require_admissible(a + c, "first_barnes_lemma: a+c");
    require_admissible(a + d, "first_barnes_lemma: a+d");
    require_admissible(b + c, "first_barnes_lemma: b+c");
    require_admissible(b + d, "first_barnes_lemma: b+d");
    require_admissible(a + b + c + d, "first_barnes_lemma: a+b+c+d");

    GammaProductIntegrand f;
    f.plus_shifts = {a, b};
    f.minus_shifts = {c, d};
    QuadratureResult q = integrate_with_residue_correction(f, 0.25 * tol);

    IdentityReport rep;
    rep.name = "first-barnes-lemma";
    rep.lhs = q.value;
    rep.rhs = exp_checked(log_gamma(a + c) + log_gamma(a + d) + log_gamma(b + c) +
                              log_gamma(b + d) - log_gamma(a + b + c + d),
                          "first_barnes_lemma");
    fill_diag(rep, q);
    finish(rep, tol);
    return rep;
}

IdentityReport derivative_match_at_one(const HypParams& p, int n, double tol) {
    if (n < 0 || n > 12)
        throw DomainError("derivative_match_at_one: order must lie in [0, 12]");
    require_admissible(p.a, "derivative_match_at_one: a");
    require_admissible(p.b, "derivative_match_at_one: b");
    require_admissible(p.c, "derivative_match_at_one: c");
    require_admissible(p.c - p.a, "derivative_match_at_one: c-a");
    require_admissible(p.c - p.b, "derivative_match_at_one: c-b");

    GammaProductIntegrand f;
    f.plus_shifts = {p.a, p.b};
    f.minus_shifts = {p.c - p.a - p.b, Complex(static_cast<double>(n), 0.0)};
    QuadratureResult q = integrate_with_residue_correction(f, 0.25 * tol);

    Complex rhs_gamma = exp_checked(log_gamma(p.c - p.a) + log_gamma(p.c - p.b) +
                                        log_gamma(p.a + static_cast<double>(n)) +
                                        log_gamma(p.b + static_cast<double>(n)) -
                                        log_gamma(p.c + static_cast<double>(n)),
                                    "derivative_match_at_one");
    Complex rhs_poch = pochhammer(p.a, n) * pochhammer(p.b, n) / pochhammer(p.c, n) *
                       exp_checked(log_gamma(p.a) + log_gamma(p.c - p.a) + log_gamma(p.b) +
                                       log_gamma(p.c - p.b) - log_gamma(p.c),
                                   "derivative_match_at_one");

    IdentityReport rep;
    rep.name = "derivative-match";
    rep.lhs = q.value;
    rep.rhs = rhs_gamma;
    fill_diag(rep, q);
    finish(rep, tol);
    // the two closed forms of the right side must agree independently
    if (residual_metric(rhs_gamma, rhs_poch) > 1e-11) rep.passed = false;
    return rep;
}

IdentityReport connection_formula_check(const HypParams& p, Complex z, double tol) {
    Complex cab = p.c - p.a - p.b;
    long k = 0;
    if (near_integer(cab, 1e-9, &k))
        throw DegenerateError("connection formula: c-a-b is within 1e-9 of an integer");
    require_admissible(p.c, "connection formula: c");
    if (std::abs(z) >= 1.0 || std::abs(1.0 - z) >= 1.0)
        throw DomainError("connection formula: need |z| < 1 and |1-z| < 1");

    Complex w = Complex(1.0, 0.0) - z;
    Complex lhs = f21_series(p, z, 1e-12);

    // First coefficient Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)); the
    // paired grouping keeps it exactly 1 when a or b is exactly 0.
    Complex term1(0.0, 0.0);
    if (is_admissible(p.c - p.a) && is_admissible(p.c - p.b)) {
        Complex lg1 = (log_gamma(p.c) - log_gamma(p.c - p.a)) +
                      (log_gamma(cab) - log_gamma(p.c - p.b));
        term1 = exp_checked(lg1, "connection formula") *
                f21_series({p.a, p.b, Complex(1.0, 0.0) + p.a + p.b - p.c}, w, 1e-12);
    }

    // Second term carries 1/(Gamma(a)Gamma(b)): it vanishes identically when
    // a or b is a non-positive integer (the reciprocal-gamma limit).
    Complex term2(0.0, 0.0);
    if (is_admissible(p.a) && is_admissible(p.b)) {
        Complex lg2 = log_gamma(p.c) + log_gamma(p.a + p.b - p.c) - log_gamma(p.a) -
                      log_gamma(p.b) + cab * std::log(w);
        term2 = exp_checked(lg2, "connection formula") *
                f21_series({p.c - p.a, p.c - p.b, Complex(1.0, 0.0) + cab}, w, 1e-12);
    }

    IdentityReport rep;
    rep.name = "connection-formula";
    rep.lhs = lhs;
    rep.rhs = term1 + term2;
    finish(rep, tol);
    return rep;
}

IdentityReport bailey_3f2_check(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2,
                                double tol) {
    // The series is symmetric in the upper parameters; route a terminating
    // one into the third slot where the inner Gauss sum folds it away.
    int terminating = 0;
    long k = 0;
    bool t1 = near_integer(a1, kAdmissibleTol, &k) && k <= 0;
    bool t2 = near_integer(a2, kAdmissibleTol, &k) && k <= 0;
    bool t3 = near_integer(a3, kAdmissibleTol, &k) && k <= 0;
    terminating = (t1 ? 1 : 0) + (t2 ? 1 : 0) + (t3 ? 1 : 0);
    if (terminating >= 2)
        throw NonAdmissibleError("bailey check: more than one terminating upper parameter");
    if (t1) std::swap(a1, a3);
    else if (t2) std::swap(a2, a3);

    require_admissible(b1, "bailey check: b1");
    require_admissible(b2, "bailey check: b2");
    require_admissible(a1, "bailey check: a1");
    require_admissible(a2, "bailey check: a2");
    require_admissible(b1 - a1, "bailey check: b1-a1");
    require_admissible(b1 - a2, "bailey check: b1-a2");
    require_admissible(b2 - a3, "bailey check: b2-a3");

    double series_tol = std::min(1e-12, 0.01 * tol);
    Complex lhs = hyp3f2_unit(a1, a2, a3, b1, b2, series_tol);

    GammaProductIntegrand f;
    Complex const_factor(1.0, 0.0);
    if (std::abs(a3) <= kAdmissibleTol) {
        // inner 2F1(a3,-s;b2;1) == 1: the b2 factors cancel exactly
        f.plus_shifts = {a1, a2};
        f.minus_shifts = {b1 - a1 - a2, Complex(0.0, 0.0)};
    } else {
        f.plus_shifts = {a1, a2, b2 - a3};
        f.minus_shifts = {b1 - a1 - a2, Complex(0.0, 0.0)};
        f.den_shifts = {b2};
        const_factor = exp_checked(log_gamma(b2) - log_gamma(b2 - a3), "bailey check");
    }
    QuadratureResult q = integrate_with_residue_correction(f, 0.25 * tol);
    Complex pref = exp_checked(log_gamma(b1) - log_gamma(a1) - log_gamma(b1 - a1) -
                                   log_gamma(a2) - log_gamma(b1 - a2),
                               "bailey check");

    IdentityReport rep;
    rep.name = "bailey-3f2";
    rep.lhs = lhs;
    rep.rhs = pref * const_factor * q.value;
    fill_diag(rep, q);
    finish(rep, tol);
    return rep;
}

IdentityReport rice_integral_check(Complex xi, Complex p, Complex q, Complex v, int n,
                                   double tol) {
    if (n < 0 || n > 12)
        throw DomainError("rice_integral_check: order must lie in [0, 12]");
    require_admissible(xi, "rice check: xi");
    require_admissible(q, "rice check: q");
    require_admissible(p, "rice check: p");
    require_admissible(p - xi, "rice check: p-xi");
    require_admissible(p - q, "rice check: p-q");

    Complex lhs = exp_checked(log_gamma(p - q) + log_gamma(q) + log_gamma(p - xi) +
                                  log_gamma(xi),
                              "rice check") *
                  rice_poly({xi, p, v, n});

    // H_n(s,q;v) = sum_j c_j (s)_j with c_j = (-n)_j (n+1)_j / (j!^2 (q)_j) v^j;
    // (s)_j Gamma(s) = Gamma(s+j) turns each term into a gamma-product line
    // integral with the s-shift folded into the plus family.
    double quad_tol = 0.25 * tol / static_cast<double>(n + 1);
    Complex rhs_sum(0.0, 0.0);
    IdentityReport rep;
    rep.name = "rice-contour";
    Complex cj(1.0, 0.0);
    double nn = static_cast<double>(n);
    for (int j = 0; j <= n; ++j) {
        if (j > 0) {
            double jm = static_cast<double>(j - 1);
            cj *= (-nn + jm) * (nn + 1.0 + jm) /
                  (static_cast<double>(j) * static_cast<double>(j) * (q + jm)) * v;
        }
        GammaProductIntegrand f;
        f.plus_shifts = {Complex(static_cast<double>(j), 0.0), p - q - xi};
        f.minus_shifts = {q, xi};
        QuadratureResult qr = integrate_with_residue_correction(f, quad_tol);
        rhs_sum += cj * qr.value;
        if (j == 0) {
            rep.sigma = qr.contour.sigma;
            rep.height = qr.contour.height;
        }
        rep.nodes += qr.nodes;
        rep.corrections += qr.corrections;
    }

    rep.lhs = lhs;
    rep.rhs = exp_checked(log_gamma(p), "rice check") * rhs_sum;
    finish(rep, tol);
    return rep;
}

} // namespace mbkit
