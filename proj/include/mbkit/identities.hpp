#ifndef MBKIT_IDENTITIES_HPP
#define MBKIT_IDENTITIES_HPP

#include "mbkit/contour.hpp"
#include "mbkit/series.hpp"

#include <string>

namespace mbkit {

// Scale-free comparison: |lhs-rhs| / max(|lhs|, |rhs|, 1).
double residual_metric(Complex lhs, Complex rhs);

struct IdentityReport {
    std::string name;
    Complex lhs;
    Complex rhs;
    double residual = 0.0;
    double tol = 0.0;
    bool passed = false;
    // contour diagnostics (when a quadrature was involved)
    double sigma = 0.0;
    double height = 0.0;
    long nodes = 0;
    int corrections = 0;
};

// 2F1(a,b;c;z) for z off [0, inf) through the contour integral
//   Gamma(c)/(Gamma(a)Gamma(b)) (1/2 pi i) int Gamma(a+s)Gamma(b+s)Gamma(-s)
//                                              / Gamma(c+s) (-z)^s ds,
// residue-corrected when Re a or Re b <= 0 pushes a pole across the line.
Complex f21_barnes(const HypParams& p, Complex z, double tol = 1e-10,
                   double max_height = 200.0, QuadratureResult* diag = nullptr);

// 2F1(a,b;c;1-z) for z off (-inf, 0] through
//   Gamma(c)/(Gamma(a)Gamma(c-a)Gamma(b)Gamma(c-b)) (1/2 pi i)
//     int Gamma(a+s)Gamma(b+s)Gamma(c-a-b-s)Gamma(-s) z^s ds.
Complex f21_main_theorem(const HypParams& p, Complex z, double tol = 1e-10,
                         double max_height = 200.0, QuadratureResult* diag = nullptr);

// Barnes beta-integral: (1/2 pi i) int Gamma(a+s)Gamma(b+s)Gamma(c-s)Gamma(d-s) ds
// against Gamma(a+c)Gamma(a+d)Gamma(b+c)Gamma(b+d)/Gamma(a+b+c+d).
IdentityReport first_barnes_lemma(Complex a, Complex b, Complex c, Complex d,
                                  double tol = 1e-10);

// n-th derivative of 2F1 at z=1, folded into the contour via
// Gamma(n-s) in place of Gamma(-s):
//   (1/2 pi i) int Gamma(a+s)Gamma(b+s)Gamma(c-a-b-s)Gamma(n-s) ds
//     = Gamma(c-a)Gamma(c-b)Gamma(a+n)Gamma(b+n)/Gamma(c+n).
// The gamma form of the right side is cross-checked against the equivalent
// pochhammer form (a)_n (b)_n / (c)_n * Gamma(a)Gamma(c-a)Gamma(b)Gamma(c-b)/Gamma(c).
IdentityReport derivative_match_at_one(const HypParams& p, int n, double tol = 1e-10);

// Two-sided z <-> 1-z linkage:
//   2F1(a,b;c;z) = G1 * 2F1(a,b;1+a+b-c;1-z)
//               + G2 * (1-z)^{c-a-b} * 2F1(c-a,c-b;1+c-a-b;1-z),
// both sides summed as series.  DegenerateError when c-a-b is within 1e-9
// of an integer.
IdentityReport connection_formula_check(const HypParams& p, Complex z,
                                        double tol = 1e-10);

// 3F2(a1,a2,a3;b1,b2;1) against the contour form with the inner 2F1(a3,-s;b2;1)
// folded to gammas by the z=1 sum.  A terminating parameter is routed to the
// a3 slot; series symmetry makes that the same statement.
IdentityReport bailey_3f2_check(Complex a1, Complex a2, Complex a3, Complex b1,
                                Complex b2, double tol = 1e-10);

// Gamma(p-q)Gamma(q)Gamma(p-xi)Gamma(xi) H_n(xi,p;v) against
// Gamma(p) (1/2 pi i) int Gamma(s)Gamma(q-s)Gamma(xi-s)Gamma(p-q-xi+s) H_n(s,q;v) ds,
// expanded over (s)_j Gamma(s) = Gamma(s+j) into n+1 gamma-product integrals.
IdentityReport rice_integral_check(Complex xi, Complex p, Complex q, Complex v,
                                   int n, double tol = 1e-10);

} // namespace mbkit

#endif
