// Quadrature along vertical lines: abscissa selection, truncation bounds,
// adaptive trapezoid sums, and residue corrections for poles the line cannot
// avoid.  Node kernels come in a serial reference flavour and an OpenMP one;
// both write into an index-addressed buffer and the accumulation is always
// serial in index order, so results are bit-identical across modes.

#include "mbkit/contour.hpp"
#include "mbkit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mbkit {

namespace {

constexpr double kMinMargin = 1e-3;
constexpr double kMinGap = 2e-3;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void throw_kind(ErrorKind kind, const std::string& msg) {
    switch (kind) {
        case ErrorKind::Pole: throw PoleError(msg);
        case ErrorKind::Overflow: throw OverflowError(msg);
        case ErrorKind::Domain: throw DomainError(msg);
        case ErrorKind::NonAdmissible: throw NonAdmissibleError(msg);
        case ErrorKind::NoConvergence: throw NoConvergenceError(msg);
        case ErrorKind::Degenerate: throw DegenerateError(msg);
        case ErrorKind::SeparationImpossible: throw SeparationImpossibleError(msg);
        case ErrorKind::DivergentIntegrand: throw DivergentIntegrandError(msg);
        case ErrorKind::Config: break;
    }
    throw ConfigError(msg);
}

// Evaluate f on sigma + i*ts[k] into out[k].  Exceptions raised inside the
// OpenMP region are captured and rethrown after the join (first one wins).
void eval_nodes(const GammaProductIntegrand& f, double sigma, const std::vector<double>& ts,
                std::vector<Complex>& out, EvalMode mode) {
    out.resize(ts.size());
#ifdef MBKIT_HAVE_OPENMP
    if (mode == EvalMode::Parallel) {
        std::atomic<bool> failed{false};
        ErrorKind kind = ErrorKind::Config;
        std::string msg;
#pragma omp parallel for schedule(static)
        for (long k = 0; k < static_cast<long>(ts.size()); ++k) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                out[k] = f.eval(Complex(sigma, ts[k]));
            } catch (const Error& e) {
#pragma omp critical
                if (!failed.exchange(true)) {
                    kind = e.kind();
                    msg = e.what();
                }
            } catch (const std::exception& e) {
#pragma omp critical
                if (!failed.exchange(true)) {
                    kind = ErrorKind::Config;
                    msg = e.what();
                }
            }
        }
        if (failed.load()) throw_kind(kind, msg);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t k = 0; k < ts.size(); ++k) out[k] = f.eval(Complex(sigma, ts[k]));
}

// Distance from the line Re s = sigma to the nearest pole of one family.
double margin_to_family(double sigma, const PoleFamily& fam) {
    double x = fam.side == PoleSide::Left ? fam.base.real() - sigma : sigma - fam.base.real();
    long n = std::lround(x);
    if (n < 0) n = 0;
    return std::abs(x - static_cast<double>(n));
}

// Number of family members on the wrong side of the line.
long crossings_of_family(double sigma, const PoleFamily& fam) {
    double d = fam.side == PoleSide::Left ? fam.base.real() - sigma : sigma - fam.base.real();
    if (d <= 0.0) return 0;
    return static_cast<long>(std::ceil(d));
}

struct CrossedPole {
    PoleSide side;
    int factor_index;  // within plus_shifts / minus_shifts
    long n;            // member index inside its family
    Complex s0;
};

struct ContourPlan {
    double sigma = 0.0;
    double margin = 0.0;
    std::vector<CrossedPole> crossed;
};

void side_extents(const std::vector<PoleFamily>& fams, double& left_max, double& right_min) {
    left_max = -kInf;
    right_min = kInf;
    for (const PoleFamily& fam : fams) {
        if (fam.side == PoleSide::Left)
            left_max = std::max(left_max, fam.base.real());
        else
            right_min = std::min(right_min, fam.base.real());
    }
}

// Two families collide when a left base minus a right base is a non-negative
// integer: the pole sets then share a point and no line/correction scheme
// applies.
void check_collisions(const std::vector<PoleFamily>& fams) {
    for (const PoleFamily& lf : fams) {
        if (lf.side != PoleSide::Left) continue;
        for (const PoleFamily& rf : fams) {
            if (rf.side != PoleSide::Right) continue;
            Complex d = lf.base - rf.base;
            if (std::abs(d.imag()) > 1e-9) continue;
            double re = d.real();
            if (re < -1e-9) continue;
            if (std::abs(re - std::round(re)) <= 1e-9)
                throw SeparationImpossibleError(
                    "pole families collide: left base minus right base is a non-negative integer");
        }
    }
}

// Reject crossings through a point where two poles (from any families) sit
// closer than 1e-8: the residue there is not simple.
void check_simple(const std::vector<PoleFamily>& fams, const CrossedPole& cp) {
    for (std::size_t i = 0; i < fams.size(); ++i) {
        const PoleFamily& fam = fams[i];
        double x = fam.side == PoleSide::Left ? fam.base.real() - cp.s0.real()
                                              : cp.s0.real() - fam.base.real();
        long k = std::lround(x);
        if (k < 0) k = 0;
        Complex member = fam.side == PoleSide::Left ? fam.base - static_cast<double>(k)
                                                    : fam.base + static_cast<double>(k);
        if (fam.side == cp.side && fam.factor_index == cp.factor_index && k == cp.n) continue;
        if (std::abs(member - cp.s0) < 1e-8)
            throw SeparationImpossibleError("crossed pole is not simple");
    }
}

ContourPlan plan_contour(const std::vector<PoleFamily>& fams) {
    check_collisions(fams);
    double left_max, right_min;
    side_extents(fams, left_max, right_min);

    ContourPlan plan;
    if (left_max == -kInf && right_min == kInf) {
        plan.sigma = 0.0;
        plan.margin = 0.5;
        return plan;
    }
    if (left_max == -kInf) {
        plan.sigma = right_min - 0.5;
        plan.margin = 0.5;
        return plan;
    }
    if (right_min == kInf) {
        plan.sigma = left_max + 0.5;
        plan.margin = 0.5;
        return plan;
    }
    double gap = right_min - left_max;
    if (gap >= kMinGap) {
        plan.sigma = 0.5 * (left_max + right_min);
        plan.margin = std::min(0.5 * gap, 0.5);
        return plan;
    }

    // No separating strip: enumerate candidate lines at midpoints between
    // consecutive pole positions near the bases, preferring the fewest
    // crossings and then the widest clearance.
    double lo = kInf, hi = -kInf;
    for (const PoleFamily& fam : fams) {
        lo = std::min(lo, fam.base.real());
        hi = std::max(hi, fam.base.real());
    }
    lo -= 1.5;
    hi += 1.5;

    std::vector<double> xs;
    for (const PoleFamily& fam : fams) {
        if (fam.side == PoleSide::Left) {
            for (long n = 0; fam.base.real() - static_cast<double>(n) >= lo; ++n)
                xs.push_back(fam.base.real() - static_cast<double>(n));
        } else {
            for (long n = 0; fam.base.real() + static_cast<double>(n) <= hi; ++n)
                xs.push_back(fam.base.real() + static_cast<double>(n));
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
             xs.end());

    std::vector<double> candidates;
    candidates.push_back(xs.front() - 0.5);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) candidates.push_back(0.5 * (xs[i] + xs[i + 1]));
    candidates.push_back(xs.back() + 0.5);

    bool found = false;
    double best_sigma = 0.0, best_margin = 0.0;
    long best_cross = 0;
    for (double sigma : candidates) {
        double margin = kInf;
        long cross = 0;
        for (const PoleFamily& fam : fams) {
            margin = std::min(margin, margin_to_family(sigma, fam));
            cross += crossings_of_family(sigma, fam);
        }
        if (margin < kMinMargin) continue;
        if (!found || cross < best_cross ||
            (cross == best_cross && margin > best_margin + 1e-12)) {
            found = true;
            best_sigma = sigma;
            best_margin = margin;
            best_cross = cross;
        }
    }
    if (!found)
        throw SeparationImpossibleError("no admissible line clears every pole by 1e-3");

    plan.sigma = best_sigma;
    plan.margin = best_margin;
    for (const PoleFamily& fam : fams) {
        long cross = crossings_of_family(best_sigma, fam);
        for (long n = 0; n < cross; ++n) {
            CrossedPole cp;
            cp.side = fam.side;
            cp.factor_index = fam.factor_index;
            cp.n = n;
            cp.s0 = fam.side == PoleSide::Left ? fam.base - static_cast<double>(n)
                                               : fam.base + static_cast<double>(n);
            check_simple(fams, cp);
            plan.crossed.push_back(cp);
        }
    }
    return plan;
}

} // namespace

double choose_abscissa(const std::vector<PoleFamily>& families) {
    check_collisions(families);
    double left_max, right_min;
    side_extents(families, left_max, right_min);
    if (left_max == -kInf && right_min == kInf) return 0.0;
    if (left_max == -kInf) return right_min - 0.5;
    if (right_min == kInf) return left_max + 0.5;
    double gap = right_min - left_max;
    if (gap < kMinGap)
        throw SeparationImpossibleError("pole families leave no separating strip");
    return 0.5 * (left_max + right_min);
}

double truncation_height(const GammaProductIntegrand& f, double sigma, double tol,
                         double max_height) {
    if (tol <= 0.0) throw DomainError("truncation_height: tolerance must be positive");
    DecayRates rates = f.decay_rates();
    if (rates.up <= 0.0 || rates.down <= 0.0)
        throw DivergentIntegrandError("integrand does not decay along the contour");
    double want = std::log(0.25 * tol);
    for (double T = 10.0; T <= max_height * (1.0 + 1e-12); T *= 2.0) {
        double up = f.log_eval(Complex(sigma, T)).real() - std::log(kTwoPi * rates.up);
        double down = f.log_eval(Complex(sigma, -T)).real() - std::log(kTwoPi * rates.down);
        if (up <= want && down <= want) return T;
    }
    throw NoConvergenceError("truncation height cap reached before the tail bound met tolerance");
}

QuadratureResult integrate(const GammaProductIntegrand& f, const Contour& contour, double tol,
                           EvalMode mode) {
    if (tol <= 0.0) throw DomainError("integrate: tolerance must be positive");
    if (contour.separation_margin < kMinMargin)
        throw SeparationImpossibleError("contour lacks a 1e-3 separation certificate");
    DecayRates rates = f.decay_rates();
    if (rates.up <= 0.0 || rates.down <= 0.0)
        throw DivergentIntegrandError("integrand does not decay along the contour");

    double T = contour.height;
    long intervals = std::lround(2.0 * T / contour.step);
    if (intervals < 2) intervals = 2;
    double h = 2.0 * T / static_cast<double>(intervals);

    std::vector<double> ts(static_cast<std::size_t>(intervals) + 1);
    for (long k = 0; k <= intervals; ++k)
        ts[static_cast<std::size_t>(k)] = -T + static_cast<double>(k) * h;
    std::vector<Complex> vals;
    eval_nodes(f, contour.sigma, ts, vals, mode);

    Complex S = 0.5 * (vals.front() + vals.back());
    for (std::size_t k = 1; k + 1 < vals.size(); ++k) S += vals[k];
    long nodes = intervals + 1;
    Complex prev = S * (h / kTwoPi);

    for (int halving = 1; halving <= 20; ++halving) {
        h *= 0.5;
        ts.resize(static_cast<std::size_t>(intervals));
        for (long j = 0; j < intervals; ++j)
            ts[static_cast<std::size_t>(j)] = -T + static_cast<double>(2 * j + 1) * h;
        eval_nodes(f, contour.sigma, ts, vals, mode);
        Complex odd(0.0, 0.0);
        for (const Complex& v : vals) odd += v;
        S += odd;
        intervals *= 2;
        nodes += static_cast<long>(vals.size());

        Complex cur = S * (h / kTwoPi);
        double diff = std::abs(cur - prev);
        if (halving >= 3 && diff <= std::max(0.5 * tol * std::abs(cur), 1e-14)) {
            QuadratureResult r;
            r.value = cur;
            r.error_estimate = diff / std::max(std::abs(cur), 1.0);
            r.nodes = nodes;
            r.status = QuadStatus::Converged;
            r.contour = contour;
            r.contour.step = h;
            return r;
        }
        prev = cur;
    }
    throw NoConvergenceError("trapezoid halving limit (20) reached without convergence");
}

QuadratureResult integrate_auto(const GammaProductIntegrand& f, double tol, double max_height,
                                EvalMode mode) {
    std::vector<PoleFamily> fams = pole_families(f);
    Contour c;
    c.sigma = choose_abscissa(fams);
    c.separation_margin = 0.5;
    for (const PoleFamily& fam : fams)
        c.separation_margin = std::min(c.separation_margin, margin_to_family(c.sigma, fam));
    c.height = truncation_height(f, c.sigma, tol, max_height);
    return integrate(f, c, tol, mode);
}

QuadratureResult integrate_with_residue_correction(const GammaProductIntegrand& f, double tol,
                                                   double max_height, EvalMode mode) {
    std::vector<PoleFamily> fams = pole_families(f);
    ContourPlan plan = plan_contour(fams);

    Contour c;
    c.sigma = plan.sigma;
    c.separation_margin = plan.margin;
    c.height = truncation_height(f, plan.sigma, tol, max_height);
    QuadratureResult r = integrate(f, c, tol, mode);

    // Every crossed pole, on either side, contributes +(-1)^n/n! times the
    // product of the remaining factors at the pole (the sign of the residue
    // and the orientation of the detour cancel to the same rule).
    Complex corr(0.0, 0.0);
    for (const CrossedPole& cp : plan.crossed) {
        Complex lg = f.log_eval_skipping(cp.side == PoleSide::Left ? 0 : 1, cp.factor_index,
                                         cp.s0) -
                     log_gamma(Complex(static_cast<double>(cp.n) + 1.0, 0.0));
        if (lg.real() > kLogOverflow)
            throw OverflowError("residue correction overflows");
        Complex term = std::exp(lg);
        corr += (cp.n % 2 == 0) ? term : -term;
    }
    r.value += corr;
    r.corrections = static_cast<int>(plan.crossed.size());
    return r;
}

bool contour_feasible(const GammaProductIntegrand& f) {
    try {
        plan_contour(pole_families(f));
        return true;
    } catch (const SeparationImpossibleError&) {
        return false;
    }
}

ContourLayout analyze_contour(const GammaProductIntegrand& f, double tol, double max_height,
                              int samples) {
    ContourLayout layout;
    layout.families = pole_families(f);
    side_extents(layout.families, layout.left_max, layout.right_min);

    bool have_left = layout.left_max != -kInf;
    bool have_right = layout.right_min != kInf;
    double sigma = 0.0;
    if (!have_left && !have_right) {
        layout.separable = true;
    } else if (!have_left) {
        layout.separable = true;
        sigma = layout.right_min - 0.5;
    } else if (!have_right) {
        layout.separable = true;
        sigma = layout.left_max + 0.5;
    } else {
        layout.separable = (layout.right_min - layout.left_max) >= kMinGap;
        sigma = 0.5 * (layout.left_max + layout.right_min);
    }
    if (!layout.separable) return layout;

    layout.sigma = sigma;
    try {
        layout.height = truncation_height(f, sigma, tol, max_height);
    } catch (const NoConvergenceError&) {
        layout.height = max_height;  // diagnostics only; show the capped line
    }
    if (samples < 2) samples = 2;
    layout.magnitude.reserve(static_cast<std::size_t>(samples));
    const double ln10 = std::log(10.0);
    for (int k = 0; k < samples; ++k) {
        double t = -layout.height +
                   2.0 * layout.height * static_cast<double>(k) / static_cast<double>(samples - 1);
        double lg = f.log_eval(Complex(sigma, t)).real() / ln10;
        layout.magnitude.emplace_back(t, lg);
    }
    return layout;
}

} // namespace mbkit
