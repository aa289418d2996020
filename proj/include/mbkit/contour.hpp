#ifndef MBKIT_CONTOUR_HPP
#define MBKIT_CONTOUR_HPP

#include "mbkit/integrand.hpp"

#include <vector>

namespace mbkit {

// Vertical integration line Re s = sigma, truncated at |Im s| <= height.
// separation_margin certifies the horizontal distance to the nearest pole.
struct Contour {
    double sigma = 0.0;
    double height = 10.0;
    double step = 0.5;               // initial trapezoid step
    double separation_margin = 0.0;  // >= 1e-3 for a usable contour
};

enum class QuadStatus { Converged, ToleranceNotMet };

struct QuadratureResult {
    Complex value;          // (1/2 pi i) integral f(s) ds along the line
    double error_estimate;  // last successive difference / max(|value|, 1)
    long nodes;             // total integrand evaluations
    QuadStatus status;
    Contour contour;       // line actually used (step = final step)
    int corrections = 0;   // residue-corrected poles, when applicable
};

// Node-evaluation kernel selection: Serial is the reference implementation,
// Parallel the OpenMP one.  Accumulation is always in index order, so the
// two produce bit-identical sums.
enum class EvalMode { Serial, Parallel };

// Midpoint of (max Re of left bases, min Re of right bases); the gap must be
// at least 2e-3 or SeparationImpossible is raised.
double choose_abscissa(const std::vector<PoleFamily>& families);

// Smallest height from {10, 20, 40, ...} <= max_height whose Stirling-sized
// tail bound |f(sigma +/- iT)| / (2 pi rate) drops below tol/4 on both tails.
double truncation_height(const GammaProductIntegrand& f, double sigma, double tol,
                         double max_height = 200.0);

// Trapezoid sum along the contour with step halving from contour.step until
// two successive estimates agree within tol/2 relative (absolute floor
// 1e-14); at most 20 halvings, else NoConvergence.
QuadratureResult integrate(const GammaProductIntegrand& f, const Contour& contour,
                           double tol, EvalMode mode = EvalMode::Parallel);

// choose_abscissa + truncation_height + integrate.
QuadratureResult integrate_auto(const GammaProductIntegrand& f, double tol,
                                double max_height = 200.0,
                                EvalMode mode = EvalMode::Parallel);

// Straight line placed to minimise crossings, plus explicit residue terms
// for every pole on the wrong side: each crossed pole (index n within its
// family) contributes +(-1)^n/n! * (remaining factors at the pole), which is
// -Res for a right-family and +Res for a left-family pole.  Falls back to
// the plain separating line when one exists.  SeparationImpossible when two
// families collide (left base - right base a non-negative integer) or no
// line clears every pole by 1e-3.
QuadratureResult integrate_with_residue_correction(const GammaProductIntegrand& f,
                                                   double tol,
                                                   double max_height = 200.0,
                                                   EvalMode mode = EvalMode::Parallel);

// True when some line (possibly with residue corrections) clears every pole
// by 1e-3 and no two families collide.  Pure arithmetic, no integration.
bool contour_feasible(const GammaProductIntegrand& f);

// Diagnostics for the contour subcommand and tests.
struct ContourLayout {
    std::vector<PoleFamily> families;
    bool separable = false;
    double left_max = 0.0;   // max Re over left bases (-inf if none)
    double right_min = 0.0;  // min Re over right bases (+inf if none)
    double sigma = 0.0;      // only meaningful when separable
    double height = 0.0;
    std::vector<std::pair<double, double>> magnitude;  // (t, log10 |f(sigma+it)|)
};

ContourLayout analyze_contour(const GammaProductIntegrand& f, double tol,
                              double max_height = 200.0, int samples = 33);

} // namespace mbkit

#endif
