// Timing harness: serial vs OpenMP node evaluation on fixed contours,
// plus one end-to-end sweep. Results must agree bit for bit between the
// two modes; any mismatch is a hard failure.

#include "mbkit/contour.hpp"
#include "mbkit/integrand.hpp"
#include "mbkit/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef MBKIT_HAVE_OPENMP
#include <omp.h>
#endif

using mbkit::Complex;
using mbkit::Contour;
using mbkit::EvalMode;
using mbkit::GammaProductIntegrand;
using mbkit::QuadratureResult;

namespace {

struct Case {
    std::string name;
    GammaProductIntegrand f;
    double tol;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

bool bitwise_equal(Complex a, Complex b) {
    return std::memcmp(&a, &b, sizeof(Complex)) == 0;
}

} // namespace

int main(int argc, char** argv) {
    int reps = 40;
    if (argc > 1) reps = std::atoi(argv[1]);
    if (reps < 1) reps = 1;

#ifdef MBKIT_HAVE_OPENMP
    std::printf("OpenMP: enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled (serial build)\n");
#endif
    std::printf("reps per case: %d\n\n", reps);

    std::vector<Case> cases;
    {
        GammaProductIntegrand f;
        f.plus_shifts = {{0.25, 0.0}, {0.75, 0.0}};
        f.minus_shifts = {{0.5, 0.0}, {1.0, 0.0}};
        cases.push_back({"barnes-lemma(.25,.75;.5,1)", f, 1e-12});
    }
    {
        GammaProductIntegrand f;
        f.plus_shifts = {{0.3, 0.0}, {0.4, 0.0}};
        f.minus_shifts = {{-0.2, 0.0}, {0.0, 0.0}};
        f.power_base = Complex(1.0, 0.0);
        cases.push_back({"gauss-limit(.3,.4;.2)", f, 1e-12});
    }
    {
        GammaProductIntegrand f;
        f.plus_shifts = {{3.0, 0.0}, {1.1, 0.0}};
        f.minus_shifts = {{0.7, 0.0}, {0.4, 0.0}};
        cases.push_back({"rice-term(j=3)", f, 1e-12});
    }

    std::printf("%-28s %10s %8s %12s %12s %8s\n", "case", "value.re", "nodes",
                "serial ms", "parallel ms", "speedup");

    bool ok = true;
    for (auto& c : cases) {
        Contour contour;
        contour.sigma = mbkit::choose_abscissa(mbkit::pole_families(c.f));
        contour.height = mbkit::truncation_height(c.f, contour.sigma, c.tol);
        contour.step = 0.5;
        contour.separation_margin = 0.05;

        // Warm up and take reference result.
        QuadratureResult ref =
            mbkit::integrate(c.f, contour, c.tol, EvalMode::Serial);

        auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < reps; ++i)
            mbkit::integrate(c.f, contour, c.tol, EvalMode::Serial);
        double serial_ms = ms_since(t0) / reps;

        QuadratureResult par;
        t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < reps; ++i)
            par = mbkit::integrate(c.f, contour, c.tol, EvalMode::Parallel);
        double parallel_ms = ms_since(t0) / reps;

        if (!bitwise_equal(ref.value, par.value)) {
            std::printf("FAIL %s: serial and parallel values differ\n",
                        c.name.c_str());
            ok = false;
            continue;
        }
        std::printf("%-28s %10.6f %8zu %12.3f %12.3f %7.2fx\n", c.name.c_str(),
                    ref.value.real(), ref.nodes, serial_ms, parallel_ms,
                    serial_ms / (parallel_ms > 0 ? parallel_ms : 1e-9));
    }

    {
        mbkit::RunConfig cfg;
        cfg.tolerance = 1e-10;
        cfg.seed = 7;
        cfg.samples = 20;
        auto t0 = std::chrono::steady_clock::now();
        mbkit::SweepReport rep =
            mbkit::run_sweep(mbkit::IdentityKind::Barnes1, cfg);
        double sweep_ms = ms_since(t0);
        std::printf("\nsweep barnes1, %zu samples: %.1f ms, all_passed=%s\n",
                    rep.rows.size(), sweep_ms, rep.all_passed ? "yes" : "no");
        if (!rep.all_passed) ok = false;
    }

    return ok ? 0 : 1;
}
