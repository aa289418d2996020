#ifndef MBKIT_TESTUTIL_HPP
#define MBKIT_TESTUTIL_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace testutil {

// Deterministic uniform draws; distributions are hand-mapped because
// std::uniform_real_distribution is not pinned down by the standard.
struct Rng {
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    std::uint64_t raw() { return gen(); }
    std::mt19937_64 gen;
};

inline double rel_err(std::complex<double> got, std::complex<double> want) {
    double scale = std::abs(want);
    return std::abs(got - want) / (scale > 0 ? scale : 1.0);
}

// Scale-free residual used throughout: |lhs-rhs| / max(|lhs|,|rhs|,1).
inline double residual(std::complex<double> lhs, std::complex<double> rhs) {
    double m = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return std::abs(lhs - rhs) / m;
}

} // namespace testutil

#endif
