#ifndef MBKIT_SWEEP_HPP
#define MBKIT_SWEEP_HPP

#include "mbkit/identities.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mbkit {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    double tolerance = 1e-10;   // clamped to [1e-14, 1e-2]
    double max_height = 200.0;
    std::uint64_t seed = 0;
    int samples = 50;           // <= 1e6
    OutputFormat format = OutputFormat::Json;

    void validate() const;  // ConfigError on violation
};

enum class IdentityKind {
    Barnes1,
    Gauss,
    Connection,
    Main,
    Derivative,
    Bailey,
    Rice,
    Generating,
};

IdentityKind identity_from_name(const std::string& name);  // ConfigError on unknown
std::string identity_name(IdentityKind kind);

struct SweepRow {
    int index = 0;
    std::map<std::string, Complex> params;  // ordered for stable output
    Complex lhs, rhs;
    double residual = 0.0;
    double tol = 0.0;
    bool passed = false;
    std::string variant;  // e.g. "terminating" / "convergent"
    std::string error;    // non-empty when the row failed with an exception
    double sigma = 0.0;
    double height = 0.0;
    long nodes = 0;
    int corrections = 0;
};

struct SweepReport {
    IdentityKind kind;
    RunConfig config;
    std::vector<SweepRow> rows;
    long rejected_draws = 0;
    double max_residual = 0.0;
    double pass_rate = 1.0;
    bool all_passed = true;
};

// Draw parameters (Re uniform in [0.1, 1.4], Im uniform in [-1, 1], with
// identity-specific transforms), run the checker per draw, collect rows.
// Draws are produced sequentially from the seed; rejected draws are counted.
// Row evaluation may run in parallel, output order is by draw index.
SweepReport run_sweep(IdentityKind kind, const RunConfig& config,
                      EvalMode mode = EvalMode::Parallel);

std::string to_json(const SweepReport& report);
std::string to_csv(const SweepReport& report);

// Shortest round-trip decimal text for a double (to_chars).
std::string format_double(double v);

} // namespace mbkit

#endif
