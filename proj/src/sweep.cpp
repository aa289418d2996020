// Randomized identity sweeps.  Parameters are drawn sequentially from the
// seed (so rejection sampling stays reproducible), rows are evaluated in
// draw order, and reports serialize deterministically.

#include "mbkit/sweep.hpp"
#include "mbkit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

namespace mbkit {

namespace {

using ordered_json = nlohmann::ordered_json;

// Uniform doubles built from the top 53 bits of mt19937_64 output, so the
// stream is identical across platforms.
class DrawRng {
public:
    explicit DrawRng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    Complex box() { return {uniform(0.1, 1.4), uniform(-1.0, 1.0)}; }
    int pick(int n) {  // 0 .. n-1
        int k = static_cast<int>(uniform(0.0, static_cast<double>(n)));
        return std::min(k, n - 1);
    }

private:
    std::mt19937_64 gen_;
};

struct Draw {
    std::map<std::string, Complex> params;
    std::string variant;
    int n = 0;
};

double dist_to_integer(Complex z) {
    return std::abs(z - Complex(std::round(z.real()), 0.0));
}

constexpr double kDrawGuard = 0.05;  // keep draws this far from degeneracies

bool draw_once(IdentityKind kind, int index, DrawRng& rng, Draw& d) {
    d.params.clear();
    d.variant.clear();
    d.n = 0;
    switch (kind) {
        case IdentityKind::Barnes1: {
            d.params["a"] = rng.box();
            d.params["b"] = rng.box();
            d.params["c"] = rng.box();
            d.params["d"] = rng.box();
            return true;
        }
        case IdentityKind::Gauss: {
            int m = 1 + rng.pick(8);
            Complex b = rng.box();
            Complex c = rng.box();
            d.params["a"] = Complex(-static_cast<double>(m), 0.0);
            d.params["b"] = b;
            d.params["c"] = c;
            d.variant = "terminating";
            return true;
        }
        case IdentityKind::Connection: {
            Complex a = rng.box();
            Complex b = rng.box();
            Complex g = rng.box();
            Complex z(0.5 + rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45));
            if (dist_to_integer(g) < kDrawGuard) return false;
            if (std::abs(z) > 0.85 || std::abs(1.0 - z) > 0.85) return false;
            d.params["a"] = a;
            d.params["b"] = b;
            d.params["c"] = a + b + g;
            d.params["z"] = z;
            return true;
        }
        case IdentityKind::Main: {
            Complex a = rng.box();
            Complex b = rng.box();
            Complex c = rng.box();
            Complex z(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
            if (std::abs(z) > 0.6 || std::abs(z) < 0.05) return false;
            if (dist_to_integer(a - c) < kDrawGuard) return false;
            if (dist_to_integer(b - c) < kDrawGuard) return false;
            GammaProductIntegrand f;
            f.plus_shifts = {a, b};
            f.minus_shifts = {c - a - b, Complex(0.0, 0.0)};
            f.power_base = Complex(1.0, 0.0) - z;
            if (!contour_feasible(f)) return false;
            d.params["a"] = a;
            d.params["b"] = b;
            d.params["c"] = c;
            d.params["z"] = z;
            return true;
        }
        case IdentityKind::Derivative: {
            Complex a = rng.box();
            Complex b = rng.box();
            Complex c = rng.box();
            int n = index % 7;
            if (dist_to_integer(a - c) < kDrawGuard) return false;
            if (dist_to_integer(b - c) < kDrawGuard) return false;
            GammaProductIntegrand f;
            f.plus_shifts = {a, b};
            f.minus_shifts = {c - a - b, Complex(static_cast<double>(n), 0.0)};
            if (!contour_feasible(f)) return false;
            d.params["a"] = a;
            d.params["b"] = b;
            d.params["c"] = c;
            d.params["n"] = Complex(static_cast<double>(n), 0.0);
            d.n = n;
            return true;
        }
        case IdentityKind::Bailey: {
            bool term = (index % 2) == 0;
            Complex a1 = rng.box();
            Complex a2 = rng.box();
            Complex a3;
            Complex b1, b2;
            if (term) {
                int m = 1 + rng.pick(5);
                a3 = Complex(-static_cast<double>(m), 0.0);
                b1 = rng.box();
                b2 = rng.box();
                d.variant = "terminating";
            } else {
                a3 = rng.box();
                b1 = rng.box() + Complex(1.5, 0.0);
                b2 = rng.box() + Complex(1.5, 0.0);
                d.variant = "convergent";
                Complex rho = b1 + b2 - a1 - a2 - a3;
                if (rho.real() < 1.5) return false;
            }
            if (dist_to_integer(b1 - a1) < kDrawGuard) return false;
            if (dist_to_integer(b1 - a2) < kDrawGuard) return false;
            if (dist_to_integer(b2 - a3) < kDrawGuard) return false;
            if (dist_to_integer(a1 + a2 - b1 - b2) < kDrawGuard) return false;
            GammaProductIntegrand f;
            if (std::abs(a3) <= kAdmissibleTol) {
                f.plus_shifts = {a1, a2};
            } else {
                f.plus_shifts = {a1, a2, b2 - a3};
                f.den_shifts = {b2};
            }
            f.minus_shifts = {b1 - a1 - a2, Complex(0.0, 0.0)};
            if (!contour_feasible(f)) return false;
            d.params["a1"] = a1;
            d.params["a2"] = a2;
            d.params["a3"] = a3;
            d.params["b1"] = b1;
            d.params["b2"] = b2;
            return true;
        }
        case IdentityKind::Rice: {
            Complex xi = rng.box();
            Complex p = rng.box();
            Complex q = rng.box();
            Complex v = 0.5 * rng.box();
            int n = index % 6;
            if (dist_to_integer(p - q) < kDrawGuard) return false;
            if (dist_to_integer(p - xi) < kDrawGuard) return false;
            for (int j = 0; j <= n; ++j) {
                GammaProductIntegrand f;
                f.plus_shifts = {Complex(static_cast<double>(j), 0.0), p - q - xi};
                f.minus_shifts = {q, xi};
                if (!contour_feasible(f)) return false;
            }
            d.params["xi"] = xi;
            d.params["p"] = p;
            d.params["q"] = q;
            d.params["v"] = v;
            d.params["n"] = Complex(static_cast<double>(n), 0.0);
            d.n = n;
            return true;
        }
        case IdentityKind::Generating: {
            Complex xi = rng.box();
            Complex p = rng.box();
            Complex v = 0.4 * rng.box();
            Complex t(rng.uniform(-0.2, 0.2), 0.0);
            d.params["xi"] = xi;
            d.params["p"] = p;
            d.params["v"] = v;
            d.params["t"] = t;
            return true;
        }
    }
    return false;
}

SweepRow eval_row(IdentityKind kind, const Draw& d, const RunConfig& cfg, EvalMode mode) {
    SweepRow row;
    row.params = d.params;
    row.variant = d.variant;
    row.tol = cfg.tolerance;
    try {
        switch (kind) {
            case IdentityKind::Barnes1: {
                IdentityReport rep =
                    first_barnes_lemma(d.params.at("a"), d.params.at("b"), d.params.at("c"),
                                       d.params.at("d"), cfg.tolerance);
                row.lhs = rep.lhs;
                row.rhs = rep.rhs;
                row.residual = rep.residual;
                row.passed = rep.passed;
                row.sigma = rep.sigma;
                row.height = rep.height;
                row.nodes = rep.nodes;
                row.corrections = rep.corrections;
                break;
            }
            case IdentityKind::Gauss: {
                HypParams p{d.params.at("a"), d.params.at("b"), d.params.at("c")};
                row.lhs = f21_series(p, Complex(1.0, 0.0), 1e-12);
                row.rhs = gauss_sum(p);
                row.residual = residual_metric(row.lhs, row.rhs);
                row.passed = row.residual <= cfg.tolerance;
                break;
            }
            case IdentityKind::Connection: {
                HypParams p{d.params.at("a"), d.params.at("b"), d.params.at("c")};
                IdentityReport rep = connection_formula_check(p, d.params.at("z"), cfg.tolerance);
                row.lhs = rep.lhs;
                row.rhs = rep.rhs;
                row.residual = rep.residual;
                row.passed = rep.passed;
                break;
            }
            case IdentityKind::Main: {
                HypParams p{d.params.at("a"), d.params.at("b"), d.params.at("c")};
                Complex z = d.params.at("z");
                QuadratureResult diag;
                row.lhs = f21_main_theorem(p, Complex(1.0, 0.0) - z, cfg.tolerance,
                                           cfg.max_height, &diag);
                row.rhs = f21_series(p, z, 1e-12);
                row.residual = residual_metric(row.lhs, row.rhs);
                row.passed = row.residual <= cfg.tolerance;
                row.sigma = diag.contour.sigma;
                row.height = diag.contour.height;
                row.nodes = diag.nodes;
                row.corrections = diag.corrections;
                break;
            }
            case IdentityKind::Derivative: {
                HypParams p{d.params.at("a"), d.params.at("b"), d.params.at("c")};
                IdentityReport rep = derivative_match_at_one(p, d.n, cfg.tolerance);
                row.lhs = rep.lhs;
                row.rhs = rep.rhs;
                row.residual = rep.residual;
                row.passed = rep.passed;
                row.sigma = rep.sigma;
                row.height = rep.height;
                row.nodes = rep.nodes;
                row.corrections = rep.corrections;
                break;
            }
            case IdentityKind::Bailey: {
                IdentityReport rep =
                    bailey_3f2_check(d.params.at("a1"), d.params.at("a2"), d.params.at("a3"),
                                     d.params.at("b1"), d.params.at("b2"), cfg.tolerance);
                row.lhs = rep.lhs;
                row.rhs = rep.rhs;
                row.residual = rep.residual;
                row.passed = rep.passed;
                row.sigma = rep.sigma;
                row.height = rep.height;
                row.nodes = rep.nodes;
                row.corrections = rep.corrections;
                break;
            }
            case IdentityKind::Rice: {
                IdentityReport rep =
                    rice_integral_check(d.params.at("xi"), d.params.at("p"), d.params.at("q"),
                                        d.params.at("v"), d.n, cfg.tolerance);
                row.lhs = rep.lhs;
                row.rhs = rep.rhs;
                row.residual = rep.residual;
                row.passed = rep.passed;
                row.sigma = rep.sigma;
                row.height = rep.height;
                row.nodes = rep.nodes;
                row.corrections = rep.corrections;
                break;
            }
            case IdentityKind::Generating: {
                Complex xi = d.params.at("xi");
                Complex p = d.params.at("p");
                Complex v = d.params.at("v");
                Complex t = d.params.at("t");
                const int N = 25;
                Complex lhs(0.0, 0.0), tn(1.0, 0.0);
                for (int n = 0; n <= N; ++n) {
                    lhs += tn * rice_poly({xi, p, v, n});
                    tn *= t;
                }
                Complex one(1.0, 0.0);
                Complex w = -4.0 * v * t / ((one - t) * (one - t));
                row.lhs = lhs;
                row.rhs = f21_series({xi, Complex(0.5, 0.0), p}, w, 1e-12) / (one - t);
                row.residual = residual_metric(row.lhs, row.rhs);
                row.passed = row.residual <= cfg.tolerance;
                break;
            }
        }
    } catch (const Error& e) {
        row.error = e.what();
        row.passed = false;
    }
    (void)mode;
    return row;
}

ordered_json complex_json(Complex z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (!(tolerance >= 1e-14 && tolerance <= 1e-2))
        throw ConfigError("tolerance must lie in [1e-14, 1e-2]");
    if (!(max_height >= 10.0 && max_height <= 10000.0))
        throw ConfigError("max-height must lie in [10, 10000]");
    if (samples < 0 || samples > 1000000)
        throw ConfigError("samples must lie in [0, 1000000]");
}

IdentityKind identity_from_name(const std::string& name) {
    if (name == "barnes1") return IdentityKind::Barnes1;
    if (name == "gauss") return IdentityKind::Gauss;
    if (name == "connection") return IdentityKind::Connection;
    if (name == "main") return IdentityKind::Main;
    if (name == "derivative") return IdentityKind::Derivative;
    if (name == "bailey") return IdentityKind::Bailey;
    if (name == "rice") return IdentityKind::Rice;
    if (name == "generating") return IdentityKind::Generating;
    throw ConfigError("unknown identity: " + name);
}

std::string identity_name(IdentityKind kind) {
    switch (kind) {
        case IdentityKind::Barnes1: return "barnes1";
        case IdentityKind::Gauss: return "gauss";
        case IdentityKind::Connection: return "connection";
        case IdentityKind::Main: return "main";
        case IdentityKind::Derivative: return "derivative";
        case IdentityKind::Bailey: return "bailey";
        case IdentityKind::Rice: return "rice";
        case IdentityKind::Generating: return "generating";
    }
    throw ConfigError("unknown identity kind");
}

SweepReport run_sweep(IdentityKind kind, const RunConfig& config, EvalMode mode) {
    config.validate();
    SweepReport report;
    report.kind = kind;
    report.config = config;

    DrawRng rng(config.seed);
    std::vector<Draw> draws;
    draws.reserve(static_cast<std::size_t>(config.samples));
    for (int i = 0; i < config.samples; ++i) {
        Draw d;
        while (!draw_once(kind, i, rng, d)) {
            if (++report.rejected_draws > 1000000L + 1000L * config.samples)
                throw ConfigError("rejection rate too high; draw scheme cannot satisfy constraints");
        }
        draws.push_back(std::move(d));
    }

    report.rows.reserve(draws.size());
    int passed = 0;
    for (int i = 0; i < config.samples; ++i) {
        SweepRow row = eval_row(kind, draws[static_cast<std::size_t>(i)], config, mode);
        row.index = i;
        if (row.error.empty())
            report.max_residual = std::max(report.max_residual, row.residual);
        if (row.passed) ++passed;
        report.all_passed = report.all_passed && row.passed;
        report.rows.push_back(std::move(row));
    }
    report.pass_rate = config.samples == 0
                           ? 1.0
                           : static_cast<double>(passed) / static_cast<double>(config.samples);
    return report;
}

std::string to_json(const SweepReport& report) {
    ordered_json j;
    j["command"] = "verify";
    j["identity"] = identity_name(report.kind);
    j["config"] = ordered_json{
        {"tolerance", report.config.tolerance},
        {"max_height", report.config.max_height},
        {"seed", report.config.seed},
        {"samples", report.config.samples},
        {"format", report.config.format == OutputFormat::Json ? "json" : "csv"},
    };
    ordered_json rows = ordered_json::array();
    for (const SweepRow& r : report.rows) {
        ordered_json params = ordered_json::object();
        for (const auto& [name, value] : r.params) params[name] = complex_json(value);
        rows.push_back(ordered_json{
            {"index", r.index},
            {"variant", r.variant},
            {"params", params},
            {"lhs", complex_json(r.lhs)},
            {"rhs", complex_json(r.rhs)},
            {"residual", r.residual},
            {"tol", r.tol},
            {"passed", r.passed},
            {"sigma", r.sigma},
            {"height", r.height},
            {"nodes", r.nodes},
            {"corrections", r.corrections},
            {"error", r.error},
        });
    }
    j["rows"] = rows;
    j["summary"] = ordered_json{
        {"samples", report.config.samples},
        {"rejected_draws", report.rejected_draws},
        {"max_residual", report.max_residual},
        {"pass_rate", report.pass_rate},
        {"all_passed", report.all_passed},
    };
    return j.dump(2) + "\n";
}

std::string to_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "index,variant";
    std::vector<std::string> keys;
    if (!report.rows.empty())
        for (const auto& [name, value] : report.rows.front().params) {
            (void)value;
            keys.push_back(name);
        }
    for (const std::string& k : keys) out << "," << k << "_re," << k << "_im";
    out << ",lhs_re,lhs_im,rhs_re,rhs_im,residual,tol,passed,sigma,height,nodes,corrections,error\r\n";
    for (const SweepRow& r : report.rows) {
        out << r.index << "," << csv_escape(r.variant);
        for (const std::string& k : keys) {
            Complex v = r.params.at(k);
            out << "," << format_double(v.real()) << "," << format_double(v.imag());
        }
        out << "," << format_double(r.lhs.real()) << "," << format_double(r.lhs.imag());
        out << "," << format_double(r.rhs.real()) << "," << format_double(r.rhs.imag());
        out << "," << format_double(r.residual) << "," << format_double(r.tol);
        out << "," << (r.passed ? "true" : "false");
        out << "," << format_double(r.sigma) << "," << format_double(r.height);
        out << "," << r.nodes << "," << r.corrections << "," << csv_escape(r.error) << "\r\n";
    }
    return out.str();
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace mbkit
