// mbkit: evaluate 2F1 by series or contour integral, run identity sweeps,
// and dump contour diagnostics.  All machine-readable output goes to stdout;
// human-readable errors go to stderr.

#include "mbkit/errors.hpp"
#include "mbkit/identities.hpp"
#include "mbkit/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <iostream>
#include <string>

namespace {

using mbkit::Complex;
using ordered_json = nlohmann::ordered_json;

double parse_real_token(const std::string& tok) {
    if (tok.empty()) throw mbkit::ConfigError("empty numeric literal");
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    if (*begin == '+') ++begin;  // from_chars takes '-' but not '+'
    if (begin == end) throw mbkit::ConfigError("bad numeric literal: " + tok);
    double v = 0.0;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw mbkit::ConfigError("bad numeric literal: " + tok);
    return v;
}

// Single-token complex literals: "1.5", "-0.3+0.2i", "2i", "-i".  No spaces.
Complex parse_complex(const std::string& in) {
    if (in.empty()) throw mbkit::ConfigError("empty complex literal");
    if (in.find_first_of(" \t") != std::string::npos)
        throw mbkit::ConfigError("complex literal must not contain spaces: " + in);
    std::string s = in;
    if (s.back() != 'i' && s.back() != 'I') return {parse_real_token(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        char ch = s[k];
        if ((ch == '+' || ch == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+" || s == "-") s += "1";
        return {0.0, parse_real_token(s)};
    }
    std::string re = s.substr(0, split);
    std::string im = s.substr(split);
    if (im == "+" || im == "-") im += "1";
    return {parse_real_token(re), parse_real_token(im)};
}

const char* kind_string(mbkit::ErrorKind k) {
    switch (k) {
        case mbkit::ErrorKind::Pole: return "pole";
        case mbkit::ErrorKind::Overflow: return "overflow";
        case mbkit::ErrorKind::Domain: return "domain";
        case mbkit::ErrorKind::NonAdmissible: return "non-admissible";
        case mbkit::ErrorKind::NoConvergence: return "no-convergence";
        case mbkit::ErrorKind::Degenerate: return "degenerate";
        case mbkit::ErrorKind::SeparationImpossible: return "separation-impossible";
        case mbkit::ErrorKind::DivergentIntegrand: return "divergent-integrand";
        case mbkit::ErrorKind::Config: return "config";
    }
    return "config";
}

int exit_code_for(mbkit::ErrorKind k) {
    switch (k) {
        case mbkit::ErrorKind::NoConvergence:
        case mbkit::ErrorKind::Overflow:
        case mbkit::ErrorKind::DivergentIntegrand:
            return 3;
        default:
            return 2;
    }
}

int fail(const std::string& command, const mbkit::Error& e) {
    ordered_json j;
    j["command"] = command;
    j["error"] = ordered_json{{"kind", kind_string(e.kind())}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    std::cerr << "mbkit " << command << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
}

ordered_json complex_json(Complex z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

const char* series_status_string(mbkit::SeriesStatus st) {
    switch (st) {
        case mbkit::SeriesStatus::Converged: return "converged";
        case mbkit::SeriesStatus::Terminated: return "terminated";
        case mbkit::SeriesStatus::NearUnitCircle: return "near-unit-circle";
    }
    return "converged";
}

struct EvalOpts {
    std::string a, b, c, z;
    std::string method = "series";
    double tol = 1e-10;
    double max_height = 200.0;
    std::string format = "json";
};

int run_eval(const EvalOpts& o) {
    mbkit::HypParams p{parse_complex(o.a), parse_complex(o.b), parse_complex(o.c)};
    Complex z = parse_complex(o.z);
    mbkit::RunConfig cfg;
    cfg.tolerance = o.tol;
    cfg.max_height = o.max_height;
    cfg.validate();

    Complex value;
    double error_estimate = 0.0;
    long nodes = 0;
    std::string status;
    bool have_contour = false;
    mbkit::Contour used;

    if (o.method == "series") {
        mbkit::SeriesResult r = mbkit::f21_series_full(p, z, o.tol);
        value = r.value;
        error_estimate = r.tail;
        nodes = r.terms;
        status = series_status_string(r.status);
    } else if (o.method == "barnes") {
        mbkit::QuadratureResult q;
        value = mbkit::f21_barnes(p, z, o.tol, o.max_height, &q);
        error_estimate = q.error_estimate;
        nodes = q.nodes;
        status = q.status == mbkit::QuadStatus::Converged ? "converged" : "tolerance-not-met";
        have_contour = true;
        used = q.contour;
    } else if (o.method == "main-theorem") {
        // the contour form produces F(a,b;c;1-w); pass w = 1-z so the CLI
        // uniformly reports F(a,b;c;z)
        mbkit::QuadratureResult q;
        value = mbkit::f21_main_theorem(p, Complex(1.0, 0.0) - z, o.tol, o.max_height, &q);
        error_estimate = q.error_estimate;
        nodes = q.nodes;
        status = q.status == mbkit::QuadStatus::Converged ? "converged" : "tolerance-not-met";
        have_contour = true;
        used = q.contour;
    } else {
        throw mbkit::ConfigError("unknown method: " + o.method);
    }

    if (o.format == "csv") {
        std::cout << "value_re,value_im,error_estimate,nodes,status\r\n"
                  << mbkit::format_double(value.real()) << ","
                  << mbkit::format_double(value.imag()) << ","
                  << mbkit::format_double(error_estimate) << "," << nodes << "," << status
                  << "\r\n";
        return 0;
    }
    ordered_json j;
    j["command"] = "eval";
    j["config"] = ordered_json{
        {"method", o.method},   {"a", complex_json(p.a)},
        {"b", complex_json(p.b)}, {"c", complex_json(p.c)},
        {"z", complex_json(z)},  {"tol", o.tol},
        {"max_height", o.max_height}, {"format", o.format},
    };
    ordered_json contour_j = nullptr;
    if (have_contour)
        contour_j = ordered_json{
            {"sigma", used.sigma}, {"height", used.height}, {"step", used.step}};
    j["result"] = ordered_json{
        {"value", complex_json(value)},
        {"error_estimate", error_estimate},
        {"nodes", nodes},
        {"status", status},
        {"contour", contour_j},
    };
    j["summary"] = ordered_json{{"status", "ok"}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct VerifyOpts {
    std::string identity;
    double tol = 1e-10;
    double max_height = 200.0;
    std::uint64_t seed = 0;
    int samples = 50;
    std::string format = "json";
};

int run_verify(const VerifyOpts& o) {
    mbkit::RunConfig cfg;
    cfg.tolerance = o.tol;
    cfg.max_height = o.max_height;
    cfg.seed = o.seed;
    cfg.samples = o.samples;
    cfg.format = o.format == "csv" ? mbkit::OutputFormat::Csv : mbkit::OutputFormat::Json;
    mbkit::IdentityKind kind = mbkit::identity_from_name(o.identity);
    mbkit::SweepReport report = mbkit::run_sweep(kind, cfg);
    std::cout << (cfg.format == mbkit::OutputFormat::Csv ? mbkit::to_csv(report)
                                                         : mbkit::to_json(report));
    return report.all_passed ? 0 : 3;
}

struct ContourOpts {
    std::string a, b, c;
    std::string z = "-0.5";
    std::string method = "barnes";
    double tol = 1e-10;
    double max_height = 200.0;
    int samples = 33;
};

const char* side_string(mbkit::PoleSide s) {
    return s == mbkit::PoleSide::Left ? "left" : "right";
}

int run_contour(const ContourOpts& o) {
    mbkit::HypParams p{parse_complex(o.a), parse_complex(o.b), parse_complex(o.c)};
    Complex z = parse_complex(o.z);
    mbkit::RunConfig cfg;
    cfg.tolerance = o.tol;
    cfg.max_height = o.max_height;
    cfg.validate();

    mbkit::GammaProductIntegrand f;
    if (o.method == "barnes") {
        if (z.imag() == 0.0 && z.real() >= 0.0)
            throw mbkit::DomainError("contour (barnes): z must avoid [0, inf)");
        f.plus_shifts = {p.a, p.b};
        f.minus_shifts = {Complex(0.0, 0.0)};
        f.den_shifts = {p.c};
        f.power_base = -z;
    } else if (o.method == "main-theorem") {
        Complex w = Complex(1.0, 0.0) - z;
        if (w.imag() == 0.0 && w.real() <= 0.0)
            throw mbkit::DomainError("contour (main-theorem): 1-z must avoid (-inf, 0]");
        f.plus_shifts = {p.a, p.b};
        f.minus_shifts = {p.c - p.a - p.b, Complex(0.0, 0.0)};
        f.power_base = w;
    } else {
        throw mbkit::ConfigError("unknown method: " + o.method);
    }

    mbkit::ContourLayout layout = mbkit::analyze_contour(f, o.tol, o.max_height, o.samples);

    ordered_json fams = ordered_json::array();
    for (const mbkit::PoleFamily& fam : layout.families) {
        ordered_json members = ordered_json::array();
        for (int n = 0; n < 8; ++n) {
            Complex m = fam.side == mbkit::PoleSide::Left
                            ? fam.base - Complex(static_cast<double>(n), 0.0)
                            : fam.base + Complex(static_cast<double>(n), 0.0);
            members.push_back(complex_json(m));
        }
        fams.push_back(ordered_json{
            {"base", complex_json(fam.base)},
            {"side", side_string(fam.side)},
            {"source", fam.source},
            {"members", members},
        });
    }
    ordered_json magnitude = ordered_json::array();
    for (const auto& [t, lg] : layout.magnitude)
        magnitude.push_back(ordered_json::array({t, lg}));

    ordered_json j;
    j["command"] = "contour";
    j["config"] = ordered_json{
        {"method", o.method},   {"a", complex_json(p.a)},
        {"b", complex_json(p.b)}, {"c", complex_json(p.c)},
        {"z", complex_json(z)},  {"tol", o.tol},
        {"max_height", o.max_height}, {"samples", o.samples},
    };
    j["layout"] = ordered_json{
        {"families", fams},
        {"separable", layout.separable},
        {"left_max", layout.left_max},
        {"right_min", layout.right_min},
        {"interval", layout.separable
                         ? ordered_json::array({layout.left_max, layout.right_min})
                         : ordered_json(nullptr)},
        {"sigma", layout.separable ? ordered_json(layout.sigma) : ordered_json(nullptr)},
        {"height", layout.separable ? ordered_json(layout.height) : ordered_json(nullptr)},
        {"magnitude", magnitude},
    };
    j["summary"] = ordered_json{{"separable", layout.separable}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mellin-Barnes evaluation of 2F1 and gamma-product identity checks"};
    app.require_subcommand(1);

    EvalOpts eo;
    CLI::App* eval = app.add_subcommand("eval", "evaluate 2F1(a,b;c;z)");
    eval->add_option("--a", eo.a, "parameter a")->required();
    eval->add_option("--b", eo.b, "parameter b")->required();
    eval->add_option("--c", eo.c, "parameter c")->required();
    eval->add_option("--z", eo.z, "argument z")->required();
    eval->add_option("--method", eo.method, "series | barnes | main-theorem")
        ->check(CLI::IsMember({"series", "barnes", "main-theorem"}));
    eval->add_option("--tol", eo.tol, "target tolerance")->envname("MBKIT_TOL");
    eval->add_option("--max-height", eo.max_height, "truncation height cap");
    eval->add_option("--format", eo.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    VerifyOpts vo;
    CLI::App* verify = app.add_subcommand("verify", "run a seeded identity sweep");
    verify->add_option("--identity", vo.identity,
                       "barnes1 | gauss | connection | main | derivative | bailey | rice | generating")
        ->required();
    verify->add_option("--tol", vo.tol, "pass/fail tolerance")->envname("MBKIT_TOL");
    verify->add_option("--max-height", vo.max_height, "truncation height cap");
    verify->add_option("--seed", vo.seed, "RNG seed");
    verify->add_option("--samples", vo.samples, "number of draws");
    verify->add_option("--format", vo.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    ContourOpts co;
    CLI::App* contour = app.add_subcommand("contour", "dump pole layout and line diagnostics");
    contour->add_option("--a", co.a, "parameter a")->required();
    contour->add_option("--b", co.b, "parameter b")->required();
    contour->add_option("--c", co.c, "parameter c")->required();
    contour->add_option("--z", co.z, "argument z (default -0.5)");
    contour->add_option("--method", co.method, "barnes | main-theorem")
        ->check(CLI::IsMember({"barnes", "main-theorem"}));
    contour->add_option("--tol", co.tol, "tolerance for the height bound")->envname("MBKIT_TOL");
    contour->add_option("--max-height", co.max_height, "truncation height cap");
    contour->add_option("--samples", co.samples, "magnitude sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mbkit: " << e.what() << "\n";
        return 2;
    }

    std::string command = eval->parsed() ? "eval" : verify->parsed() ? "verify" : "contour";
    try {
        if (eval->parsed()) return run_eval(eo);
        if (verify->parsed()) return run_verify(vo);
        return run_contour(co);
    } catch (const mbkit::Error& e) {
        return fail(command, e);
    } catch (const std::exception& e) {
        std::cerr << "mbkit: " << e.what() << "\n";
        return 2;
    }
}
