#ifndef MBKIT_ERRORS_HPP
#define MBKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mbkit {

enum class ErrorKind {
    Pole,                  // gamma evaluated at a non-positive integer
    Overflow,              // a log-magnitude above the exp() safety cap
    Domain,                // argument outside the region an operation covers
    NonAdmissible,         // parameter is a non-positive integer where one is forbidden
    NoConvergence,         // iteration budget exhausted before the tolerance was met
    Degenerate,            // identity degenerates (e.g. integer exponent gap)
    SeparationImpossible,  // no contour keeps the pole families apart
    DivergentIntegrand,    // decay rate non-positive along the contour
    Config,                // bad run configuration / CLI usage
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error(ErrorKind::Pole, w) {}
};
struct OverflowError : Error {
    explicit OverflowError(const std::string& w) : Error(ErrorKind::Overflow, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct NonAdmissibleError : Error {
    explicit NonAdmissibleError(const std::string& w) : Error(ErrorKind::NonAdmissible, w) {}
};
struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& w) : Error(ErrorKind::NoConvergence, w) {}
};
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& w) : Error(ErrorKind::Degenerate, w) {}
};
struct SeparationImpossibleError : Error {
    explicit SeparationImpossibleError(const std::string& w) : Error(ErrorKind::SeparationImpossible, w) {}
};
struct DivergentIntegrandError : Error {
    explicit DivergentIntegrandError(const std::string& w) : Error(ErrorKind::DivergentIntegrand, w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};

} // namespace mbkit

#endif
