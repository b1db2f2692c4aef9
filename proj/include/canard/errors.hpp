#pragma once

#include <stdexcept>
#include <string>

namespace canard {

// Base class for all numerical/domain failures raised by the library.
// CLI maps these to exit code 3 (numerical failure) or 4 (audit failure).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonunitSeriesError : public Error {
public:
    NonunitSeriesError() : Error("nonunit series: division requires a nonzero constant term") {}
};

class CenterMismatchError : public Error {
public:
    explicit CenterMismatchError(const std::string& detail)
        : Error("series center mismatch: " + detail) {}
};

class NonInvertibleJetError : public Error {
public:
    NonInvertibleJetError() : Error("non-invertible jet: reversion requires f(0)=0 and f'(0)!=0") {}
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& detail, std::string best, std::string achieved)
        : Error("quadrature did not converge: " + detail +
                " (best estimate " + best + ", achieved tolerance " + achieved + ")"),
          best_estimate(std::move(best)), achieved_tolerance(std::move(achieved)) {}
    std::string best_estimate;
    std::string achieved_tolerance;
};

class NotSlidingError : public Error {
public:
    explicit NotSlidingError(const std::string& where)
        : Error("not sliding: Filippov field undefined at " + where) {}
};

class DegenerateTangencyError : public Error {
public:
    DegenerateTangencyError() : Error("beyond quadratic tangency: Z^2(h) vanishes at a tangency point") {}
};

class NonMonotoneError : public Error {
public:
    explicit NonMonotoneError(const std::string& detail)
        : Error("non-monotone function: " + detail) {}
};

class NoReturnError : public Error {
public:
    explicit NoReturnError(const std::string& detail)
        : Error("no return: " + detail) {}
};

class StiffSegmentError : public Error {
public:
    explicit StiffSegmentError(const std::string& detail)
        : Error("stiff segment: " + detail + "; consider the scaled chart") {}
};

class AuditError : public Error {
public:
    explicit AuditError(const std::string& detail) : Error("audit failure: " + detail) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& detail) : Error("config error: " + detail) {}
};

} // namespace canard
