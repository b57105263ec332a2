#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace perioscope {

namespace detail {
inline std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
} // namespace detail

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or input text. Maps to CLI exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Expression text that does not parse. `offset` is a byte offset into the source.
class ParseError : public ConfigError {
public:
    ParseError(std::size_t offset, const std::string& what)
        : ConfigError("at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Base for failures of the numerical pipeline. Maps to CLI exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class EvalError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BlowupError : public NumericalError {
public:
    explicit BlowupError(double t)
        : NumericalError("integration blow-up at t = " + detail::sci(t)), time_(t) {}

    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

/// The periodic linear problem has (numerically) a nontrivial homogeneous periodic solution.
class ResonanceError : public NumericalError {
public:
    explicit ResonanceError(double scaled_det)
        : NumericalError("resonance: scaled determinant " + detail::sci(scaled_det)),
          scaled_det_(scaled_det) {}

    [[nodiscard]] double scaled_determinant() const noexcept { return scaled_det_; }

private:
    double scaled_det_;
};

class SingularSystemError : public NumericalError {
public:
    explicit SingularSystemError(double scaled_det)
        : NumericalError("singular zero-average system: scaled determinant " +
                         detail::sci(scaled_det)),
          scaled_det_(scaled_det) {}

    [[nodiscard]] double scaled_determinant() const noexcept { return scaled_det_; }

private:
    double scaled_det_;
};

class PositivityError : public NumericalError {
public:
    PositivityError(double t, double value)
        : NumericalError("solution dipped below positivity floor: u(" + detail::sci(t) +
                         ") = " + detail::sci(value)),
          time_(t), value_(value) {}

    [[nodiscard]] double time() const noexcept { return time_; }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    double time_;
    double value_;
};

class ConvergenceError : public NumericalError {
public:
    explicit ConvergenceError(double residual)
        : NumericalError("Newton iteration did not converge: residual " +
                         detail::sci(residual)),
          residual_(residual) {}

    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace perioscope
