#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qft {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the documented domain of an operation.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Real-argument domain violation (e.g. log of a nonpositive number).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The deformed exponential was evaluated at its pole; carries the offending z.
class PoleError : public Error {
public:
    PoleError(const std::string& msg, std::complex<double> z)
        : Error(msg), z_(z) {}
    std::complex<double> argument() const noexcept { return z_; }

private:
    std::complex<double> z_;
};

/// An operation produced a non-finite value that would otherwise escape.
class NonFiniteResultError : public Error {
public:
    using Error::Error;
};

/// An iterative scheme (series, adaptive quadrature) failed to converge.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg, std::string diagnostics = {})
        : Error(msg), diagnostics_(std::move(diagnostics)) {}
    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

/// Degenerate hypergeometric connection coefficients with perturbation disabled.
class DegenerateCaseError : public Error {
public:
    using Error::Error;
};

/// Branch-cut boundary extrapolation did not settle below tolerance.
class BoundaryConvergenceError : public Error {
public:
    using Error::Error;
};

/// Closed form not valid here; the caller must fall back to direct quadrature.
class FallbackRequiredError : public Error {
public:
    using Error::Error;
};

/// No partner window exists for the requested lower edge.
class NoPartnerError : public Error {
public:
    using Error::Error;
};

/// Inverse-transform input spectrum is not negligible at the grid edges.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// A grid-node evaluation failed while assembling a surface; names the node.
class SurfaceError : public Error {
public:
    SurfaceError(const std::string& msg, double k, double q)
        : Error(msg), k_(k), q_(q) {}
    double k() const noexcept { return k_; }
    double q() const noexcept { return q_; }

private:
    double k_;
    double q_;
};

/// Extrapolation of the q -> 1+ slice failed at a specific k.
class SliceError : public Error {
public:
    SliceError(const std::string& msg, double k) : Error(msg), k_(k) {}
    double k() const noexcept { return k_; }

private:
    double k_;
};

}  // namespace qft
