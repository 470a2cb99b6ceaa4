#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace molopt {

// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pivot fell below the singularity threshold during elimination.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

// Every coefficient of a polynomial is zero.
class DegenerateAllZeroError : public Error {
public:
    using Error::Error;
};

// An iteration hit its cap; carries the best residual reached.
class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& msg, double residual)
        : Error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class InvalidBracketError : public Error {
public:
    using Error::Error;
};

// Response amplitude has an exact pole; carries the offending signal frequency.
class DivergesError : public Error {
public:
    DivergesError(const std::string& msg, double omega_ir_thz)
        : Error(msg), omega_ir_(omega_ir_thz) {}
    double omega_ir() const { return omega_ir_; }

private:
    double omega_ir_;
};

// A whole Routh row vanished; the polynomial sits on the stability boundary.
class InconclusiveBorderlineError : public Error {
public:
    using Error::Error;
};

// The efficiency diverges inside the scanned band, FWHM is undefined.
class PoleInBandError : public Error {
public:
    using Error::Error;
};

// The curve never falls to half maximum on one side, even after widening.
class HalfMaxNotBracketedError : public Error {
public:
    using Error::Error;
};

// No stable operating point inside the requested coupling range.
class AllUnstableError : public Error {
public:
    using Error::Error;
};

// Parameter invariant violations; carries one code per failed invariant.
class ValidationError : public Error {
public:
    ValidationError(const std::string& msg, std::vector<std::string> codes)
        : Error(msg), codes_(std::move(codes)) {}
    const std::vector<std::string>& codes() const { return codes_; }

private:
    std::vector<std::string> codes_;
};

// Malformed configuration document or command line.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace molopt
