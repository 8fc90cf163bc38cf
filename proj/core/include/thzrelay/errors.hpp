// SPDX-License-Identifier: Apache-2.0
#ifndef THZRELAY_ERRORS_HPP
#define THZRELAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thz {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. x < 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Invalid model parameters (negative shapes, wrong fading family, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// No vertical line separates the left and right pole sets of a
/// Mellin-Barnes integrand.
class ContourPlacementError : public Error {
public:
    using Error::Error;
};

/// Adaptive refinement exhausted without meeting the requested tolerance.
class AccuracyNotReachedError : public Error {
public:
    AccuracyNotReachedError(const std::string& what, double achieved_rel_error)
        : Error(what + " (achieved relative error " + std::to_string(achieved_rel_error) + ")"),
          achieved_(achieved_rel_error) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// An asymptotic expansion hits a gamma-function pole because two exponents
/// coincide. `pair()` names the colliding quantities.
class DegenerateError : public Error {
public:
    DegenerateError(const std::string& what, std::string pair)
        : Error(what), pair_(std::move(pair)) {}

    const std::string& pair() const noexcept { return pair_; }

private:
    std::string pair_;
};

/// Two dominant high-SNR terms share the smallest average-SNR exponent but
/// differ in their SNR exponent.
class TieError : public Error {
public:
    using Error::Error;
};

/// Numerical quadrature failed to converge.
class QuadratureError : public Error {
public:
    using Error::Error;
};

} // namespace thz

#endif
