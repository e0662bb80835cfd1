#pragma once

#include <stdexcept>
#include <string>

namespace darkport {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (alpha <= 0, x = 0 for S(y, x), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A photon-number cutoff could not be grown far enough to meet the tail tolerance.
class CutoffError : public Error {
public:
    CutoffError(const std::string& what, double achieved_deficit, std::size_t cutoff)
        : Error(what), achieved_deficit_(achieved_deficit), cutoff_(cutoff) {}

    double achieved_deficit() const noexcept { return achieved_deficit_; }
    std::size_t cutoff() const noexcept { return cutoff_; }

private:
    double achieved_deficit_;
    std::size_t cutoff_;
};

/// Covariance matrix violating the uncertainty relation.
class NonPhysicalStateError : public Error {
public:
    using Error::Error;
};

/// Likelihood maximisation or moment inversion failed.
class EstimationError : public Error {
public:
    using Error::Error;
};

}  // namespace darkport
