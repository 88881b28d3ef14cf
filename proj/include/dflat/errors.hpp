#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dflat {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Requested derivative order exceeds the supported jet depth.
class UnsupportedOrderError : public Error
{
public:
    using Error::Error;
};

/// A non-finite value showed up while evaluating a field; carries the probe point.
class EvaluationError : public Error
{
public:
    EvaluationError(std::string const& what, std::vector<double> x, std::vector<double> y);

    std::vector<double> const& x() const noexcept { return x_; }
    std::vector<double> const& y() const noexcept { return y_; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

/// A point lies outside the region where a metric or transform is defined.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Deformation factor violates 1 - kappa b^2 > 0 (or nu vanishes).
class PositivityError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Least-squares extraction has too little data (for instance beta = 0).
class UnderdeterminedError : public Error
{
public:
    using Error::Error;
};

/// Singular or ill-conditioned linear system.
class LinearSolveError : public Error
{
public:
    using Error::Error;
};

/// Least-squares system without full column rank.
class RankError : public Error
{
public:
    using Error::Error;
};

/// Fundamental tensor or Hessian that is not positive definite.
class ConvexityError : public Error
{
public:
    using Error::Error;
};

/// Degenerate plane or flag.
class DegenerateError : public Error
{
public:
    using Error::Error;
};

/// Invalid construction parameters.
class ParameterError : public Error
{
public:
    using Error::Error;
};

std::string format_point(std::vector<double> const& v);

}  // namespace dflat
