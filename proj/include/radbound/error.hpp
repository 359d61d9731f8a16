#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace radbound {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix/vector dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Mismatched depths, malformed subsequences and similar contract violations.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Non-finite data, or a result that left the representable range.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A layer whose norms are zero, so R(d) would be 0/0.
class DegenerateBudgetError : public Error {
public:
    using Error::Error;
};

/// Requested estimator mode is not applicable (e.g. exact enumeration with n > 16).
class ModeError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_estimate, Eigen::VectorXd last_iterate)
        : Error(what), last_estimate_(last_estimate), last_iterate_(std::move(last_iterate)) {}

    double last_estimate() const { return last_estimate_; }
    const Eigen::VectorXd& last_iterate() const { return last_iterate_; }

private:
    double last_estimate_;
    Eigen::VectorXd last_iterate_;
};

}  // namespace radbound
