#pragma once

#include <stdexcept>
#include <string>

namespace specgsa {

/// A caller-supplied argument violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature refinement did not settle; carries the last two approximations.
class NumericalFailure : public std::runtime_error {
  public:
    NumericalFailure(const std::string& what, double previous, double current)
        : std::runtime_error(what), previous_(previous), current_(current) {}

    double previous() const noexcept { return previous_; }
    double current() const noexcept { return current_; }

  private:
    double previous_;
    double current_;
};

/// The top eigenvalue is numerically multiple, so the gradient is undefined.
class DegenerateGradient : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds a hard size guard.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// An operation was invoked on an object that does not satisfy its
/// documented state requirement (e.g. sandwich checks on a non-good family).
class PreconditionError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo run skipped too many samples to be trusted.
class SkipBudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace specgsa
