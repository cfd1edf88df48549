#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

/// Raised when a field or state leaves the representable range (overflow,
/// NaN) or when the solver's blow-up guard trips.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A step was rejected by the divergence guard; callers may retry with a
/// smaller step.
class StepFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Window refinement hit its depth limit.
class BlowUpSuspected : public NumericalError {
 public:
  BlowUpSuspected(const std::string& what, double window_begin, double window_end)
      : NumericalError(what), begin_(window_begin), end_(window_end) {}

  double window_begin() const noexcept { return begin_; }
  double window_end() const noexcept { return end_; }

 private:
  double begin_;
  double end_;
};

}  // namespace fracwave
