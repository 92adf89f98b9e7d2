#pragma once

#include <stdexcept>
#include <string>

namespace helix {

/// Violated precondition on a caller-supplied argument.
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on valid input.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public NumericalError {
  public:
    IntegrationError(const std::string &what, double epsilon)
        : NumericalError(what), epsilon_(epsilon) {}
    double epsilon() const noexcept { return epsilon_; }

  private:
    double epsilon_;
};

class SearchExhaustedError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class OutOfDiskError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class DegenerateSpectrumError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// W(r) did not show the expected two sign changes on the scanned bracket.
class TopologyError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

} // namespace helix
