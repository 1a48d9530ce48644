#pragma once

#include <stdexcept>
#include <string>

namespace waveguide {

// Invalid user input or violated operation precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Factorization or solve failure.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The degenerate configurations the asymptotic formulas exclude.
enum class ExceptionalCase {
  LimitCouplingVanishes,   // |S22| = 1, i.e. S12 = 0
  Packet14Vanishes,        // s14 = 0
  ReducedCoefficientUnit,  // |s33 - s13 s34 / s14| = 1
  ThresholdReflection,     // s44 = -1
};

inline const char* to_string(ExceptionalCase c) {
  switch (c) {
    case ExceptionalCase::LimitCouplingVanishes:
      return "limit_coupling_vanishes";
    case ExceptionalCase::Packet14Vanishes:
      return "s14_vanishes";
    case ExceptionalCase::ReducedCoefficientUnit:
      return "reduced_coefficient_on_unit_circle";
    case ExceptionalCase::ThresholdReflection:
      return "s44_equals_minus_one";
  }
  return "unknown";
}

class ExceptionalCaseError : public std::domain_error {
 public:
  ExceptionalCaseError(ExceptionalCase which, const std::string& what)
      : std::domain_error(what), which_(which) {}
  ExceptionalCase which() const { return which_; }

 private:
  ExceptionalCase which_;
};

}  // namespace waveguide
