#pragma once

#include <stdexcept>
#include <string>

namespace dhm {

// Bad user input: flags, domain coefficients, budgets out of range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested budget cannot resolve the signal it is meant to measure.
class BudgetInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CensoringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dhm
