#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairdiv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input-side problems.
struct InvalidInstance : Error { using Error::Error; };
struct DegenerateInstance : Error { using Error::Error; };
struct InfeasibleSpec : Error { using Error::Error; };
struct UnknownProperty : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct ClassMismatch : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

// Graph-side problems.
struct UndefinedWeight : Error {
  UndefinedWeight(std::size_t i, std::size_t j)
      : Error("undefined envy weight (" + std::to_string(i) + "," + std::to_string(j) +
              "): v_i(X_i) = 0 < v_i(X_j)"),
        i(i),
        j(j) {}
  std::size_t i;
  std::size_t j;
};
struct CyclicGraph : Error { using Error::Error; };
struct SuperUnitCycle : Error { using Error::Error; };

// Engine self-checks. Any of these means a bug, never bad input.
struct InvariantViolated : Error { using Error::Error; };
struct PotentialNotIncreased : InvariantViolated { using InvariantViolated::InvariantViolated; };
struct StepLimitExceeded : InvariantViolated { using InvariantViolated::InvariantViolated; };

}  // namespace fairdiv
