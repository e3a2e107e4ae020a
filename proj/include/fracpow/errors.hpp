#pragma once

#include <stdexcept>
#include <string>

namespace fracpow {

/// Invalid argument or parameter outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation requires (x, y) to lie in the Jorgensen set and it does not.
class MembershipError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Work or subdivision limit from the EvalProfile was exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative method failed to converge within its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracpow
