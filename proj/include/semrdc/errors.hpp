#pragma once

#include <stdexcept>
#include <string>

namespace semrdc {

// Distortion or distance budget below the feasibility floor. Carries the
// floor so sweep drivers can clip their domain instead of guessing it.
class infeasible_error : public std::runtime_error {
 public:
  infeasible_error(const std::string& what, double floor)
      : std::runtime_error(what), floor_(floor) {}
  double floor() const noexcept { return floor_; }

 private:
  double floor_;
};

// gamma * rho == 0: the S -> U leg carries no information and the
// distortion transfer to the direct problem is undefined.
class degenerate_chain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-facing input (CLI flags, config file). Maps to exit code 1.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semrdc
