#pragma once

#include <stdexcept>
#include <string>

namespace reputax {

// Instrument or primitive outside its admissible domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Monotone root-finder could not bracket a sign change.
class NoBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value-function iteration hit max_iters with the sup gap still above tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double final_gap, int iterations)
      : std::runtime_error(what), final_gap_(final_gap), iterations_(iterations) {}

  double final_gap() const noexcept { return final_gap_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double final_gap_;
  int iterations_;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace reputax
