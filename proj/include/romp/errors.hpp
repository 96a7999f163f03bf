#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace romp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (sizes, ranges, signs).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A least-squares system was numerically rank deficient.
class DegenerateSystemError : public Error {
 public:
  using Error::Error;
};

/// An attack construction cannot be carried out on this instance.
class AttackDegenerateError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search refused because the candidate count exceeds the guard.
class SizeGuardError : public Error {
 public:
  SizeGuardError(const std::string& what, double candidates)
      : Error(what), candidates_(candidates) {}
  double candidates() const noexcept { return candidates_; }

 private:
  double candidates_;
};

/// An iterative solver hit its iteration cap. Carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate,
                   int iterations)
      : Error(what), last_iterate_(std::move(last_iterate)),
        iterations_(iterations) {}
  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Eigen::VectorXd last_iterate_;
  int iterations_;
};

}  // namespace romp
