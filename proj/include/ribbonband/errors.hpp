#pragma once

#include <stdexcept>
#include <string>

namespace ribbonband {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad size, out-of-range parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge within its cap.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The flat-band criterion v_{2k+1} = v_1 does not hold. `site` is the
/// 1-based lattice row of the first offending odd entry.
class CriterionError : public Error {
 public:
  CriterionError(const std::string& what, int site) : Error(what), site_(site) {}
  int site() const noexcept { return site_; }

 private:
  int site_;
};

}  // namespace ribbonband
