#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace besselrg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoleError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct NonConvergenceError : Error {
  using Error::Error;
};

struct TailMismatchError : Error {
  using Error::Error;
};

struct TailExponentError : Error {
  using Error::Error;
};

struct ExponentError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// A trajectory that escaped to infinity. `lambda` is the scale at which the
// escape was detected; `samples` holds (Lambda, value) pairs produced before it.
struct BlowUpError : Error {
  double lambda;
  std::vector<std::pair<double, double>> samples;

  BlowUpError(const std::string& what, double lambda_at,
              std::vector<std::pair<double, double>> partial = {})
      : Error(what), lambda(lambda_at), samples(std::move(partial)) {}
};

}  // namespace besselrg
