#pragma once

#include <stdexcept>
#include <string>

namespace crossperc {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented range of an operation.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Input violates a structural invariant (profile not +-1, size mismatch...).
class ContractError : public Error {
public:
  using Error::Error;
};

/// Request exceeds the dense state-space budget.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Chain or formula is undefined at the requested parameters.
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// Monte Carlo run produced no usable samples.
class EstimationError : public Error {
public:
  using Error::Error;
};

inline void require_parameter(bool ok, const std::string &what) {
  if (!ok)
    throw ParameterError(what);
}

inline void require_contract(bool ok, const std::string &what) {
  if (!ok)
    throw ContractError(what);
}

inline void require_probability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError(std::string(name) + " must lie in [0,1], got " + std::to_string(p));
}

} // namespace crossperc
