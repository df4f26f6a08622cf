#ifndef EQK_ERRORS_HPP
#define EQK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroMassError : Error {
  using Error::Error;
};

struct BadWeightsError : Error {
  using Error::Error;
};

struct AllMassAtZeroError : Error {
  using Error::Error;
};

struct SupportAtZeroError : Error {
  using Error::Error;
};

struct NotDominatedError : Error {
  using Error::Error;
};

struct BadScheduleError : Error {
  using Error::Error;
};

struct BudgetExceededError : Error {
  using Error::Error;
};

struct HypothesisFailedError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct BadParamsError : Error {
  using Error::Error;
};

struct BadConfigError : Error {
  using Error::Error;
};

}  // namespace eqk

#endif  // EQK_ERRORS_HPP
