#ifndef UWB_ERRORS_HPP
#define UWB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uwb {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Rate not present in the WiMedia MCS table.
class UnknownModeError : public Error {
  public:
    using Error::Error;
};

/// Precondition violation on a numeric argument (empty input, non-positive
/// scale, zero noise floor, rate outside the table range, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// No feasible allocation exists for the requested instance.
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// Scenario/config file problem: unknown key, bad value, missing section.
class ConfigError : public Error {
  public:
    using Error::Error;
};

} // namespace uwb

#endif
