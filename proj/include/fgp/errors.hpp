#ifndef FGP_ERRORS_HPP
#define FGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fgp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration (bad k, window outside panel, unknown flag value).
/// CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// Bad or inconsistent input data (parse failures, invalid caps/returns,
/// universe too small, missing names). CLI exit code 3.
struct DataError : Error {
    using Error::Error;
};

/// Numerical/domain failures during a run (non-simplex weights, non-positive
/// generating-function value, additive wealth hitting zero, misaligned
/// inputs). CLI exit code 4.
struct NumericError : Error {
    using Error::Error;
};

} // namespace fgp

#endif
