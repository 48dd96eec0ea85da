#ifndef NORDFREQ_ERRORS_HPP
#define NORDFREQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nordfreq {

// Base class for every error thrown by this library.  Callers that only
// care about "nordfreq failed" can catch this; the CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- input / configuration problems (CLI exit code 2) ----------------------

// Malformed or inconsistent input data (CSV rows, headers, encodings).
class IngestError : public Error {
public:
    using Error::Error;
};

// Bad or missing configuration (config file keys, required price labels).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A scalar value failed to parse (numbers, timestamps, booleans).
class ParseError : public Error {
public:
    using Error::Error;
};

// An operation was called with parameters outside its contract
// (e.g. bootstrap subsample size larger than the pool).
class ParameterError : public Error {
public:
    using Error::Error;
};

// A remedial plan is infeasible: a per-link HVDC injection exceeds the
// link's capacity.  The message lists the offending hours.
class CapacityError : public Error {
public:
    using Error::Error;
};

// --- domain / numerical problems (CLI exit code 3) --------------------------

// A quantity left its mathematical domain (zero kinetic energy, negative
// imbalance where a non-negative one is required, value below a curve's
// validated range).
class DomainError : public Error {
public:
    using Error::Error;
};

// A lookup landed outside a series' time range.
class RangeError : public Error {
public:
    using Error::Error;
};

// Two series cannot be combined (step mismatch, incompatible phases or
// calendars).
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Two series have no common time range.
class EmptyOverlapError : public AlignmentError {
public:
    using AlignmentError::AlignmentError;
};

// A computation consumed a cell that is explicitly marked absent.
class MissingValueError : public Error {
public:
    using Error::Error;
};

// Physically impossible state, e.g. the dimensioning unit's kinetic energy
// exceeding the system total it is supposed to be part of.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

// A regression cannot be fitted (fewer than two distinct abscissae).
class SingularFitError : public Error {
public:
    using Error::Error;
};

// Integration or another numeric routine produced a non-finite value.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace nordfreq

#endif // NORDFREQ_ERRORS_HPP
