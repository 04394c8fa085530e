#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace breaktime {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A distribution parameter (or operation argument) violates its constraints.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// Density requested for a point-mass law, which has none.
class UnsupportedForDeterministic : public Error {
public:
    using Error::Error;
};

// Both uptime and processing time are point masses at the same value,
// so a success/failure tie has positive probability and the model does
// not define the outcome.
class AtomCollision : public Error {
public:
    using Error::Error;
};

// The adaptive integrator could not reach the requested tolerance.
class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double achieved_abs_error)
        : Error(what), achieved_abs_error(achieved_abs_error) {}

    double achieved_abs_error;
};

// q = 1: every attempt fails, the job never completes.
class NeverCompletes : public Error {
public:
    using Error::Error;
};

// A conditional moment required by a formula is undefined because its
// conditioning event has probability zero.
class UndefinedMoment : public Error {
public:
    using Error::Error;
};

// One or more simulated paths did not complete within the attempt cap.
class AttemptCapExceeded : public Error {
public:
    AttemptCapExceeded(const std::string& what, std::uint64_t truncated_paths)
        : Error(what), truncated_paths(truncated_paths) {}

    std::uint64_t truncated_paths;
};

// A computed result violates an internal identity beyond numerical slack.
class NumericalInconsistency : public Error {
public:
    using Error::Error;
};

// Scenario file could not be read, parsed, or validated.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace breaktime
