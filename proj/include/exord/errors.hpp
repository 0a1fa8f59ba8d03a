#pragma once

#include <stdexcept>
#include <string>

namespace exord {

// Bad register layouts, dimension mismatches, unknown register names.
class LayoutError : public std::runtime_error {
public:
    explicit LayoutError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid group construction or elements outside the group.
class GroupError : public std::runtime_error {
public:
    explicit GroupError(const std::string& what) : std::runtime_error(what) {}
};

// Out-of-range numeric parameters (bad rotation targets, a outside (0,1), ...).
class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant (norm drift, zero-norm marginal). Signals a
// bug upstream, not bad user input.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

// Advisory precondition check of the exact boosts failed: the prepared
// success probability is not the expected 1/2 (or 1/4). Carries the value
// actually measured so callers can decide what to do.
class BoostPreconditionError : public std::runtime_error {
public:
    BoostPreconditionError(double measured, double expected, const std::string& what)
        : std::runtime_error(what), measured_probability(measured), expected_probability(expected) {}
    double measured_probability;
    double expected_probability;
};

} // namespace exord
