#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schreierlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidFamilyParams : Error {
    using Error::Error;
};

struct FamilyMismatch : Error {
    using Error::Error;
};

// Thrown by enumeration-style operations; carries the exact group order
// when it is known (UINT64_MAX when the order does not fit a machine word).
struct BudgetExceeded : Error {
    std::uint64_t required;
    BudgetExceeded(std::uint64_t req, const std::string& what)
        : Error(what), required(req) {}
};

struct RetryExhausted : Error {
    using Error::Error;
};

struct SizesExceedK : Error {
    using Error::Error;
};

struct PreconditionUnmet : Error {
    using Error::Error;
};

struct GraphDisconnected : Error {
    using Error::Error;
};

struct OrderUnknown : Error {
    using Error::Error;
};

struct EmptyGeneratorSet : Error {
    using Error::Error;
};

struct DegenerateSchedule : Error {
    using Error::Error;
};

// Names the first proof-schedule inequality that fails.
struct ScheduleInfeasible : Error {
    std::string inequality;
    ScheduleInfeasible(std::string ineq, const std::string& what)
        : Error(what), inequality(std::move(ineq)) {}
};

struct PipelineStageFailed : Error {
    std::string stage;
    PipelineStageFailed(std::string st, const std::string& what)
        : Error(what), stage(std::move(st)) {}
};

struct IoError : Error {
    using Error::Error;
};

} // namespace schreierlab
