#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cgf {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    using Error::Error;
};

/// Map validation failures (missing residue class, integrality conditions).
struct ValidationError : Error {
    enum class Kind { MissingResidueClass, ConditionAViolated, ConditionBViolated };
    Kind kind;
    std::vector<long> residue;  // offending residue class, when applicable
    int component = -1;         // offending component, when applicable
    ValidationError(Kind k, std::string msg, std::vector<long> r = {}, int comp = -1)
        : Error(std::move(msg)), kind(k), residue(std::move(r)), component(comp) {}
};

/// Evaluation outside the admissible domain (|z| not in (0,1), |w| >= R_w, ...).
struct DomainViolation : Error {
    using Error::Error;
};

struct TruncationTooLarge : Error {
    using Error::Error;
};

struct OutOfBox : Error {
    using Error::Error;
};

struct ZeroArgument : Error {
    using Error::Error;
};

struct PoleProximity : Error {
    using Error::Error;
};

struct NonFiniteSample : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

}  // namespace cgf
