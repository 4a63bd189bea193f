#pragma once

#include <stdexcept>
#include <string>

namespace cocycle {

// Error kinds surfaced to callers.  The CLI maps these onto exit codes:
// parse/usage problems exit 2, resource-cap aborts exit 3, everything else 1.
enum class errc {
    division_by_zero,
    field_mismatch,
    dimension_mismatch,
    not_lie,
    not_assoc_comm,
    not_an_ideal,
    not_unital,
    invalid_characteristic,
    invalid_representation,
    jacobi_failure,
    spec_violation,
    parse_error,
    validation_error,
    resource_error,
    precondition_failed,
    internal_error,
};

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::division_by_zero: return "DivisionByZero";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::not_lie: return "NotLie";
        case errc::not_assoc_comm: return "NotAssocComm";
        case errc::not_an_ideal: return "NotAnIdeal";
        case errc::not_unital: return "NotUnital";
        case errc::invalid_characteristic: return "InvalidCharacteristic";
        case errc::invalid_representation: return "InvalidRepresentation";
        case errc::jacobi_failure: return "JacobiFailure";
        case errc::spec_violation: return "SpecViolation";
        case errc::parse_error: return "ParseError";
        case errc::validation_error: return "ValidationError";
        case errc::resource_error: return "ResourceError";
        case errc::precondition_failed: return "PreconditionFailed";
        case errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + msg), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc k, const std::string& msg) { throw error(k, msg); }

inline void require(bool cond, errc k, const std::string& msg) {
    if (!cond) fail(k, msg);
}

}  // namespace cocycle
