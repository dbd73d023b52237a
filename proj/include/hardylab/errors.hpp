#pragma once

#include <stdexcept>
#include <string>

namespace hardylab {

/// Base class for all library errors.
struct LabError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands disagree in order or field where agreement is required.
struct DimensionMismatchError : LabError {
    using LabError::LabError;
};

/// An operation received the wrong field, or an illegal field combination.
struct FieldError : LabError {
    using LabError::LabError;
};

/// Argument outside the mathematical domain (|w| >= 1, |zero| >= 1, ...).
struct DomainError : LabError {
    using LabError::LabError;
};

/// Zero subspace or zero function where a nonzero one is required.
struct DegenerateInputError : LabError {
    using LabError::LabError;
};

/// complement_in(S, T) called with T not contained in S.
struct ContainmentError : LabError {
    using LabError::LabError;
};

/// A documented precondition failed (non-inner theta, shift-invariance check, ...).
struct PreconditionError : LabError {
    using LabError::LabError;
};

/// Every element of M vanishes at the origin; the caller must use the vanishing branch.
struct CaseTwoError : LabError {
    using LabError::LabError;
};

/// defect_decompose called with defect 0; hitt_decompose applies instead.
struct UseHittError : LabError {
    using LabError::LabError;
};

/// Wandering subspace has dimension != 1; the subspace is not singly generated.
struct NotCyclicError : LabError {
    using LabError::LabError;
};

/// A required sign condition failed (g(0) <= 0).
struct SignError : LabError {
    using LabError::LabError;
};

/// A synthesized instance violated its own construction contract.
struct RejectedInstanceError : LabError {
    using LabError::LabError;
};

/// An internal structural invariant was violated; indicates a bug or unusable input.
struct InvariantViolation : LabError {
    using LabError::LabError;
};

}  // namespace hardylab
