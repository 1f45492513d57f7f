#pragma once

#include <stdexcept>
#include <string>

namespace framelet {

// Base class for all errors thrown by this library.  Verification routines
// report failures through result structs instead; exceptions are reserved for
// malformed inputs and for constructions whose preconditions do not hold.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// A requested root of unity (or radical) does not live in the working field.
struct UnsupportedRoot : Error {
    explicit UnsupportedRoot(const std::string& msg) : Error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A matrix of Laurent polynomials has no inverse of the same kind.
struct NotStronglyInvertible : Error {
    explicit NotStronglyInvertible(const std::string& msg) : Error(msg) {}
};

// A factorization was asked to extract more vanishing than the input has.
struct InsufficientVanishing : Error {
    explicit InsufficientVanishing(const std::string& msg) : Error(msg) {}
};

// Input filters violate a precondition of a constructive routine.
struct HypothesisViolated : Error {
    explicit HypothesisViolated(const std::string& msg) : Error(msg) {}
};

// A constructive routine produced an object that fails its own post-checks.
struct ConstructionFailed : Error {
    explicit ConstructionFailed(const std::string& msg) : Error(msg) {}
};

// The linear system for one derivative level of a refinable jet is singular.
struct SingularLevelSystem : Error {
    explicit SingularLevelSystem(const std::string& msg) : Error(msg) {}
};

// Eigenvalue 1 of a lowpass symbol at the origin is not simple.
struct NonSimpleEigenvalue : Error {
    explicit NonSimpleEigenvalue(const std::string& msg) : Error(msg) {}
};

// A signal comparison needs a scale factor that is not in the working field.
struct IrrationalScale : Error {
    explicit IrrationalScale(const std::string& msg) : Error(msg) {}
};

// Every derivative computed for an order search vanished, so the search cap
// was reached without finding the order.
struct InconclusiveOrder : Error {
    explicit InconclusiveOrder(const std::string& msg) : Error(msg) {}
};

// A normalization routine was handed a row it cannot act on.
struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

// An entrywise two-point factorization failed on a specific block.
struct FactorizationFailed : Error {
    explicit FactorizationFailed(const std::string& msg) : Error(msg) {}
};

// A command needs a filter that the system file does not provide.
struct MissingFilter : Error {
    explicit MissingFilter(const std::string& msg) : Error(msg) {}
};

// A probe window is too small to contain any interior point.
struct WindowTooSmall : Error {
    explicit WindowTooSmall(const std::string& msg) : Error(msg) {}
};

}  // namespace framelet
