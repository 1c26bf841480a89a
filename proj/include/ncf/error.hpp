#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncf {

enum class ErrorCode {
    InvalidDimension,
    UnknownIdentifier,
    InvalidStructureConstants,
    SeriesOutOfDomain,
    BoundaryConjugacy,
    NotUnimodular,
    DegenerateElement,
    UnsupportedGroup,
    BoundaryElement,
    OutOfPrincipalBranch,
    InvalidSpin,
    JacobianZero,
    SchemeMismatch,
    GroupMismatch,
    GridMismatch,
    MomentumAtOrigin,
    NotClassFunction,
    QuadratureUnderResolved,
    CutoffTooSmall,
    RepresentationUnsupported,
    WindowTooSmall,
    SpectralCutoffTooSmall,
    PlaneCutoffTooSmall,
    DerivativeUnstable,
    OnSingularSet,
    InvalidOrder,
    SyntaxError,
    EvalDomainError,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Parse failures in the expression language carry the byte offset.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : Error(ErrorCode::SyntaxError, what + " at offset " + std::to_string(offset)),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace ncf
