#include "ncf/error.hpp"

namespace ncf {

std::string_view to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::InvalidStructureConstants: return "InvalidStructureConstants";
    case ErrorCode::SeriesOutOfDomain: return "SeriesOutOfDomain";
    case ErrorCode::BoundaryConjugacy: return "BoundaryConjugacy";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::DegenerateElement: return "DegenerateElement";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::BoundaryElement: return "BoundaryElement";
    case ErrorCode::OutOfPrincipalBranch: return "OutOfPrincipalBranch";
    case ErrorCode::InvalidSpin: return "InvalidSpin";
    case ErrorCode::JacobianZero: return "JacobianZero";
    case ErrorCode::SchemeMismatch: return "SchemeMismatch";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::MomentumAtOrigin: return "MomentumAtOrigin";
    case ErrorCode::NotClassFunction: return "NotClassFunction";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::RepresentationUnsupported: return "RepresentationUnsupported";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::SpectralCutoffTooSmall: return "SpectralCutoffTooSmall";
    case ErrorCode::PlaneCutoffTooSmall: return "PlaneCutoffTooSmall";
    case ErrorCode::DerivativeUnstable: return "DerivativeUnstable";
    case ErrorCode::OnSingularSet: return "OnSingularSet";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EvalDomainError: return "EvalDomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace ncf
