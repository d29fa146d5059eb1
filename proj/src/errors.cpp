#include "delone/errors.hpp"

namespace delone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonOrthogonal: return "non_orthogonal";
    case ErrorCode::DegenerateFrame: return "degenerate_frame";
    case ErrorCode::TooFewPoints: return "too_few_points";
    case ErrorCode::BoxTooSmall: return "box_too_small";
    case ErrorCode::CenterNotInPatch: return "center_not_in_patch";
    case ErrorCode::MarginViolation: return "margin_violation";
    case ErrorCode::RadiusMismatch: return "radius_mismatch";
    case ErrorCode::NoUsableCenters: return "no_usable_centers";
    case ErrorCode::LowerDimensionalCluster: return "lower_dimensional_cluster";
    case ErrorCode::NotAGroup: return "not_a_group";
    case ErrorCode::UnrecognizedGroup: return "unrecognized_group";
    case ErrorCode::GroupTooLarge: return "group_too_large";
    case ErrorCode::UnknownLabel: return "unknown_label";
    case ErrorCode::InvalidShift: return "invalid_shift";
    case ErrorCode::DegenerateAntiprism: return "degenerate_antiprism";
    case ErrorCode::InfeasibleParams: return "infeasible_params";
    case ErrorCode::BudgetExhausted: return "budget_exhausted";
    case ErrorCode::PackingViolation: return "packing_violation";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::InvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

}  // namespace delone
