#include "folia/error.hpp"

namespace folia {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "index_out_of_range";
    case ErrorCode::kArityMismatch: return "arity_mismatch";
    case ErrorCode::kDivisionByZero: return "division_by_zero";
    case ErrorCode::kExponentOverflow: return "exponent_overflow";
    case ErrorCode::kZeroInput: return "zero_input";
    case ErrorCode::kDegreeZero: return "degree_zero";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kNonHomogeneous: return "non_homogeneous";
    case ErrorCode::kUnequalDegrees: return "unequal_degrees";
    case ErrorCode::kDegenerateInput: return "degenerate_input";
    case ErrorCode::kNotEuler: return "not_euler";
    case ErrorCode::kNotIntegrable: return "not_integrable";
    case ErrorCode::kDegenerateLine: return "degenerate_line";
    case ErrorCode::kInconsistentDegree: return "inconsistent_degree";
    case ErrorCode::kZeroField: return "zero_field";
    case ErrorCode::kCommonFactor: return "common_factor";
    case ErrorCode::kDegenerateParameters: return "degenerate_parameters";
    case ErrorCode::kSingularMatrix: return "singular_matrix";
    case ErrorCode::kNonConvergence: return "non_convergence";
    case ErrorCode::kMultipleRootSuspected: return "multiple_root_suspected";
    case ErrorCode::kNonIsolatedSingularity: return "non_isolated_singularity";
    case ErrorCode::kDegenerateSingularity: return "degenerate_singularity";
    case ErrorCode::kNotInvariant: return "not_invariant";
    case ErrorCode::kPointNotOnLine: return "point_not_on_line";
    case ErrorCode::kNotSingular: return "not_singular";
    case ErrorCode::kHigherOrderPole: return "higher_order_pole";
    case ErrorCode::kEigenvectorTie: return "eigenvector_tie";
    case ErrorCode::kCapExceeded: return "cap_exceeded";
    case ErrorCode::kNotFermatForm: return "not_fermat_form";
    case ErrorCode::kPointNotOnIndeterminacy: return "point_not_on_indeterminacy";
    case ErrorCode::kNonIntegerCount: return "non_integer_count";
    case ErrorCode::kInvalidMap: return "invalid_map";
    case ErrorCode::kRegimeViolation: return "regime_violation";
    case ErrorCode::kNotEigenform: return "not_eigenform";
    case ErrorCode::kNotProportional: return "not_proportional";
    case ErrorCode::kNonzeroLinearPart: return "nonzero_linear_part";
    case ErrorCode::kProbeInconclusive: return "probe_inconclusive";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

bool is_numeric_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kMultipleRootSuspected:
    case ErrorCode::kProbeInconclusive:
    case ErrorCode::kEigenvectorTie:
      return true;
    default:
      return false;
  }
}

}  // namespace folia
