#ifndef CPLAP_ERROR_HPP
#define CPLAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cplap {

enum class errc {
  self_loop,
  duplicate_entry,
  index_out_of_range,
  zero_weight,
  non_finite_weight,
  size_limit_exceeded,
  dimension_mismatch,
  not_real_weighted,
  not_hermitian,
  convergence_failure,
  zero_not_simple,
  phase_alignment_failure,
  not_consensus_graph,
  step_size_too_large,
  window_too_large,
  invalid_config,
  parse_error,
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::self_loop: return "SelfLoop";
    case errc::duplicate_entry: return "DuplicateEntry";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::zero_weight: return "ZeroWeight";
    case errc::non_finite_weight: return "NonFiniteWeight";
    case errc::size_limit_exceeded: return "SizeLimitExceeded";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_real_weighted: return "NotRealWeighted";
    case errc::not_hermitian: return "NotHermitian";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::zero_not_simple: return "ZeroNotSimple";
    case errc::phase_alignment_failure: return "PhaseAlignmentFailure";
    case errc::not_consensus_graph: return "NotConsensusGraph";
    case errc::step_size_too_large: return "StepSizeTooLarge";
    case errc::window_too_large: return "WindowTooLarge";
    case errc::invalid_config: return "InvalidConfig";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace cplap

#endif  // CPLAP_ERROR_HPP
