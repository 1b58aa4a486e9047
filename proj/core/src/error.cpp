#include "ultrafit/error.hpp"

namespace ultrafit {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::disconnected: return "Disconnected";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::k_out_of_range: return "KOutOfRange";
    case Errc::node_out_of_range: return "NodeOutOfRange";
    case Errc::nonpositive_weight: return "NonpositiveWeight";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::non_finite_cost: return "NonFiniteCost";
    case Errc::insufficient_classes: return "InsufficientClasses";
    case Errc::too_large: return "TooLarge";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorKind kind_of(Errc code) noexcept {
  switch (code) {
    case Errc::non_finite_value:
    case Errc::non_finite_cost:
      return ErrorKind::numerical;
    default:
      return ErrorKind::validation;
  }
}

}  // namespace ultrafit
