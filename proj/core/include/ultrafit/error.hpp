#pragma once

#include <stdexcept>
#include <string>

namespace ultrafit {

enum class Errc {
  self_loop,
  duplicate_edge,
  disconnected,
  vertex_out_of_range,
  length_mismatch,
  k_out_of_range,
  node_out_of_range,
  nonpositive_weight,
  non_finite_value,
  non_finite_cost,
  insufficient_classes,
  too_large,
  parse_error,
  invalid_argument,
};

/// Coarse grouping used for process exit codes.
enum class ErrorKind { validation, numerical };

const char* to_string(Errc code) noexcept;
ErrorKind kind_of(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  Errc code_;
};

}  // namespace ultrafit
