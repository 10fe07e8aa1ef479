#pragma once

#include <stdexcept>
#include <string>

namespace divis {

enum class errc {
  negative_weight,
  mass_not_one,
  point_out_of_range,
  group_mismatch,
  overflow,
  bad_grid_size,
  order_too_high,
  order_undetermined,
  has_zeros,
  no_convergence,
  not_admissible,
  unsupported_group,
  inconclusive,
  not_a_member,
  no_zeros,
  wrong_group,
  search_too_large,
  zero_character_value,
  invalid_argument,
  parse_error,
  validation_error,
};

const char* errc_name(errc code) noexcept;

/// True for errors caused by malformed input or bad option values
/// (CLI exit code 1); everything else is a domain error (exit code 2).
bool is_usage_error(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace divis
