#include "divis/errors.hpp"

namespace divis {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::negative_weight: return "negative_weight";
    case errc::mass_not_one: return "mass_not_one";
    case errc::point_out_of_range: return "point_out_of_range";
    case errc::group_mismatch: return "group_mismatch";
    case errc::overflow: return "overflow";
    case errc::bad_grid_size: return "bad_grid_size";
    case errc::order_too_high: return "order_too_high";
    case errc::order_undetermined: return "order_undetermined";
    case errc::has_zeros: return "has_zeros";
    case errc::no_convergence: return "no_convergence";
    case errc::not_admissible: return "not_admissible";
    case errc::unsupported_group: return "unsupported_group";
    case errc::inconclusive: return "inconclusive";
    case errc::not_a_member: return "not_a_member";
    case errc::no_zeros: return "no_zeros";
    case errc::wrong_group: return "wrong_group";
    case errc::search_too_large: return "search_too_large";
    case errc::zero_character_value: return "zero_character_value";
    case errc::invalid_argument: return "invalid_argument";
    case errc::parse_error: return "parse_error";
    case errc::validation_error: return "validation_error";
  }
  return "unknown";
}

bool is_usage_error(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument:
    case errc::parse_error:
    case errc::validation_error:
      return true;
    default:
      return false;
  }
}

}  // namespace divis
