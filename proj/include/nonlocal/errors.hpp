#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

enum class ErrorCode {
  invalid_grid,
  invalid_field,
  invalid_argument,
  grid_mismatch,
  grid_too_coarse,
  domain_too_small,
  time_order,
  blow_up,
  not_bistable,
  empty_set,
  unknown_check,
  config,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nonlocal
