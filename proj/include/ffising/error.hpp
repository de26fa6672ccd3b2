#pragma once

#include <stdexcept>
#include <string>

namespace ffising {

enum class Errc {
  invalid_size,
  invalid_range,
  invalid_input,
  unsupported_size,
  size_limit,
  degenerate_point,
  undefined_index,
  degenerate_ellipse,
  kernel_parity,
  orthogonal_vacuum,
  invalid_dimension,
  step_size,
  invalid_schedule,
  particle_hole_violation,
  inconsistent_green,
  nonequilibrium_unsupported,
  degenerate_vacuum,
  empty_block,
  no_bound_state,
};

const char* errc_name(Errc e);

// True for failures of the numerics rather than of the caller's input.
bool is_numerical(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ffising
