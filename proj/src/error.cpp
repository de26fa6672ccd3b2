#include "ffising/error.hpp"

namespace ffising {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::invalid_size: return "invalid-size";
    case Errc::invalid_range: return "invalid-range";
    case Errc::invalid_input: return "invalid-input";
    case Errc::unsupported_size: return "unsupported-size";
    case Errc::size_limit: return "size-limit";
    case Errc::degenerate_point: return "degenerate-point";
    case Errc::undefined_index: return "undefined-index";
    case Errc::degenerate_ellipse: return "degenerate-ellipse";
    case Errc::kernel_parity: return "kernel-parity";
    case Errc::orthogonal_vacuum: return "orthogonal-vacuum";
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::step_size: return "step-size";
    case Errc::invalid_schedule: return "invalid-schedule";
    case Errc::particle_hole_violation: return "particle-hole-violation";
    case Errc::inconsistent_green: return "inconsistent-green";
    case Errc::nonequilibrium_unsupported: return "nonequilibrium-unsupported";
    case Errc::degenerate_vacuum: return "degenerate-vacuum";
    case Errc::empty_block: return "empty-block";
    case Errc::no_bound_state: return "no-bound-state";
  }
  return "unknown";
}

bool is_numerical(Errc e) {
  switch (e) {
    case Errc::kernel_parity:
    case Errc::orthogonal_vacuum:
    case Errc::step_size:
    case Errc::particle_hole_violation:
    case Errc::inconsistent_green:
    case Errc::degenerate_vacuum:
    case Errc::degenerate_point:
    case Errc::undefined_index:
    case Errc::no_bound_state:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace ffising
