#pragma once
#include <stdexcept>
#include <string>

namespace levymax {

enum class errc {
  unsupported_sidedness,
  no_root,
  non_convergence,
  degenerate_derivative,
  invalid_rate,
  invalid_horizon,
  invalid_model,
  invalid_probability,
  length_mismatch,
  negative_second_coordinate,
  negative_input,
  index_out_of_range,
  infinite_mean,
  infinite_second_moment,
  singular_denominator,
  empty_sample,
  degenerate_cells,
  truncation_too_coarse,
  invalid_config,
};

class Error : public std::runtime_error {
 public:
  Error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw Error(c, what); }

}  // namespace levymax
