#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "irfit/dam/particles.hpp"
#include "irfit/ir/params.hpp"
#include "irfit/moa/moa.hpp"
#include "irfit/spg/spg.hpp"

namespace irfit::cli {

struct RunConfig {
  ir::IRParams ir{};
  moa::MoaParams moa{};
  spg::SpgParams spg{};  // max_iter only matters for spg-demo; dam runs use y

  double x0 = 0.5;
  long y0 = 100;
  long max_outer = 0;  // 0: 10 h(y0) / eps_feas
  std::string frames;
  std::string out = "irfit-out";
  dam::Packing packing = dam::Packing::Staggered;
  bool cache = true;
  bool verbose = false;

  // gradcheck
  int gradcheck_configs = 20;
  int gradcheck_particles = 10;
  std::uint64_t seed = 20200101;
  double fd_step = 0x1p-20;
  double gradcheck_tol = 1e-5;
  bool broken_gradient = false;

  // frames
  double frames_x = 0.999275;
  long frames_y = 12800;

  // spg-demo
  int demo_problems = 25;
  int demo_dim = 20;
  double demo_tol = 1e-6;
};

/// Frames file used when none is configured.
std::string default_frames_path();

RunConfig default_config();

/// Names accepted in config files, in emission order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form. Reals also accept a ratio "a/b".
/// Throws ParseError (line 0) for unknown keys or bad values.
void set_value(RunConfig& config, std::string_view key, std::string_view value);
std::string get_value(const RunConfig& config, std::string_view key);

/// Flat `key = value` lines; '#' starts a comment. Later keys override.
void parse_config(std::istream& in, RunConfig& config, const std::string& source = "<config>");
void load_config(const std::string& path, RunConfig& config);

/// Every key with its effective value, re-parseable by parse_config.
std::string emit_config(const RunConfig& config);

/// Range checks on all parameter groups; throws std::invalid_argument.
void validate(const RunConfig& config);

}  // namespace irfit::cli
