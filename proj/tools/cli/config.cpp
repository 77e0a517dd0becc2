#include "cli/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "irfit/errors.hpp"

#ifndef IRFIT_DEFAULT_FRAMES
#define IRFIT_DEFAULT_FRAMES "data/frames.txt"
#endif

namespace irfit::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(std::string_view key, std::string_view value, const char* expected) {
  throw ParseError("config", 0, "key '" + std::string(key) + "': '" + std::string(value) + "' is not " + expected);
}

double to_real(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  auto parse = [&](std::string_view part) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) bad(key, text, "a real number");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse(s);
  const double den = parse(trim(std::string_view(s).substr(slash + 1)));
  if (den == 0.0) bad(key, text, "a ratio with nonzero denominator");
  return parse(trim(std::string_view(s).substr(0, slash))) / den;
}

long long to_integer(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad(key, text, "an integer");
  return v;
}

bool to_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  bad(key, text, "a boolean");
}

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Field {
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

struct Table {
  std::vector<std::string> order;
  std::map<std::string, Field, std::less<>> fields;

  void add(std::string name, Field f) {
    order.push_back(name);
    fields.emplace(std::move(name), std::move(f));
  }
};

#define IRFIT_REAL(name, expr)                                                   \
  t.add(name, {[](RunConfig& c, std::string_view v) { expr = to_real(name, v); }, \
               [](const RunConfig& c) { return real_text(expr); }})
#define IRFIT_INT(name, expr, type)                                                                 \
  t.add(name, {[](RunConfig& c, std::string_view v) { expr = static_cast<type>(to_integer(name, v)); }, \
               [](const RunConfig& c) { return std::to_string(expr); }})
#define IRFIT_BOOL(name, expr)                                                   \
  t.add(name, {[](RunConfig& c, std::string_view v) { expr = to_bool(name, v); }, \
               [](const RunConfig& c) { return std::string(expr ? "true" : "false"); }})

const Table& table() {
  static const Table t = [] {
    Table t;
    IRFIT_REAL("theta0", c.ir.theta0);
    IRFIT_REAL("nu", c.ir.nu);
    IRFIT_REAL("r", c.ir.r);
    IRFIT_REAL("alpha", c.ir.alpha);
    IRFIT_REAL("beta", c.ir.beta);
    IRFIT_REAL("eps_feas", c.ir.eps_feas);
    IRFIT_REAL("eps_dist", c.ir.eps_dist);
    IRFIT_REAL("eta", c.ir.eta);
    IRFIT_REAL("sigma_min", c.moa.sigma_min);
    IRFIT_REAL("gamma", c.moa.gamma);
    // p is the model order; the regularization exponent is p + 1.
    t.add("p", {[](RunConfig& c, std::string_view v) { c.moa.p_exp = to_real("p", v) + 1.0; },
                [](const RunConfig& c) { return real_text(c.moa.p_exp - 1.0); }});
    IRFIT_INT("max_doublings", c.moa.max_doublings, int);
    IRFIT_INT("moa_max_iterations", c.moa.max_iterations, long);
    IRFIT_REAL("x0", c.x0);
    IRFIT_INT("y0", c.y0, long);
    IRFIT_INT("max_outer", c.max_outer, long);
    IRFIT_REAL("spg_eps_opt", c.spg.eps_opt);
    IRFIT_REAL("spg_lambda_min", c.spg.lambda_min);
    IRFIT_REAL("spg_lambda_max", c.spg.lambda_max);
    IRFIT_INT("spg_memory", c.spg.memory, int);
    IRFIT_REAL("spg_gamma", c.spg.gamma);
    IRFIT_INT("spg_max_backtracks", c.spg.max_backtracks, int);
    IRFIT_INT("spg_max_iter", c.spg.max_iter, long);
    t.add("frames", {[](RunConfig& c, std::string_view v) { c.frames = trim(v); },
                     [](const RunConfig& c) { return c.frames; }});
    t.add("out", {[](RunConfig& c, std::string_view v) { c.out = trim(v); },
                  [](const RunConfig& c) { return c.out; }});
    t.add("packing", {[](RunConfig& c, std::string_view v) {
                        try {
                          c.packing = dam::parse_packing(trim(v));
                        } catch (const std::exception&) {
                          bad("packing", v, "'staggered' or 'square'");
                        }
                      },
                      [](const RunConfig& c) { return std::string(dam::to_string(c.packing)); }});
    IRFIT_BOOL("cache", c.cache);
    IRFIT_BOOL("verbose", c.verbose);
    IRFIT_INT("gradcheck_configs", c.gradcheck_configs, int);
    IRFIT_INT("gradcheck_particles", c.gradcheck_particles, int);
    IRFIT_INT("seed", c.seed, std::uint64_t);
    IRFIT_REAL("fd_step", c.fd_step);
    IRFIT_REAL("gradcheck_tol", c.gradcheck_tol);
    IRFIT_BOOL("broken_gradient", c.broken_gradient);
    IRFIT_REAL("frames_x", c.frames_x);
    IRFIT_INT("frames_y", c.frames_y, long);
    IRFIT_INT("demo_problems", c.demo_problems, int);
    IRFIT_INT("demo_dim", c.demo_dim, int);
    IRFIT_REAL("demo_tol", c.demo_tol);
    return t;
  }();
  return t;
}

#undef IRFIT_REAL
#undef IRFIT_INT
#undef IRFIT_BOOL

}  // namespace

std::string default_frames_path() { return IRFIT_DEFAULT_FRAMES; }

RunConfig default_config() {
  RunConfig c;
  c.frames = default_frames_path();
  return c;
}

const std::vector<std::string>& config_keys() { return table().order; }

void set_value(RunConfig& config, std::string_view key, std::string_view value) {
  const auto it = table().fields.find(key);
  if (it == table().fields.end()) throw ParseError("config", 0, "unknown key '" + std::string(key) + "'");
  it->second.set(config, value);
}

std::string get_value(const RunConfig& config, std::string_view key) {
  const auto it = table().fields.find(key);
  if (it == table().fields.end()) throw std::invalid_argument("unknown key '" + std::string(key) + "'");
  return it->second.get(config);
}

void parse_config(std::istream& in, RunConfig& config, const std::string& source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string text = trim(std::string_view(line).substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key = value");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    try {
      set_value(config, key, std::string_view(text).substr(eq + 1));
    } catch (const ParseError& e) {
      const std::string what = e.what();
      throw ParseError(source, line_no, what.substr(what.find(": ") + 2));
    }
  }
}

void load_config(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open config file");
  parse_config(in, config, path);
}

std::string emit_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& key : config_keys()) out << key << " = " << get_value(config, key) << '\n';
  return out.str();
}

void validate(const RunConfig& config) {
  config.ir.validate();
  config.moa.validate();
  config.spg.validate();
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(config.x0 >= 0.0 && config.x0 <= 1.0, "x0 must lie in [0,1]");
  require(config.y0 >= 1, "y0 must be at least 1");
  require(config.max_outer >= 0, "max_outer must be nonnegative");
  require(config.gradcheck_configs >= 1, "gradcheck_configs must be positive");
  require(config.gradcheck_particles >= 1, "gradcheck_particles must be positive");
  require(config.fd_step > 0.0, "fd_step must be positive");
  require(config.gradcheck_tol > 0.0, "gradcheck_tol must be positive");
  require(config.frames_x >= 0.0 && config.frames_x <= 1.0, "frames_x must lie in [0,1]");
  require(config.frames_y >= 1, "frames_y must be at least 1");
  require(config.demo_problems >= 0 && config.demo_dim >= 1, "demo sizes must be positive");
  require(config.demo_tol > 0.0, "demo_tol must be positive");
}

}  // namespace irfit::cli
