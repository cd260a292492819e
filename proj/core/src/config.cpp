#include "homog1d/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "homog1d/csv.hpp"
#include "homog1d/errors.hpp"
#include "parse_util.hpp"

namespace homog1d {

namespace {

struct KeyInfo {
  std::string_view section;
  std::string_view key;
};

constexpr std::array kKeys{
    KeyInfo{"problem", "equation"},       KeyInfo{"problem", "rho"},
    KeyInfo{"problem", "coeff"},          KeyInfo{"problem", "ic"},
    KeyInfo{"grid", "epsilon"},           KeyInfo{"grid", "epsilon_list"},
    KeyInfo{"grid", "points_per_period"}, KeyInfo{"grid", "quadrature"},
    KeyInfo{"grid", "corrector_grid"},    KeyInfo{"grid", "r_points"},
    KeyInfo{"time", "t_end"},             KeyInfo{"time", "output_times"},
    KeyInfo{"time", "cfl"},               KeyInfo{"time", "safety"},
    KeyInfo{"time", "fit_epsilon"},       KeyInfo{"output", "dir"},
    KeyInfo{"output", "tag"},             KeyInfo{"dimensional", "l"},
    KeyInfo{"dimensional", "lambda"},     KeyInfo{"dimensional", "rho0"},
    KeyInfo{"dimensional", "E0"},         KeyInfo{"dimensional", "allow_large"},
};

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

std::string_view section_of(std::string_view key) {
  for (const auto& k : kKeys) {
    if (k.key == key) return k.section;
  }
  config_error(fmt::format("unknown key '{}'", key));
}

double number(std::string_view key, std::string_view value) {
  const auto v = detail::parse_ratio(value);
  if (!v || !std::isfinite(*v)) config_error(fmt::format("key '{}': '{}' is not a number", key, value));
  return *v;
}

std::size_t count(std::string_view key, std::string_view value) {
  const double v = number(key, value);
  if (v < 1 || v != std::floor(v)) {
    config_error(fmt::format("key '{}': '{}' is not a positive integer", key, value));
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> numbers(std::string_view key, std::string_view value) {
  const auto v = detail::parse_ratio_list(value);
  if (!v) config_error(fmt::format("key '{}': malformed list '{}'", key, value));
  return *v;
}

bool boolean(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  config_error(fmt::format("key '{}': '{}' is not a boolean", key, value));
}

DimensionalSpec& dimensional(RunConfig& c) {
  if (!c.dimensional) c.dimensional.emplace();
  return *c.dimensional;
}

void set_key(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "equation") {
    if (value == "wave") c.equation = EquationKind::Wave;
    else if (value == "diffusion") c.equation = EquationKind::Diffusion;
    else config_error(fmt::format("key 'equation': expected wave|diffusion, got '{}'", value));
  } else if (key == "rho") {
    c.rho_spec = value;
  } else if (key == "coeff") {
    c.coeff_spec = value;
  } else if (key == "ic") {
    try {
      c.ic = parse_initial_preset(value);
    } catch (const Error& e) {
      config_error(fmt::format("key 'ic': {}", e.what()));
    }
  } else if (key == "epsilon") {
    c.epsilon = number(key, value);
  } else if (key == "epsilon_list") {
    c.epsilon_list = numbers(key, value);
  } else if (key == "points_per_period") {
    c.points_per_period = count(key, value);
  } else if (key == "quadrature") {
    c.quadrature = count(key, value);
  } else if (key == "corrector_grid") {
    c.corrector_grid = count(key, value);
  } else if (key == "r_points") {
    c.r_points = count(key, value);
  } else if (key == "t_end") {
    c.t_end = number(key, value);
  } else if (key == "output_times") {
    c.output_times = numbers(key, value);
  } else if (key == "cfl") {
    c.cfl = number(key, value);
  } else if (key == "safety") {
    c.safety = number(key, value);
  } else if (key == "fit_epsilon") {
    c.fit_epsilon = number(key, value);
  } else if (key == "dir") {
    c.out_dir = value;
  } else if (key == "tag") {
    c.tag = value;
  } else if (key == "l") {
    dimensional(c).cell_length = number(key, value);
  } else if (key == "lambda") {
    dimensional(c).wavelength = number(key, value);
  } else if (key == "rho0") {
    dimensional(c).rho0 = number(key, value);
  } else if (key == "E0") {
    dimensional(c).e0 = number(key, value);
  } else if (key == "allow_large") {
    dimensional(c).allow_large = boolean(key, value);
  } else {
    config_error(fmt::format("unknown key '{}'", key));
  }
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_full(v[i]);
  }
  return out;
}

}  // namespace

std::string ScaleReport::describe() const {
  return fmt::format(
      "eps = l/lambda = {}; x = {} * x', t = {} * t' (T = lambda*sqrt(rho0/E0)){}",
      format_fixed6(epsilon), format_full(length_scale), format_full(time_scale),
      large_parameter ? "; warning: eps >= 1 is not a small parameter" : "");
}

ScaleReport nondimensionalize(const DimensionalSpec& spec) {
  if (!(spec.cell_length > 0.0 && spec.wavelength > 0.0 && spec.rho0 > 0.0 && spec.e0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "dimensional quantities l, lambda, rho0, E0 must be positive");
  }
  ScaleReport report;
  report.epsilon = spec.cell_length / spec.wavelength;
  report.length_scale = spec.cell_length;
  report.time_scale = spec.wavelength * std::sqrt(spec.rho0 / spec.e0);
  if (spec.cell_length >= spec.wavelength) {
    if (!spec.allow_large) {
      throw Error(ErrorCode::NotSmallParameter,
                  fmt::format("l = {} is not smaller than lambda = {}; eps = {} is not small "
                              "(set allow_large = true to proceed)",
                              spec.cell_length, spec.wavelength, report.epsilon));
    }
    report.large_parameter = true;
  }
  return report;
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    config_error(fmt::format("override '{}' is not key=value", assignment));
  }
  std::string_view key = detail::trim(assignment.substr(0, eq));
  const std::string_view value = detail::trim(assignment.substr(eq + 1));
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    const auto section = key.substr(0, dot);
    key = key.substr(dot + 1);
    if (section_of(key) != section) {
      config_error(fmt::format("key '{}' does not belong to section [{}]", key, section));
    }
  }
  // A single-eps override replaces a list and vice versa.
  if (key == "epsilon") config.epsilon_list.reset();
  if (key == "epsilon_list") config.epsilon.reset();
  set_key(config, key, value);
}

void validate(const RunConfig& c) {
  const bool has_eps = c.epsilon.has_value();
  const bool has_list = c.epsilon_list.has_value();
  if (has_eps && has_list) config_error("set exactly one of 'epsilon' and 'epsilon_list'");
  if (!has_eps && !has_list && !c.dimensional) {
    config_error("one of 'epsilon', 'epsilon_list' or a [dimensional] block is required");
  }
  if (has_eps && !(*c.epsilon > 0.0)) config_error("key 'epsilon' must be positive");
  if (has_list) {
    if (c.epsilon_list->empty()) config_error("key 'epsilon_list' is empty");
    for (double e : *c.epsilon_list) {
      if (!(e > 0.0)) config_error("key 'epsilon_list' entries must be positive");
    }
  }
  if (c.dimensional) {
    const auto& d = *c.dimensional;
    if (!(d.cell_length > 0.0 && d.wavelength > 0.0 && d.rho0 > 0.0 && d.e0 > 0.0)) {
      config_error("[dimensional] needs positive l, lambda, rho0 and E0");
    }
    if (d.cell_length >= d.wavelength && !d.allow_large) {
      config_error("[dimensional] requires l < lambda (set allow_large = true to override)");
    }
  }
  if (!(c.t_end > 0.0)) config_error("key 't_end' must be positive");
  if (!(c.cfl > 0.0 && c.cfl <= 0.9)) config_error("key 'cfl' must lie in (0, 0.9]");
  if (!(c.safety > 0.0 && c.safety <= 0.9)) config_error("key 'safety' must lie in (0, 0.9]");
  if (!(c.fit_epsilon > 0.0)) config_error("key 'fit_epsilon' must be positive");
  if (c.quadrature < 2) config_error("key 'quadrature' must be >= 2");
  if (c.corrector_grid < 4) config_error("key 'corrector_grid' must be >= 4");
  if (c.r_points < 8) config_error("key 'r_points' must be >= 8");
  double last = -1.0;
  for (double t : c.output_times) {
    if (t < 0.0 || t <= last || t > c.t_end) {
      config_error("key 'output_times' must be increasing within [0, t_end]");
    }
    last = t;
  }
}

RunConfig parse_config(std::string_view text, std::span<const std::string> overrides) {
  RunConfig config;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error(fmt::format("line {}: unterminated section header", line_no));
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      config_error(fmt::format("line {}: expected key = value", line_no));
    }
    const std::string key{detail::trim(line.substr(0, eq))};
    const std::string_view value = detail::trim(line.substr(eq + 1));
    const auto expected = section_of(key);
    if (expected != section) {
      config_error(fmt::format("line {}: key '{}' belongs in [{}], found in [{}]", line_no, key,
                               expected, section));
    }
    if (!seen.insert(key).second) config_error(fmt::format("line {}: duplicate key '{}'", line_no, key));
    set_key(config, key, value);
  }
  for (const auto& o : overrides) apply_override(config, o);
  validate(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), overrides);
}

std::string write_config(const RunConfig& c) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  out += "[problem]\n";
  line("equation", c.equation == EquationKind::Wave ? "wave" : "diffusion");
  line("rho", c.rho_spec);
  line("coeff", c.coeff_spec);
  line("ic", std::string(to_string(c.ic)));

  out += "\n[grid]\n";
  if (c.epsilon) line("epsilon", format_full(*c.epsilon));
  if (c.epsilon_list) line("epsilon_list", join(*c.epsilon_list));
  line("points_per_period", std::to_string(c.points_per_period));
  line("quadrature", std::to_string(c.quadrature));
  line("corrector_grid", std::to_string(c.corrector_grid));
  line("r_points", std::to_string(c.r_points));

  out += "\n[time]\n";
  line("t_end", format_full(c.t_end));
  if (!c.output_times.empty()) line("output_times", join(c.output_times));
  line("cfl", format_full(c.cfl));
  line("safety", format_full(c.safety));
  line("fit_epsilon", format_full(c.fit_epsilon));

  out += "\n[output]\n";
  line("dir", c.out_dir);
  line("tag", c.tag);

  if (c.dimensional) {
    const auto& d = *c.dimensional;
    out += "\n[dimensional]\n";
    line("l", format_full(d.cell_length));
    line("lambda", format_full(d.wavelength));
    line("rho0", format_full(d.rho0));
    line("E0", format_full(d.e0));
    line("allow_large", d.allow_large ? "true" : "false");
  }
  return out;
}

double resolve_epsilon(const RunConfig& config) {
  if (config.epsilon) return *config.epsilon;
  if (config.dimensional) return nondimensionalize(*config.dimensional).epsilon;
  config_error("this command needs a single 'epsilon' (or a [dimensional] block)");
}

std::vector<double> resolve_output_times(const RunConfig& config) {
  if (!config.output_times.empty()) return config.output_times;
  return {0.0, config.t_end};
}

SweepConfig make_sweep_config(const RunConfig& c, const std::filesystem::path& base_dir) {
  SweepConfig s;
  s.equation = c.equation;
  s.rho = parse_field_spec(c.rho_spec, base_dir);
  s.coeff = parse_field_spec(c.coeff_spec, base_dir);
  if (c.epsilon_list) {
    s.epsilons = *c.epsilon_list;
  } else {
    s.epsilons = {resolve_epsilon(c)};
  }
  s.points_per_period = c.points_per_period;
  s.ic = c.ic;
  s.comparison_time = c.t_end;
  s.cfl = c.cfl;
  s.safety = c.safety;
  s.quad = Quadrature(c.quadrature);
  s.corrector_grid = c.corrector_grid;
  s.r_points = c.r_points;
  s.fit_epsilon = c.fit_epsilon;
  return s;
}

}  // namespace homog1d
