#include "homog1d/periodic_field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include <fmt/format.h>

#include "homog1d/errors.hpp"
#include "parse_util.hpp"

namespace homog1d {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorCode::InvalidField, msg);
}

void validate(const field::Constant& c) {
  if (!(std::isfinite(c.value) && c.value > 0.0)) {
    invalid(fmt::format("constant field must be positive, got {}", c.value));
  }
}

void validate(const field::Cosine& c) {
  if (!std::isfinite(c.mean) || !std::isfinite(c.amplitude) ||
      !(std::abs(c.amplitude) < c.mean)) {
    invalid(fmt::format("cosine field requires |c1| < c0, got c0={} c1={}", c.mean,
                        c.amplitude));
  }
}

void validate(const field::TwoPhase& t) {
  if (!(t.value_a > 0.0 && t.value_b > 0.0 && std::isfinite(t.value_a) &&
        std::isfinite(t.value_b))) {
    invalid(fmt::format("two-phase values must be positive, got {} and {}", t.value_a,
                        t.value_b));
  }
  if (!(t.fraction_a > 0.0 && t.fraction_a < 1.0)) {
    invalid(fmt::format("two-phase fraction must lie in (0, 1), got {}", t.fraction_a));
  }
}

void validate(const field::Tabulated& t) {
  if (t.samples.size() < 2) {
    invalid(fmt::format("tabulated field needs at least 2 samples, got {}",
                        t.samples.size()));
  }
  for (double s : t.samples) {
    if (!std::isfinite(s)) invalid("tabulated field contains a non-finite sample");
  }
  if (!std::isfinite(t.origin)) invalid("tabulated field origin is not finite");
}

double interpolate(const field::Tabulated& t, double xi) {
  const std::size_t n = t.samples.size();
  const double spacing = kTwoPi / static_cast<double>(n);
  const double u = wrap_period(xi - t.origin) / spacing;
  const double cell = std::floor(u);
  const double frac = u - cell;
  const std::size_t j = static_cast<std::size_t>(cell) % n;
  const std::size_t k = (j + 1) % n;
  return (1.0 - frac) * t.samples[j] + frac * t.samples[k];
}

field::Tabulated tabulate_on_midpoints(const PeriodicField& f, Quadrature quad,
                                       double (*transform)(double)) {
  field::Tabulated out;
  out.samples.resize(quad.sample_count());
  out.origin = 0.5 * quad.spacing();
  for (std::size_t j = 0; j < quad.sample_count(); ++j) {
    out.samples[j] = transform(f.evaluate(quad.node(j)));
  }
  return out;
}

double checked_reciprocal(double v) {
  if (!(v > 0.0)) {
    throw Error(ErrorCode::PositivityViolation,
                fmt::format("coefficient sample {} is not strictly positive", v));
  }
  return 1.0 / v;
}

}  // namespace

double wrap_period(double xi) noexcept {
  double w = std::fmod(xi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Quadrature::Quadrature(std::size_t sample_count) : sample_count_(sample_count) {
  if (sample_count < 2) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("quadrature needs at least 2 nodes, got {}", sample_count));
  }
}

PeriodicField::PeriodicField(Kind kind) : kind_(std::move(kind)) {
  std::visit([](const auto& k) { validate(k); }, kind_);
}

PeriodicField PeriodicField::constant(double value) {
  return PeriodicField(field::Constant{value});
}

PeriodicField PeriodicField::cosine(double mean, double amplitude) {
  return PeriodicField(field::Cosine{mean, amplitude});
}

PeriodicField PeriodicField::two_phase(double value_a, double value_b, double fraction_a) {
  return PeriodicField(field::TwoPhase{value_a, value_b, fraction_a});
}

PeriodicField PeriodicField::tabulated(std::vector<double> samples, double origin) {
  return PeriodicField(field::Tabulated{std::move(samples), origin});
}

double PeriodicField::evaluate(double xi) const {
  return std::visit(
      overloaded{
          [](const field::Constant& c) { return c.value; },
          [xi](const field::Cosine& c) { return c.mean + c.amplitude * std::cos(xi); },
          [xi](const field::TwoPhase& t) {
            return wrap_period(xi) < kTwoPi * t.fraction_a ? t.value_a : t.value_b;
          },
          [xi](const field::Tabulated& t) { return interpolate(t, xi); },
      },
      kind_);
}

std::pair<double, double> PeriodicField::bounds() const {
  return std::visit(
      overloaded{
          [](const field::Constant& c) { return std::pair{c.value, c.value}; },
          [](const field::Cosine& c) {
            const double a = std::abs(c.amplitude);
            return std::pair{c.mean - a, c.mean + a};
          },
          [](const field::TwoPhase& t) {
            return std::pair{std::min(t.value_a, t.value_b), std::max(t.value_a, t.value_b)};
          },
          [](const field::Tabulated& t) {
            const auto [lo, hi] = std::minmax_element(t.samples.begin(), t.samples.end());
            return std::pair{*lo, *hi};
          },
      },
      kind_);
}

double evaluate(const PeriodicField& field, double xi) { return field.evaluate(xi); }

Quadrature resolve_quadrature(const PeriodicField& field, Quadrature quad) {
  if (const auto* t = std::get_if<field::Tabulated>(&field.kind())) {
    return Quadrature(t->samples.size());
  }
  return quad;
}

double midpoint_average(const std::function<double(double)>& f, Quadrature quad) {
  double sum = 0.0;
  for (std::size_t j = 0; j < quad.sample_count(); ++j) sum += f(quad.node(j));
  return sum / static_cast<double>(quad.sample_count());
}

double average(const PeriodicField& field, Quadrature quad) {
  return std::visit(
      overloaded{
          [](const field::Constant& c) { return c.value; },
          [&field, quad](const auto&) {
            return midpoint_average([&field](double xi) { return field.evaluate(xi); },
                                    quad);
          },
          // Midpoint rule on the piecewise-linear interpolant at the native
          // resolution reduces to the sample mean.
          [](const field::Tabulated& t) {
            double sum = 0.0;
            for (double s : t.samples) sum += s;
            return sum / static_cast<double>(t.samples.size());
          },
      },
      field.kind());
}

Decomposition decompose(const PeriodicField& field, Quadrature quad) {
  const Quadrature q = resolve_quadrature(field, quad);
  const double bar = average(field, q);
  field::Tabulated tilde;
  if (const auto* t = std::get_if<field::Tabulated>(&field.kind())) {
    tilde = *t;
    for (double& s : tilde.samples) s -= bar;
  } else {
    tilde.samples.resize(q.sample_count());
    tilde.origin = 0.5 * q.spacing();
    for (std::size_t j = 0; j < q.sample_count(); ++j) {
      tilde.samples[j] = field.evaluate(q.node(j)) - bar;
    }
  }
  return {bar, PeriodicField(std::move(tilde))};
}

PeriodicField reciprocal_field(const PeriodicField& field, Quadrature resolution) {
  return std::visit(
      overloaded{
          [](const field::Constant& c) {
            return PeriodicField::constant(checked_reciprocal(c.value));
          },
          [](const field::TwoPhase& t) {
            return PeriodicField::two_phase(checked_reciprocal(t.value_a),
                                            checked_reciprocal(t.value_b), t.fraction_a);
          },
          [&field, resolution](const field::Cosine&) {
            return PeriodicField(tabulate_on_midpoints(field, resolution, checked_reciprocal));
          },
          [](const field::Tabulated& t) {
            field::Tabulated out = t;
            for (double& s : out.samples) s = checked_reciprocal(s);
            return PeriodicField(std::move(out));
          },
      },
      field.kind());
}

PeriodicField load_tabulated_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, fmt::format("cannot open field file '{}'", path.string()));
  }
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    const auto value = detail::parse_double(trimmed);
    if (!value) {
      invalid(fmt::format("{}:{}: not a number: '{}'", path.string(), line_no, trimmed));
    }
    samples.push_back(*value);
  }
  return PeriodicField::tabulated(std::move(samples));
}

PeriodicField parse_field_spec(std::string_view spec, const std::filesystem::path& base_dir) {
  spec = detail::trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    invalid(fmt::format("field spec '{}' lacks a '<kind>:' prefix", spec));
  }
  const std::string_view kind = detail::trim(spec.substr(0, colon));
  const std::string_view args = detail::trim(spec.substr(colon + 1));

  if (kind == "file") {
    std::filesystem::path p{std::string(args)};
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_tabulated_field(p);
  }

  const auto values = detail::parse_double_list(args);
  if (!values) invalid(fmt::format("field spec '{}' has malformed numbers", spec));
  const auto expect = [&](std::size_t n) {
    if (values->size() != n) {
      invalid(fmt::format("field spec '{}' expects {} value(s), got {}", spec, n,
                          values->size()));
    }
  };
  if (kind == "constant") {
    expect(1);
    return PeriodicField::constant((*values)[0]);
  }
  if (kind == "cosine") {
    expect(2);
    return PeriodicField::cosine((*values)[0], (*values)[1]);
  }
  if (kind == "twophase") {
    expect(3);
    return PeriodicField::two_phase((*values)[0], (*values)[1], (*values)[2]);
  }
  invalid(fmt::format("unknown field kind '{}'", kind));
}

}  // namespace homog1d
