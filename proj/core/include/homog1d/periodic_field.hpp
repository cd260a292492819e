#pragma once

// 2*pi-periodic coefficient profiles in the fast variable xi, together with the
// period-averaging operator and the mean / zero-mean split used throughout.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace homog1d {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps xi into [0, 2*pi).
double wrap_period(double xi) noexcept;

namespace field {

struct Constant {
  double value;
  bool operator==(const Constant&) const = default;
};

/// c0 + c1 * cos(xi)
struct Cosine {
  double mean;
  double amplitude;
  bool operator==(const Cosine&) const = default;
};

/// Phase A on [0, 2*pi*fraction_a), phase B on the rest of the period.
struct TwoPhase {
  double value_a;
  double value_b;
  double fraction_a;
  bool operator==(const TwoPhase&) const = default;
};

/// Samples on the uniform grid xi_j = origin + 2*pi*j/N, linearly
/// interpolated with periodic wraparound. Files always use origin 0; the
/// half-cell origin is produced when a field is tabulated at midpoint nodes.
struct Tabulated {
  std::vector<double> samples;
  double origin = 0.0;
  bool operator==(const Tabulated&) const = default;
};

}  // namespace field

/// Number of composite-midpoint nodes over one period.
class Quadrature {
 public:
  static constexpr std::size_t kDefaultSampleCount = 4096;

  Quadrature() = default;
  explicit Quadrature(std::size_t sample_count);

  std::size_t sample_count() const noexcept { return sample_count_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(sample_count_); }
  double node(std::size_t j) const noexcept {
    return (static_cast<double>(j) + 0.5) * spacing();
  }

  bool operator==(const Quadrature&) const = default;

 private:
  std::size_t sample_count_ = kDefaultSampleCount;
};

class PeriodicField {
 public:
  using Kind = std::variant<field::Constant, field::Cosine, field::TwoPhase, field::Tabulated>;

  static PeriodicField constant(double value);
  static PeriodicField cosine(double mean, double amplitude);
  static PeriodicField two_phase(double value_a, double value_b, double fraction_a);
  static PeriodicField tabulated(std::vector<double> samples, double origin = 0.0);

  /// Validates the invariants of `kind`; throws Error(InvalidField) otherwise.
  explicit PeriodicField(Kind kind);

  const Kind& kind() const noexcept { return kind_; }
  bool is_tabulated() const noexcept { return std::holds_alternative<field::Tabulated>(kind_); }

  double operator()(double xi) const { return evaluate(xi); }
  double evaluate(double xi) const;

  /// Smallest and largest value over a period (exact for closed forms,
  /// over the samples for tabulated fields).
  std::pair<double, double> bounds() const;

  bool operator==(const PeriodicField&) const = default;

 private:
  Kind kind_;
};

double evaluate(const PeriodicField& field, double xi);

/// Tabulated fields carry their own resolution; for them the quadrature is
/// replaced by one node per sample.
Quadrature resolve_quadrature(const PeriodicField& field, Quadrature quad);

/// (1/2pi) * integral over one period of `f`, composite midpoint rule.
double midpoint_average(const std::function<double(double)>& f, Quadrature quad);

double average(const PeriodicField& field, Quadrature quad = {});

struct Decomposition {
  double bar;
  PeriodicField tilde;
};

/// Splits `field` into its period average and a zero-mean remainder
/// tabulated on the quadrature nodes.
Decomposition decompose(const PeriodicField& field, Quadrature quad = {});

/// Pointwise 1/field. Closed forms stay closed where possible; otherwise the
/// reciprocal is tabulated on the midpoint nodes of `resolution`.
PeriodicField reciprocal_field(const PeriodicField& field, Quadrature resolution = {});

/// Parses `constant:c`, `cosine:c0,c1`, `twophase:vA,vB,fracA` or
/// `file:<path>`. Relative file paths are resolved against `base_dir`.
PeriodicField parse_field_spec(std::string_view spec,
                               const std::filesystem::path& base_dir = {});

/// One value per line, uniform grid over [0, 2pi), no header.
PeriodicField load_tabulated_field(const std::filesystem::path& path);

}  // namespace homog1d
