#include "homog1d/initial_condition.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "homog1d/errors.hpp"

namespace homog1d {

namespace {

double gaussian(double r) {
  const double z = (r - InitialCondition::kGaussianCenter) / InitialCondition::kGaussianWidth;
  return std::exp(-0.5 * z * z);
}

}  // namespace

std::string_view to_string(InitialPreset preset) noexcept {
  switch (preset) {
    case InitialPreset::SineMode:
      return "sine";
    case InitialPreset::Gaussian:
      return "gaussian";
    case InitialPreset::WellPrepared:
      return "well-prepared";
  }
  return "?";
}

InitialPreset parse_initial_preset(std::string_view name) {
  if (name == "sine") return InitialPreset::SineMode;
  if (name == "gaussian") return InitialPreset::Gaussian;
  if (name == "well-prepared") return InitialPreset::WellPrepared;
  throw Error(ErrorCode::Config,
              fmt::format("unknown initial condition '{}' (sine|gaussian|well-prepared)", name));
}

InitialCondition::InitialCondition(InitialPreset preset, double epsilon,
                                   std::optional<CorrectorTable> corrector, double amplitude)
    : preset_(preset), epsilon_(epsilon), corrector_(std::move(corrector)), amplitude_(amplitude) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("initial condition needs 0 < eps <= 1, got {}", epsilon));
  }
  if (preset == InitialPreset::WellPrepared && !corrector_) {
    throw Error(ErrorCode::MissingCorrector, "well-prepared initial data requires a corrector");
  }
}

double InitialCondition::coarse(double r) const {
  return amplitude_ * (preset_ == InitialPreset::Gaussian ? gaussian(r) : std::sin(r));
}

double InitialCondition::coarse_gradient(double r) const {
  if (preset_ == InitialPreset::Gaussian) {
    const double w = kGaussianWidth;
    return -amplitude_ * (r - kGaussianCenter) / (w * w) * gaussian(r);
  }
  return amplitude_ * std::cos(r);
}

double InitialCondition::displacement(double x) const {
  const double r = epsilon_ * x;
  if (preset_ == InitialPreset::WellPrepared) {
    return amplitude_ * (std::sin(r) + epsilon_ * corrector_->evaluate(x) * std::cos(r));
  }
  return coarse(r);
}

InitialCondition make_initial_condition(InitialPreset preset, double epsilon,
                                        std::optional<CorrectorTable> corrector,
                                        double amplitude) {
  return InitialCondition(preset, epsilon, std::move(corrector), amplitude);
}

}  // namespace homog1d
