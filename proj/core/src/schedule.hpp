#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <optional>
#include <vector>

#include <fmt/format.h>

#include "homog1d/errors.hpp"

namespace homog1d::detail {

struct StepPlan {
  double dt = 0.0;
  std::size_t steps = 0;
  bool reduced = false;
};

/// Splits [0, t_end] into equal steps no longer than the stable bound (or
/// the requested step, if that is smaller).
inline StepPlan plan_steps(double t_end, double bound, std::optional<double> requested,
                           bool enforce_bound = true) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("t_end must be >= 0, got {}", t_end));
  }
  StepPlan plan;
  double base = bound;
  if (requested) {
    if (!(*requested > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("requested time step must be positive, got {}", *requested));
    }
    if (*requested > bound && enforce_bound) {
      plan.reduced = true;
    } else {
      base = *requested;
    }
  }
  if (t_end == 0.0) {
    plan.dt = base;
    return plan;
  }
  plan.steps = static_cast<std::size_t>(std::ceil(t_end / base - 1e-9));
  if (plan.steps == 0) plan.steps = 1;
  plan.dt = t_end / static_cast<double>(plan.steps);
  return plan;
}

/// Step index for each requested output time: the first step whose time is
/// >= the request. Requests mapping to an already-scheduled step are dropped.
inline std::vector<std::size_t> output_steps(std::span<const double> times, const StepPlan& plan,
                                             double t_end) {
  std::vector<std::size_t> out;
  double last = -1.0;
  const double tol = 1e-9 * std::max(1.0, t_end);
  for (double t : times) {
    if (!(t >= 0.0) || t > t_end + tol) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("output time {} outside [0, {}]", t, t_end));
    }
    if (t <= last) {
      throw Error(ErrorCode::InvalidArgument, "output times must be strictly increasing");
    }
    last = t;
    std::size_t k = 0;
    if (plan.steps > 0) {
      k = static_cast<std::size_t>(std::ceil(t / plan.dt - 1e-9));
      if (k > plan.steps) k = plan.steps;
    }
    if (out.empty() || k > out.back()) out.push_back(k);
  }
  return out;
}

}  // namespace homog1d::detail
