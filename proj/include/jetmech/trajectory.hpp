#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jetmech/spaces.hpp"

namespace jetmech {

/// Uniformly sampled curve t_k -> x_k in one chart. The t coordinate of
/// sample k is t0 + k * step.
///
/// An optional exact-derivative channel carries d/dt of every sample when
/// the curve is known in closed form; otherwise derivatives come from divided
/// differences (central inside, one-sided at both ends).
class Trajectory {
 public:
  Trajectory(SpaceId space, double t0, double step, std::vector<Vec> samples,
             std::optional<std::vector<Vec>> derivatives = std::nullopt);

  [[nodiscard]] const SpaceId& space() const { return space_; }
  [[nodiscard]] double t0() const { return t0_; }
  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] int size() const { return static_cast<int>(samples_.size()); }
  [[nodiscard]] double time(int k) const { return t0_ + k * step_; }
  [[nodiscard]] const Vec& sample(int k) const;
  [[nodiscard]] const std::vector<Vec>& samples() const { return samples_; }
  [[nodiscard]] bool has_exact_derivatives() const { return derivatives_.has_value(); }

  /// d/dt of the whole sample vector at node k.
  [[nodiscard]] Vec derivative(int k) const;

 private:
  SpaceId space_;
  double t0_;
  double step_;
  std::vector<Vec> samples_;
  std::optional<std::vector<Vec>> derivatives_;
};

/// Samples `count` nodes of a closed-form curve. `coords(t)` returns the
/// non-time coordinates; `rates(t)`, when given, their exact time derivative.
Trajectory sample_curve(SpaceId space, double t0, double step, int count,
                        const std::function<Vec(double)>& coords,
                        const std::function<Vec(double)>& rates = nullptr);

/// Header row then one row per sample, 17 significant digits.
void write_csv(std::ostream& out, const Trajectory& traj);
Trajectory read_csv(std::istream& in, SpaceId space);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

}  // namespace jetmech
