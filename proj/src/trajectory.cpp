#include "jetmech/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "jetmech/errors.hpp"

namespace jetmech {

Trajectory::Trajectory(SpaceId space, double t0, double step, std::vector<Vec> samples,
                       std::optional<std::vector<Vec>> derivatives)
    : space_(space), t0_(t0), step_(step), samples_(std::move(samples)),
      derivatives_(std::move(derivatives)) {
  if (samples_.empty()) throw InvalidArgument("trajectory needs at least one sample");
  if (!(step_ > 0.0)) throw InvalidArgument("trajectory step must be positive");
  const int d = space_.dim();
  const int ti = space_.index(Coord::t);
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (samples_[k].size() != d) throw ShapeError("trajectory sample has the wrong length");
    const double expected = time(static_cast<int>(k));
    if (std::abs(samples_[k][ti] - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
      throw InvalidArgument("sample " + std::to_string(k) + " is off the time grid");
    }
  }
  if (derivatives_) {
    if (derivatives_->size() != samples_.size()) {
      throw ShapeError("derivative channel length differs from the sample count");
    }
    for (const auto& r : *derivatives_) {
      if (r.size() != d) throw ShapeError("derivative sample has the wrong length");
    }
  }
}

const Vec& Trajectory::sample(int k) const {
  if (k < 0 || k >= size()) throw IndexOutOfRange("trajectory index " + std::to_string(k));
  return samples_[k];
}

Vec Trajectory::derivative(int k) const {
  if (k < 0 || k >= size()) throw IndexOutOfRange("trajectory index " + std::to_string(k));
  if (derivatives_) return (*derivatives_)[k];
  const int last = size() - 1;
  if (last == 0) throw InvalidArgument("a single sample has no derivative");
  const double h = step_;
  const auto& x = samples_;
  if (last == 1) return (x[1] - x[0]) / h;
  if (last < 4) {
    if (k == 0) return (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h);
    if (k == last) return (3.0 * x[last] - 4.0 * x[last - 1] + x[last - 2]) / (2.0 * h);
  }
  // Cubic extrapolation of the central differences to the end node: second
  // order, with the same h^2 error term as the interior stencil so that
  // central differences of derived quantities stay second order next to an
  // end.
  if (k == 0) return (-3.0 * x[0] + 3.0 * x[1] + 2.0 * x[2] - 3.0 * x[3] + x[4]) / (2.0 * h);
  if (k == last) {
    return (3.0 * x[last] - 3.0 * x[last - 1] - 2.0 * x[last - 2] + 3.0 * x[last - 3] - x[last - 4]) /
           (2.0 * h);
  }
  return (x[k + 1] - x[k - 1]) / (2.0 * h);
}

Trajectory sample_curve(SpaceId space, double t0, double step, int count,
                        const std::function<Vec(double)>& coords,
                        const std::function<Vec(double)>& rates) {
  if (count < 1) throw InvalidArgument("need at least one sample");
  const int d = space.dim();
  const int ti = space.index(Coord::t);
  std::vector<Vec> samples;
  std::optional<std::vector<Vec>> derivatives;
  if (rates) derivatives.emplace();
  for (int k = 0; k < count; ++k) {
    const double t = t0 + k * step;
    const Vec rest = coords(t);
    if (rest.size() != d - 1) throw ShapeError("curve returned the wrong number of coordinates");
    Vec x(d);
    x[ti] = t;
    for (int i = 0, j = 0; i < d; ++i) {
      if (i != ti) x[i] = rest[j++];
    }
    samples.push_back(std::move(x));
    if (rates) {
      const Vec r = rates(t);
      if (r.size() != d - 1) throw ShapeError("curve rates have the wrong length");
      Vec dx(d);
      dx[ti] = 1.0;
      for (int i = 0, j = 0; i < d; ++i) {
        if (i != ti) dx[i] = r[j++];
      }
      derivatives->push_back(std::move(dx));
    }
  }
  return Trajectory(space, t0, step, std::move(samples), std::move(derivatives));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string format_17(double x) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

void write_csv(std::ostream& out, const Trajectory& traj) {
  const auto names = coordinate_names(traj.space());
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (const auto& x : traj.samples()) {
    for (int i = 0; i < x.size(); ++i) out << (i ? "," : "") << format_17(x[i]);
    out << '\n';
  }
}

Trajectory read_csv(std::istream& in, SpaceId space) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file");
  const auto names = coordinate_names(space);
  std::string expected;
  for (std::size_t i = 0; i < names.size(); ++i) expected += (i ? "," : "") + names[i];
  if (line != expected) throw ParseError("header '" + line + "' does not match " + space.name());

  std::vector<Vec> samples;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    Vec x(space.dim());
    std::stringstream row(line);
    std::string cell;
    int i = 0;
    while (std::getline(row, cell, ',')) {
      if (i >= x.size()) throw ParseError("too many columns");
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError("bad number '" + cell + "'");
      }
      x[i++] = v;
    }
    if (i != x.size()) throw ParseError("too few columns");
    samples.push_back(std::move(x));
  }
  if (samples.empty()) throw ParseError("trajectory file has no rows");
  const int ti = space.index(Coord::t);
  const double t0 = samples.front()[ti];
  const double step =
      samples.size() > 1 ? (samples.back()[ti] - t0) / static_cast<double>(samples.size() - 1) : 1.0;
  return Trajectory(space, t0, step, std::move(samples));
}

}  // namespace jetmech
