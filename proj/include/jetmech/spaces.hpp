#pragma once

// Coordinate-space bookkeeping.
//
// Every space is a global chart on R^dim with a fixed coordinate order.
// n is the fiber dimension of the underlying fibration M = R x R^n -> R.
//
//   M               (t, q)
//   J1PI            (t, q, qdot)
//   VSTAR           (t, q, p)
//   TSTARM          (t, q, p0, p)
//   J1PI1STAR       (t, q, p, qdot, pdot)               tdot = 1 implicit
//   QUOT_TSTAR_J1PI (t, q, qdot, p_q, p_qdot)
//   PMU_QUOT        (t, q, p, p_q, p_p)
//   J1TILDE         (t, q, p0, p, qdot, pdot0, pdot)    tdot = 1 implicit
//   VHAT1           (t, q, p0, p, p_t, p_q, p_p)        p_p0 = 1 implicit
//   TSTAR_J1PI      (t, q, qdot, p_t, p_q, p_qdot)
//   TVSTAR          (t, q, p, tdot, qdot, pdot)
//   PMU             (t, q, p, p_t, p_q, p_p)
//   TTSTAR_N        (q, p, qdot, pdot)                  N = R^n, no time
//   TSTAR_TN        (q, qdot, p_q, p_qdot)
//
// p0 is the momentum conjugate to t.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace jetmech {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Space {
  M,
  J1PI,
  VSTAR,
  TSTARM,
  J1PI1STAR,
  QUOT_TSTAR_J1PI,
  PMU_QUOT,
  J1TILDE,
  VHAT1,
  TSTAR_J1PI,
  TVSTAR,
  PMU,
  TTSTAR_N,
  TSTAR_TN,
};

/// Role of a coordinate block inside a chart.
enum class Coord {
  t,
  q,
  qdot,
  tdot,
  p0,
  p,
  pdot0,
  pdot,
  p_t,
  p_q,
  p_qdot,
  p_p,
};

struct SpaceId {
  Space tag = Space::M;
  int n = 1;

  [[nodiscard]] int dim() const;
  [[nodiscard]] std::string name() const;

  /// Index of component `i` (0-based) of the block `role`. Throws
  /// InvalidArgument if the space has no such block.
  [[nodiscard]] int index(Coord role, int i = 0) const;
  [[nodiscard]] bool has(Coord role) const;

  friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

std::string_view space_name(Space tag);
Space parse_space(std::string_view name);

/// Blocks of the chart in order; scalar blocks have width 1, the rest width n.
struct CoordBlock {
  Coord role;
  int width;
};
std::vector<CoordBlock> layout(SpaceId space);

/// Column names used for CSV headers ("t", "q1", "v1", "p0", "p1", ...).
std::vector<std::string> coordinate_names(SpaceId space);

class SpacePoint {
 public:
  SpacePoint(SpaceId space, Vec coords);

  [[nodiscard]] const SpaceId& space() const { return space_; }
  [[nodiscard]] const Vec& coords() const { return coords_; }
  [[nodiscard]] double operator[](int i) const { return coords_[i]; }
  [[nodiscard]] double at(Coord role, int i = 0) const {
    return coords_[space_.index(role, i)];
  }
  /// The n components of a width-n block.
  [[nodiscard]] Vec block(Coord role) const;

 private:
  SpaceId space_;
  Vec coords_;
};

/// Throws SpaceMismatch unless `point` lives in `expected`.
void require_space(const SpacePoint& point, SpaceId expected);

}  // namespace jetmech
