#include "jetmech/spaces.hpp"

#include <array>
#include <utility>

#include "jetmech/errors.hpp"

namespace jetmech {
namespace {

struct SpaceInfo {
  Space tag;
  std::string_view name;
  std::vector<Coord> blocks;
};

const std::vector<SpaceInfo>& space_table() {
  using C = Coord;
  static const std::vector<SpaceInfo> table = {
      {Space::M, "M", {C::t, C::q}},
      {Space::J1PI, "J1PI", {C::t, C::q, C::qdot}},
      {Space::VSTAR, "VSTAR", {C::t, C::q, C::p}},
      {Space::TSTARM, "TSTARM", {C::t, C::q, C::p0, C::p}},
      {Space::J1PI1STAR, "J1PI1STAR", {C::t, C::q, C::p, C::qdot, C::pdot}},
      {Space::QUOT_TSTAR_J1PI, "QUOT_TSTAR_J1PI", {C::t, C::q, C::qdot, C::p_q, C::p_qdot}},
      {Space::PMU_QUOT, "PMU_QUOT", {C::t, C::q, C::p, C::p_q, C::p_p}},
      {Space::J1TILDE, "J1TILDE", {C::t, C::q, C::p0, C::p, C::qdot, C::pdot0, C::pdot}},
      {Space::VHAT1, "VHAT1", {C::t, C::q, C::p0, C::p, C::p_t, C::p_q, C::p_p}},
      {Space::TSTAR_J1PI, "TSTAR_J1PI", {C::t, C::q, C::qdot, C::p_t, C::p_q, C::p_qdot}},
      {Space::TVSTAR, "TVSTAR", {C::t, C::q, C::p, C::tdot, C::qdot, C::pdot}},
      {Space::PMU, "PMU", {C::t, C::q, C::p, C::p_t, C::p_q, C::p_p}},
      {Space::TTSTAR_N, "TTSTAR_N", {C::q, C::p, C::qdot, C::pdot}},
      {Space::TSTAR_TN, "TSTAR_TN", {C::q, C::qdot, C::p_q, C::p_qdot}},
  };
  return table;
}

const SpaceInfo& info(Space tag) {
  for (const auto& s : space_table()) {
    if (s.tag == tag) return s;
  }
  throw InvalidArgument("unknown space tag");
}

bool is_scalar(Coord c) {
  switch (c) {
    case Coord::t:
    case Coord::tdot:
    case Coord::p0:
    case Coord::pdot0:
    case Coord::p_t:
      return true;
    default:
      return false;
  }
}

std::string_view coord_prefix(Coord c) {
  switch (c) {
    case Coord::t: return "t";
    case Coord::q: return "q";
    case Coord::qdot: return "v";
    case Coord::tdot: return "tdot";
    case Coord::p0: return "p0";
    case Coord::p: return "p";
    case Coord::pdot0: return "pdot0";
    case Coord::pdot: return "pdot";
    case Coord::p_t: return "p_t";
    case Coord::p_q: return "p_q";
    case Coord::p_qdot: return "p_v";
    case Coord::p_p: return "p_p";
  }
  return "?";
}

}  // namespace

std::string_view space_name(Space tag) { return info(tag).name; }

Space parse_space(std::string_view name) {
  for (const auto& s : space_table()) {
    if (s.name == name) return s.tag;
  }
  throw InvalidArgument("unknown space '" + std::string(name) + "'");
}

std::vector<CoordBlock> layout(SpaceId space) {
  std::vector<CoordBlock> out;
  for (Coord c : info(space.tag).blocks) {
    out.push_back({c, is_scalar(c) ? 1 : space.n});
  }
  return out;
}

int SpaceId::dim() const {
  int d = 0;
  for (const auto& b : layout(*this)) d += b.width;
  return d;
}

std::string SpaceId::name() const { return std::string(space_name(tag)); }

bool SpaceId::has(Coord role) const {
  for (Coord c : info(tag).blocks) {
    if (c == role) return true;
  }
  return false;
}

int SpaceId::index(Coord role, int i) const {
  int offset = 0;
  for (const auto& b : layout(*this)) {
    if (b.role == role) {
      if (i < 0 || i >= b.width) {
        throw IndexOutOfRange("coordinate component out of range in " + name());
      }
      return offset + i;
    }
    offset += b.width;
  }
  throw InvalidArgument("space " + name() + " has no coordinate '" +
                        std::string(coord_prefix(role)) + "'");
}

std::vector<std::string> coordinate_names(SpaceId space) {
  std::vector<std::string> names;
  for (const auto& b : layout(space)) {
    if (b.width == 1 && is_scalar(b.role)) {
      names.emplace_back(coord_prefix(b.role));
    } else {
      for (int i = 0; i < b.width; ++i) {
        names.push_back(std::string(coord_prefix(b.role)) + std::to_string(i + 1));
      }
    }
  }
  return names;
}

SpacePoint::SpacePoint(SpaceId space, Vec coords) : space_(space), coords_(std::move(coords)) {
  if (space_.n < 1) throw InvalidArgument("fiber dimension must be positive");
  if (coords_.size() != space_.dim()) {
    throw ShapeError("point in " + space_.name() + " needs " + std::to_string(space_.dim()) +
                     " coordinates, got " + std::to_string(coords_.size()));
  }
}

Vec SpacePoint::block(Coord role) const {
  const int width = is_scalar(role) ? 1 : space_.n;
  return coords_.segment(space_.index(role, 0), width);
}

void require_space(const SpacePoint& point, SpaceId expected) {
  if (!(point.space() == expected)) {
    throw SpaceMismatch("expected a point of " + expected.name() + " (n=" +
                        std::to_string(expected.n) + "), got " + point.space().name() +
                        " (n=" + std::to_string(point.space().n) + ")");
  }
}

}  // namespace jetmech
