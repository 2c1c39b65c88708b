#include "jetmech/report.hpp"

#include <cmath>
#include <sstream>

namespace jetmech {
namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void emit(std::ostringstream& out, const Json& v, int indent, int depth) {
  auto newline = [&](int level) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        emit(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        emit(out, item, indent, depth + 1);
      }
      newline(depth);
      out << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Json to_json(const StructureMapReport& r) {
  return {{"map", std::string(map_name(r.map))},
          {"n", r.n},
          {"samples", r.samples},
          {"seed", r.seed},
          {"sign", r.sign},
          {"max_error", number(r.max_error)},
          {"pass", r.pass}};
}

Json to_json(const SubmanifoldReport& r) {
  return {{"object", r.object},
          {"scenario", r.scenario},
          {"n", r.n},
          {"points_tested", r.points_tested},
          {"points_skipped", r.points_skipped},
          {"max_bracket_violation", number(r.max_bracket_violation)},
          {"intersection_dims", r.intersection_dims},
          {"expected_dims", r.expected_dims},
          {"pass", r.pass}};
}

Json to_json(const EqualityReport& r) {
  return {{"scenario", r.scenario},
          {"variant", r.variant == Variant::restricted ? "restricted" : "extended"},
          {"n", r.n},
          {"samples", r.samples},
          {"seed", r.seed},
          {"points_skipped", r.points_skipped},
          {"max_SL_residual", number(r.max_SL_residual)},
          {"max_SH_residual", number(r.max_SH_residual)},
          {"pass", r.pass}};
}

Json to_json(const EquivalenceReport& r) {
  return {{"scenario", r.scenario},
          {"t0", number(r.t0)},
          {"t1", number(r.t1)},
          {"step", number(r.step)},
          {"sup_gap", number(r.sup_gap)},
          {"max_SL_residual", number(r.max_SL_residual)},
          {"max_SH_residual", number(r.max_SH_residual)},
          {"lemma_l1_max", number(r.lemma_l1_max)},
          {"ec2_residual_max", number(r.ec2_residual_max)},
          {"order_estimate", r.order_estimate ? number(*r.order_estimate) : Json(nullptr)}};
}

std::string dump_json(const Json& value, int indent) {
  std::ostringstream out;
  emit(out, value, indent, 0);
  return out.str();
}

}  // namespace jetmech
