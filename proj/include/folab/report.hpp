#pragma once

// JSON views of library results. Objects are insertion-ordered so dumps are
// byte-stable for fixed inputs.

#include <json.hpp>

#include "folab/logcalc.hpp"

namespace folab::report {

using Json = nlohmann::ordered_json;

inline Json opt_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

inline Json error_json(const Error& e) { return {{"kind", std::string(to_string(e.kind()))}, {"message", e.message()}}; }

inline Json stage_json(const Stage& s) {
  Json j{{"label", s.label}, {"ok", opt_bool(s.ok)}, {"detail", s.detail}};
  if (s.point) j["point"] = *s.point;
  return j;
}

inline Json singular_points_json(const SingularPointReport& r, const std::vector<std::string>& vars) {
  Json pts = Json::array();
  for (const auto& p : r.rational_points) pts.push_back(to_string(p));
  return {{"rational_points", pts},
          {"complete", r.complete},
          {"eliminants", {r.eliminants[0].to_string(vars[0]), r.eliminants[1].to_string(vars[1])}}};
}

/// Nodes in depth-first order with center, chart, divided power m,
/// invariance of the exceptional component and the local verdict.
inline Json tree_json(const ReductionTree& t) {
  Json nodes = Json::array();
  for (const auto& n : t.nodes) {
    Json j{{"id", n.id},
           {"parent", n.parent ? Json(*n.parent) : Json(nullptr)},
           {"depth", n.depth},
           {"center", to_string(n.germ.basepoint())},
           {"chart", n.parent_chart},
           {"m", n.transforms.empty() ? Json(nullptr) : Json(n.transforms.front().divided_power)},
           {"exceptional_invariant", n.verdict == NodeVerdict::BlownUp ? Json(n.exceptional_invariant) : Json(nullptr)},
           {"verdict", std::string(to_string(n.verdict))},
           {"children", n.children}};
    if (n.unresolved_eliminant) j["unresolved_eliminant"] = n.unresolved_eliminant->to_string("t");
    nodes.push_back(std::move(j));
  }
  Json out{{"status", std::string(to_string(t.status))}, {"truncated", t.truncated}, {"nodes", nodes}};
  if (t.nonrational_eliminant) out["nonrational_eliminant"] = t.nonrational_eliminant->to_string("t");
  return out;
}

inline Json dicriticity_json(const DicriticityVerdict& v) {
  Json j{{"verdict", std::string(to_string(v.verdict))}};
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

inline Json prop3_json(const Prop3Report& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"node", e.node}, {"chart", e.chart}, {"logarithmic", e.logarithmic}, {"divisor_pole_order", e.divisor_pole_order}});
  return {{"nu_f", r.nu_f},
          {"nu_omega", r.nu_omega},
          {"inequality_ok", r.inequality_ok},
          {"all_logarithmic", r.all_logarithmic},
          {"entries", entries},
          {"tree", tree_json(r.tree)}};
}

inline Json pipeline_verdicts(const LogPipelineReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back({{"point", to_string(p.point)}, {"chart", p.chart}, {"dicriticity", dicriticity_json(p.dicriticity)}});
  Json by_chart = Json::array();
  for (const auto& c : r.closed_by_chart) by_chart.push_back(opt_bool(c));
  return {{"degree_extremal", r.degree_extremal},
          {"invariance", r.invariance_ok},
          {"squarefree", r.squarefree_ok},
          {"singular_search_complete", r.singular_search_complete},
          {"on_curve_points", pts},
          {"closed", opt_bool(r.closed)},
          {"closed_by_chart", by_chart},
          {"theorem_hypothesis", std::string(to_string(r.theorem_hypothesis))},
          {"failed_hypotheses", r.failed_hypotheses},
          {"consistent", r.consistent}};
}

inline Json pipeline_stages(const LogPipelineReport& r) {
  Json s = Json::array();
  for (const auto& st : r.stages) s.push_back(stage_json(st));
  return s;
}

}  // namespace folab::report
