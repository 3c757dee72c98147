#pragma once

// Command-line front end. Every subcommand produces a report
//   {"command", "verdicts", "stages", "errors"}
// on stdout. Exit codes: 0 computed verdict, 1 input or library error (error
// JSON on stderr), 2 undecided verdict.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "folab/parser.hpp"
#include "folab/report.hpp"

namespace folab::cli {

using report::Json;

inline constexpr unsigned default_max_depth = 12;
inline constexpr const char* max_depth_env = "FOLIATION_LAB_MAX_DEPTH";

enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_unknown = 2 };

/// An input failure tied to a field of the input document.
class InputFailure : public Error {
 public:
  InputFailure(ErrorKind kind, std::string field, const std::string& what, std::optional<SourcePos> pos = std::nullopt)
      : Error(kind, what), field_(std::move(field)), pos_(pos) {}

  const std::string& field() const { return field_; }
  const std::optional<SourcePos>& pos() const { return pos_; }

 private:
  std::string field_;
  std::optional<SourcePos> pos_;
};

inline Json error_json(const std::exception& e) {
  Json j;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    j = report::error_json(*err);
    if (const auto* in = dynamic_cast<const InputFailure*>(&e)) {
      if (!in->field().empty()) j["field"] = in->field();
      if (in->pos()) {
        j["line"] = in->pos()->line;
        j["column"] = in->pos()->column;
      }
    } else if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
      j["line"] = pe->pos().line;
      j["column"] = pe->pos().column;
    }
  } else {
    j = {{"kind", "InternalError"}, {"message", e.what()}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// Input documents

enum class FoliationKind { Affine, Homogeneous };

struct InputDoc {
  std::vector<std::string> vars;
  FoliationKind kind = FoliationKind::Affine;
  OneForm form = OneForm::zero(2);  ///< as written
  Point2 basepoint{Rat(0), Rat(0)};
  std::vector<NamedCurve> curves;
  Json params = Json::object();
};

namespace detail {

[[noreturn]] inline void input_error(const std::string& field, const std::string& what) {
  throw InputFailure(ErrorKind::InputError, field, what);
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline Poly parse_field(const Json& value, const std::string& field, const std::vector<std::string>& vars) {
  if (!value.is_string()) input_error(field, "expected an expression string");
  try {
    return parse_poly(value.get<std::string>(), vars);
  } catch (const ParseError& e) {
    throw InputFailure(e.kind(), field, e.message(), e.pos());
  }
}

inline Rat parse_rat_field(const Json& value, const std::string& field) {
  if (value.is_number_integer()) return Rat(value.get<long>());
  if (!value.is_string()) input_error(field, "expected an integer or a rational string p/q");
  try {
    return parse_rat(value.get<std::string>());
  } catch (const Error& e) {
    input_error(field, e.message());
  }
}

}  // namespace detail

inline InputDoc parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputFailure(ErrorKind::InputError, "", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) detail::input_error("", "input must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "vars" && key != "foliation" && key != "curves" && key != "params")
      detail::input_error(key, "unknown top-level key '" + key + "'");

  InputDoc doc;
  if (!j.contains("vars") || !j["vars"].is_array() || j["vars"].empty())
    detail::input_error("vars", "expected a nonempty array of variable names");
  for (const auto& v : j["vars"]) {
    if (!v.is_string() || !detail::is_identifier(v.get<std::string>()))
      detail::input_error("vars", "variable names must be identifiers");
    const auto name = v.get<std::string>();
    if (std::find(doc.vars.begin(), doc.vars.end(), name) != doc.vars.end())
      detail::input_error("vars", "duplicate variable '" + name + "'");
    doc.vars.push_back(name);
  }
  const std::size_t n = doc.vars.size();

  if (j.contains("params")) {
    if (!j["params"].is_object()) detail::input_error("params", "expected an object");
    doc.params = j["params"];
  }

  if (!j.contains("foliation") || !j["foliation"].is_object()) detail::input_error("foliation", "expected an object");
  const Json& fol = j["foliation"];
  const std::string kind = fol.value("kind", "");
  if (kind == "affine") {
    doc.kind = FoliationKind::Affine;
    if (n != 2) detail::input_error("vars", "an affine foliation needs exactly two variables");
  } else if (kind == "homogeneous") {
    doc.kind = FoliationKind::Homogeneous;
    if (n != 3) detail::input_error("vars", "a homogeneous foliation needs exactly three variables");
  } else {
    detail::input_error("foliation.kind", "expected \"affine\" or \"homogeneous\"");
  }
  if (!fol.contains("form") || !fol["form"].is_object()) detail::input_error("foliation.form", "expected an object of differentials");
  std::vector<Poly> coeffs(n, Poly(n));
  for (const auto& [key, value] : fol["form"].items()) {
    const std::string field = "foliation.form." + key;
    auto it = key.size() > 1 && key[0] == 'd' ? std::find(doc.vars.begin(), doc.vars.end(), key.substr(1)) : doc.vars.end();
    if (it == doc.vars.end()) detail::input_error(field, "'" + key + "' is not the differential of a declared variable");
    coeffs[static_cast<std::size_t>(it - doc.vars.begin())] = detail::parse_field(value, field, doc.vars);
  }
  doc.form = OneForm(std::move(coeffs));
  if (fol.contains("basepoint")) {
    const Json& bp = fol["basepoint"];
    if (!bp.is_array() || bp.size() != 2) detail::input_error("foliation.basepoint", "expected two coordinates");
    doc.basepoint = {detail::parse_rat_field(bp[0], "foliation.basepoint"), detail::parse_rat_field(bp[1], "foliation.basepoint")};
  }

  if (j.contains("curves")) {
    if (!j["curves"].is_object()) detail::input_error("curves", "expected an object of named expressions");
    for (const auto& [name, value] : j["curves"].items())
      doc.curves.push_back({name, detail::parse_field(value, "curves." + name, doc.vars)});
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
  std::string command;
  std::string input;
  std::string format = "json";
  unsigned max_depth = default_max_depth;
  bool full_tree = false;
  std::string alpha = "1", beta = "2", gamma = "3";
};

struct Outcome {
  Json verdicts = Json::object();
  Json stages = Json::array();
  int code = exit_ok;
};

namespace detail {

inline void stage(Outcome& o, const std::string& label, std::optional<bool> ok, const std::string& detail) {
  o.stages.push_back(report::stage_json({label, ok, detail, std::nullopt}));
}

inline const NamedCurve* find_curve(const InputDoc& doc, const std::string& name) {
  for (const auto& c : doc.curves)
    if (c.name == name) return &c;
  return nullptr;
}

/// params.curve if given, otherwise the product of all curves.
inline Poly selected_curve(const InputDoc& doc) {
  if (doc.params.contains("curve")) {
    const Json& c = doc.params["curve"];
    if (!c.is_string()) input_error("params.curve", "expected a curve name");
    const NamedCurve* nc = find_curve(doc, c.get<std::string>());
    if (!nc) input_error("params.curve", "no curve named '" + c.get<std::string>() + "'");
    return nc->poly;
  }
  if (doc.curves.empty()) input_error("curves", "no curves declared");
  Poly f = Poly::constant(doc.vars.size(), 1);
  for (const auto& c : doc.curves) f *= c.poly;
  return f;
}

inline unsigned uint_param(const InputDoc& doc, const std::string& key, unsigned fallback) {
  if (!doc.params.contains(key)) return fallback;
  const Json& v = doc.params[key];
  if (!v.is_number_unsigned()) input_error("params." + key, "expected a nonnegative integer");
  return v.get<unsigned>();
}

inline ProjFoliation projective(const InputDoc& doc) {
  if (doc.kind != FoliationKind::Homogeneous) input_error("foliation.kind", "this command needs a homogeneous foliation");
  return proj_new(doc.form);
}

struct LocalView {
  GermFoliation germ;
  std::vector<std::string> vars;
  std::optional<std::size_t> chart;  ///< affine chart of a homogeneous input
};

/// The germ at the basepoint; homogeneous inputs use the chart params.affine_chart (default 0).
inline LocalView local_view(const InputDoc& doc) {
  if (doc.kind == FoliationKind::Affine) return {GermFoliation::make(doc.form, doc.basepoint), doc.vars, std::nullopt};
  const std::size_t i = uint_param(doc, "affine_chart", 0);
  if (i > 2) input_error("params.affine_chart", "chart index must be 0, 1 or 2");
  std::vector<std::string> vars;
  for (std::size_t j = 0; j < 3; ++j)
    if (j != i) vars.push_back(doc.vars[j]);
  return {GermFoliation::make(affine_chart(projective(doc), i), doc.basepoint), vars, i};
}

inline Poly local_curve(const LocalView& v, const Poly& f) { return v.chart ? dehomogenize(f, *v.chart) : f; }

inline std::string render(const Poly& p, const std::vector<std::string>& vars) { return to_string(p, vars); }

}  // namespace detail

inline Outcome cmd_check(const InputDoc& doc) {
  Outcome o;
  Json& v = o.verdicts;
  try {
    if (doc.kind == FoliationKind::Affine) {
      const GermFoliation g = GermFoliation::make(doc.form, doc.basepoint);
      v["valid"] = true;
      const auto nu = g.nu();
      v["nu"] = nu ? Json(*nu) : Json(nullptr);
      const bool singular = is_singular_at(g, g.basepoint());
      v["singular_at_basepoint"] = singular;
      v["reduced"] = singular ? Json(is_reduced_singularity(g)) : Json(nullptr);
      v["singular_points"] = report::singular_points_json(singular_points(g), doc.vars);
      const ProjFoliation F = homogenize_affine(doc.form);
      v["homogenized_degree"] = F.degree();
      v["infinity_line_invariant"] = infinity_line_invariant(F);
    } else {
      const ProjFoliation F = proj_new(doc.form);
      v["valid"] = true;
      v["degree"] = F.degree();
      v["infinity_line_invariant"] = infinity_line_invariant(F);
      std::vector<std::string> affine_vars{doc.vars[1], doc.vars[2]};
      v["singular_points_chart0"] = report::singular_points_json(singular_points(affine_chart(F, 0)), affine_vars);
    }
    detail::stage(o, "validate", true, "");
  } catch (const Error& e) {
    v["valid"] = false;
    v["error"] = report::error_json(e);
    detail::stage(o, "validate", false, e.what());
  }
  return o;
}

inline Outcome cmd_invariant(const InputDoc& doc) {
  Outcome o;
  auto test = [&](const Poly& f) {
    if (doc.kind == FoliationKind::Homogeneous) return is_invariant(detail::projective(doc), f);
    return is_invariant_form(doc.form, f);
  };
  if (doc.curves.empty()) detail::input_error("curves", "no curves declared");
  Json curves = Json::object();
  bool all = true;
  for (const auto& c : doc.curves) {
    const bool inv = test(c.poly);
    curves[c.name] = inv;
    all = all && inv;
    detail::stage(o, "invariance:" + c.name, inv, detail::render(c.poly, doc.vars));
  }
  o.verdicts["curves"] = curves;
  o.verdicts["all"] = all;
  return o;
}

inline Outcome cmd_blowup(const InputDoc& doc) {
  Outcome o;
  const auto view = detail::local_view(doc);
  const unsigned chart = detail::uint_param(doc, "chart", 1);
  if (chart != 1 && chart != 2) detail::input_error("params.chart", "chart must be 1 or 2");
  const StrictTransform st = blowup_once(view.germ, static_cast<int>(chart));
  const auto cvars = st.chart.var_names();
  Json& v = o.verdicts;
  v["chart"] = chart;
  v["center"] = to_string(view.germ.basepoint());
  v["m"] = st.divided_power;
  v["omega_tilde"] = to_string(st.omega_tilde, cvars);
  v["exceptional_invariant"] = st.exceptional_invariant;
  detail::stage(o, "strict-transform", true, "divided by the exceptional equation to the power " + std::to_string(st.divided_power));
  if (!doc.curves.empty()) {
    const Poly f = detail::local_curve(view, detail::selected_curve(doc));
    const auto map = st.chart.full_map();
    const MeroOneForm pulled = mero_make(pullback(map, view.germ.omega()), substitute(f, map));
    const Poly e = Poly::variable(2, st.chart.divisor_var());
    const PoleReport pr = pole_orders(pulled, e);
    const bool log = mero_is_logarithmic(pulled);
    v["log_form_pullback"] = to_string(pulled, cvars);
    v["pullback_logarithmic"] = log;
    v["divisor_pole_order"] = pr.order_form;
    v["divisor_dpole_order"] = pr.order_dform;
    detail::stage(o, "pullback", log, "pole order " + std::to_string(pr.order_form) + " along " + cvars[st.chart.divisor_var()] + " = 0");
  }
  return o;
}

inline Outcome cmd_dicritical(const InputDoc& doc, const Options& opt) {
  Outcome o;
  const auto view = detail::local_view(doc);
  const DicriticityVerdict d = dicriticity(view.germ, opt.max_depth, opt.full_tree);
  o.verdicts = report::dicriticity_json(d);
  o.verdicts["tree"] = report::tree_json(d.tree);
  std::optional<bool> ok;
  if (d.verdict != Dicriticity::Unknown) ok = d.verdict == Dicriticity::NonDicritical;
  detail::stage(o, "dicriticity:" + to_string(view.germ.basepoint()), ok, std::string(to_string(d.verdict)));
  if (d.verdict == Dicriticity::Unknown) o.code = exit_unknown;
  return o;
}

inline Outcome cmd_reduce(const InputDoc& doc, const Options& opt) {
  Outcome o;
  const auto view = detail::local_view(doc);
  require_singular(view.germ);
  const ReductionTree t = reduce_singularities(view.germ, ReductionOptions{opt.max_depth, false});
  o.verdicts["status"] = std::string(to_string(t.status));
  o.verdicts["tree"] = report::tree_json(t);
  const bool complete = t.status == ReductionStatus::Complete;
  detail::stage(o, "reduction", complete ? std::optional<bool>(true) : std::nullopt, std::string(to_string(t.status)));
  if (!complete) o.code = exit_unknown;
  return o;
}

inline Outcome cmd_logform(const InputDoc& doc) {
  Outcome o;
  const Poly f = detail::selected_curve(doc);
  Json& v = o.verdicts;
  if (doc.kind == FoliationKind::Homogeneous) {
    const ProjFoliation F = detail::projective(doc);
    const MeroOneForm w = log_form_projective(F, f);
    v["degree"] = F.degree();
    v["log_form"] = to_string(w, doc.vars);
    v["logarithmic"] = mero_is_logarithmic(w);
    detail::stage(o, "log-form", v["logarithmic"].get<bool>(), "deg f = d + 2, reduced and invariant");
    return o;
  }
  const bool inv = is_invariant_form(doc.form, f);
  const MeroOneForm w = mero_make(doc.form, f);
  const bool log = mero_is_logarithmic(w);
  v["invariant"] = inv;
  v["log_form"] = to_string(w, doc.vars);
  v["logarithmic"] = log;
  Json poles = Json::object();
  for (const auto& c : doc.curves) {
    if (c.poly.is_constant() || !is_squarefree(c.poly)) continue;
    const PoleReport pr = pole_orders(w, c.poly);
    poles[c.name] = {{"form", pr.order_form}, {"dform", pr.order_dform}};
  }
  v["pole_orders"] = poles;
  detail::stage(o, "invariance", inv, "");
  detail::stage(o, "logarithmic", log, "");
  return o;
}

inline Outcome cmd_closed(const InputDoc& doc) {
  Outcome o;
  const Poly f = detail::selected_curve(doc);
  if (doc.kind == FoliationKind::Homogeneous) {
    const ProjFoliation F = detail::projective(doc);
    const bool descends = is_homogeneous(f) && total_degree(f) == static_cast<long>(F.degree()) + 2;
    o.verdicts["descends_to_projective_plane"] = descends;
  }
  const MeroOneForm w = mero_make(doc.form, f);
  const bool closed = mero_is_closed(w);
  o.verdicts["log_form"] = to_string(w, doc.vars);
  o.verdicts["closed"] = closed;
  if (!closed) o.verdicts["d_log_form"] = to_string(mero_d(w).num, doc.vars);
  detail::stage(o, "closed", closed, "");
  return o;
}

inline Outcome cmd_extremal(const InputDoc& doc, const Options& opt) {
  Outcome o;
  const ProjFoliation F = detail::projective(doc);
  const LogPipelineReport r = analyze_extremal(F, detail::selected_curve(doc), opt.max_depth);
  o.verdicts = report::pipeline_verdicts(r);
  o.verdicts["degree"] = F.degree();
  o.stages = report::pipeline_stages(r);
  if (r.theorem_hypothesis == Hypothesis::Unknown) o.code = exit_unknown;
  return o;
}

/// params.h as an expression, otherwise the selected curve.
inline Poly divisor_poly(const InputDoc& doc) {
  if (doc.params.contains("h")) return detail::parse_field(doc.params["h"], "params.h", doc.vars);
  return detail::selected_curve(doc);
}

inline Outcome cmd_divide(const InputDoc& doc) {
  Outcome o;
  const Poly h = divisor_poly(doc);
  const DivisionResult d = rham_saito_divide(doc.form, h);
  o.verdicts["h"] = detail::render(h, doc.vars);
  o.verdicts["certified"] = d.certified;
  o.verdicts["a"] = d.certified ? Json(detail::render(d.a, doc.vars)) : Json(nullptr);
  o.verdicts["eta"] = d.certified ? Json(to_string(d.eta, doc.vars)) : Json(nullptr);
  detail::stage(o, "division", d.certified, d.certified ? "omega = a dh + h eta" : "no solution");
  return o;
}

inline Outcome cmd_first_integral(const InputDoc& doc) {
  Outcome o;
  const ProjFoliation F = detail::projective(doc);
  const Poly h = divisor_poly(doc);
  const FirstIntegral fi = first_integral_extremal(F, h);
  const DivisionResult raw = rham_saito_divide(doc.form, h);
  Json& v = o.verdicts;
  v["degree"] = F.degree();
  v["h"] = detail::render(h, doc.vars);
  v["a"] = detail::render(raw.a, doc.vars);
  v["delta"] = fi.delta;
  v["eta"] = to_string(raw.eta, doc.vars);
  v["first_integral"] = "(" + detail::render(h, doc.vars) + ")/(" + detail::render(raw.a, doc.vars) + ")^" + std::to_string(fi.delta);
  detail::stage(o, "division", true, "omega = a dh + h eta");
  detail::stage(o, "euler", true, "(deg h) a + i_R eta = 0");
  detail::stage(o, "wedge", true, "omega ^ (a dh - delta h da) = 0");
  return o;
}

// ---------------------------------------------------------------------------
// Built-in demos

inline Outcome demo_radial(const Options& opt) {
  Outcome o;
  const RadialExample ex = builtin_example_radial();
  const std::vector<std::string> xy{"x", "y"};
  Json& v = o.verdicts;
  const bool inv = is_invariant(ex.germ, ex.f);
  const MeroOneForm w = mero_make(ex.germ.omega(), ex.f);
  const bool log = mero_is_logarithmic(w);
  v["omega"] = to_string(ex.germ.omega(), xy);
  v["f"] = detail::render(ex.f, xy);
  v["f_invariant"] = inv;
  v["log_form"] = to_string(w, xy);
  v["logarithmic"] = log;
  detail::stage(o, "invariance", inv, "");
  detail::stage(o, "logarithmic", log, "");

  const StrictTransform st = blowup_once(ex.germ, 1);
  const auto map = st.chart.full_map();
  const MeroOneForm pulled = mero_make(pullback(map, w.num()), substitute(w.den(), map));
  const Poly x = Poly::variable(2, 0), t = Poly::variable(2, 1);
  const MeroOneForm expected = mero_make(OneForm::basis(2, 1), x * x * (Poly::constant(2, 1) + pow(t, 4)));
  const PoleReport pr = pole_orders(pulled, x);
  v["chart1_pullback"] = to_string(pulled, st.chart.var_names());
  v["chart1_pullback_matches"] = pulled == expected;
  v["divisor_pole_order"] = pr.order_form;
  detail::stage(o, "pullback:chart1", pulled == expected, "dt/(x^2*(1 + t^4))");
  detail::stage(o, "pole-order:chart1", pr.order_form == 2, "pole order " + std::to_string(pr.order_form) + " along x = 0");

  const DicriticityVerdict d = dicriticity(ex.germ, opt.max_depth);
  v["dicriticity"] = std::string(to_string(d.verdict));
  v["tree"] = report::tree_json(d.tree);
  detail::stage(o, "dicriticity:(0,0)", d.verdict == Dicriticity::NonDicritical, std::string(to_string(d.verdict)));
  if (d.verdict == Dicriticity::Unknown) o.code = exit_unknown;
  return o;
}

inline Outcome demo_cdf(const Options& opt) {
  Outcome o;
  auto param = [](const std::string& s, const std::string& name) {
    try {
      return parse_rat(s);
    } catch (const Error& e) {
      detail::input_error(name, e.message());
    }
  };
  const Rat alpha = param(opt.alpha, "--alpha"), beta = param(opt.beta, "--beta"), gamma = param(opt.gamma, "--gamma");
  const CdfExample ex = builtin_example_cdf(alpha, beta, gamma);
  const std::vector<std::string> zs{"z0", "z1", "z2"}, xy{"z1", "z2"};
  Json& v = o.verdicts;
  v["parameters"] = {{"alpha", to_string(alpha)}, {"beta", to_string(beta)}, {"gamma", to_string(gamma)}};
  v["affine_form"] = to_string(ex.affine, xy);
  v["omega"] = to_string(ex.foliation.omega(), zs);
  v["degree"] = ex.foliation.degree();
  v["infinity_line_invariant"] = infinity_line_invariant(ex.foliation);

  Json curves = Json::object();
  std::size_t count = 0;
  Poly f = Poly::constant(3, 1);
  for (const auto& c : ex.curves) {
    const bool inv = is_invariant(ex.foliation, c.poly);
    curves[c.name] = inv;
    if (inv) {
      ++count;
      f *= c.poly;
    }
    detail::stage(o, "invariance:" + c.name, inv, "");
  }
  v["curves"] = curves;
  v["invariant_curve_count"] = count;
  v["invariant_product_degree"] = total_degree(f);

  const GermFoliation origin = GermFoliation::make(affine_chart(ex.foliation, 0));
  if (is_singular_at(origin, origin.basepoint())) {
    const bool fl = is_first_level_dicritical(origin);
    v["origin_first_level_dicritical"] = fl;
    detail::stage(o, "first-level-dicritical:(0,0)", fl, "");
  } else {
    v["origin_first_level_dicritical"] = nullptr;
    detail::stage(o, "first-level-dicritical:(0,0)", std::nullopt, "origin is not singular");
  }

  try {
    const MeroOneForm w = log_form_projective(ex.foliation, f);
    v["log_form"] = to_string(w, zs);
    detail::stage(o, "log-form", true, "");
  } catch (const Error& e) {
    v["log_form"] = nullptr;
    detail::stage(o, "log-form", false, e.what());
  }

  if (f.is_constant()) {
    v["closed"] = nullptr;
    detail::stage(o, "extremal", std::nullopt, "no invariant curve");
    return o;
  }
  const LogPipelineReport r = analyze_extremal(ex.foliation, f, opt.max_depth);
  v["closed"] = report::opt_bool(r.closed);
  v["extremal"] = report::pipeline_verdicts(r);
  for (const auto& s : report::pipeline_stages(r)) o.stages.push_back(s);
  if (r.theorem_hypothesis == Hypothesis::Unknown) o.code = exit_unknown;
  return o;
}

inline Outcome demo_extremal_d1() {
  Outcome o;
  const ExtremalExample ex = builtin_example_extremal_d1();
  const std::vector<std::string> zs{"z0", "z1", "z2"};
  const Poly z0 = Poly::variable(3, 0);
  Json& v = o.verdicts;
  v["omega"] = to_string(ex.omega, zs);
  v["degree"] = ex.foliation.degree();
  v["h"] = detail::render(ex.h, zs);
  const bool inv = is_invariant(ex.foliation, ex.h);
  v["h_invariant"] = inv;
  detail::stage(o, "invariance", inv, "");

  const DivisionResult d = rham_saito_divide(ex.omega, ex.h);
  v["certified"] = d.certified;
  v["a"] = detail::render(d.a, zs);
  v["eta"] = to_string(d.eta, zs);
  const long delta = total_degree(ex.h);
  const bool eta_ok = d.eta == Rat(-delta) * ext_d(z0);
  v["eta_is_minus_2_dz0"] = eta_ok;
  detail::stage(o, "division", d.certified && d.a == z0 && eta_ok, "a = z0, eta = -2 dz0");

  const Poly euler = Poly::constant(3, Rat(delta)) * d.a + contract_radial(d.eta);
  v["euler_residual"] = detail::render(euler, zs);
  detail::stage(o, "euler", euler.is_zero(), "(deg h) a + i_R eta");

  const OneForm num = d.a * ext_d(ex.h) - Rat(delta) * (ex.h * ext_d(d.a));
  const TwoForm wedge_res = wedge(ex.omega, num);
  v["wedge_residual"] = to_string(wedge_res, zs);
  detail::stage(o, "wedge", wedge_res.is_zero(), "omega ^ (a dh - 2 h da)");

  v["first_integral"] = "(" + detail::render(ex.h, zs) + ")/(" + detail::render(d.a, zs) + ")^" + std::to_string(delta);
  return o;
}

// ---------------------------------------------------------------------------
// Driver

inline std::string render_text(const Json& rep) {
  std::ostringstream s;
  s << "command: " << rep["command"].get<std::string>() << "\n";
  for (const auto& [key, value] : rep["verdicts"].items())
    s << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  for (const auto& st : rep["stages"]) {
    const char* mark = st["ok"].is_null() ? "?" : st["ok"].get<bool>() ? "ok" : "FAIL";
    s << "[" << mark << "] " << st["label"].get<std::string>();
    if (!st["detail"].get<std::string>().empty()) s << ": " << st["detail"].get<std::string>();
    s << "\n";
  }
  return s.str();
}

inline unsigned env_max_depth() {
  const char* env = std::getenv(max_depth_env);
  if (!env) return default_max_depth;
  const std::string s(env);
  if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InputFailure(ErrorKind::InputError, max_depth_env, "expected a nonnegative integer, got '" + s + "'");
  return static_cast<unsigned>(std::stoul(s));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure(ErrorKind::InputError, "--input", "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Outcome dispatch(const Options& opt) {
  if (opt.command == "demo radial") return demo_radial(opt);
  if (opt.command == "demo cdf") return demo_cdf(opt);
  if (opt.command == "demo extremal-d1") return demo_extremal_d1();
  if (opt.input.empty()) throw InputFailure(ErrorKind::InputError, "--input", "this command needs --input <file>");
  const InputDoc doc = parse_input(read_file(opt.input));
  if (opt.command == "check") return cmd_check(doc);
  if (opt.command == "invariant") return cmd_invariant(doc);
  if (opt.command == "blowup") return cmd_blowup(doc);
  if (opt.command == "dicritical") return cmd_dicritical(doc, opt);
  if (opt.command == "reduce") return cmd_reduce(doc, opt);
  if (opt.command == "logform") return cmd_logform(doc);
  if (opt.command == "closed") return cmd_closed(doc);
  if (opt.command == "extremal") return cmd_extremal(doc, opt);
  if (opt.command == "divide") return cmd_divide(doc);
  if (opt.command == "first-integral") return cmd_first_integral(doc);
  throw InputFailure(ErrorKind::InputError, "", "unknown command '" + opt.command + "'");
}

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  std::optional<unsigned> depth_flag;
  CLI::App app{"Exact computations with singular holomorphic foliations", "folab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", opt.input, "JSON input document");
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-depth", depth_flag, "Blow-up depth guard (default 12, or $" + std::string(max_depth_env) + ")");

  std::vector<std::pair<CLI::App*, std::string>> subs;
  for (const char* name : {"check", "invariant", "blowup", "dicritical", "reduce", "logform", "closed", "extremal", "divide",
                           "first-integral"})
    subs.emplace_back(app.add_subcommand(name), name);
  subs[3].first->add_flag("--full-tree", opt.full_tree, "Blow up past the first dicritical component");
  CLI::App* demo = app.add_subcommand("demo", "Built-in examples");
  demo->require_subcommand(1);
  subs.emplace_back(demo->add_subcommand("radial"), "demo radial");
  CLI::App* cdf = demo->add_subcommand("cdf");
  cdf->add_option("--alpha", opt.alpha);
  cdf->add_option("--beta", opt.beta);
  cdf->add_option("--gamma", opt.gamma);
  subs.emplace_back(cdf, "demo cdf");
  subs.emplace_back(demo->add_subcommand("extremal-d1"), "demo extremal-d1");

  auto fail = [&](const std::string& command, const Json& e) {
    Json doc{{"command", command}, {"errors", Json::array({e})}};
    err << doc.dump(2) << "\n";
    return static_cast<int>(exit_error);
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    return fail("", {{"kind", "InputError"}, {"message", e.what()}});
  }
  for (const auto& [sub, name] : subs)
    if (sub->parsed()) opt.command = name;

  try {
    opt.max_depth = depth_flag ? *depth_flag : env_max_depth();
    Outcome o = dispatch(opt);
    Json rep{{"command", opt.command}, {"verdicts", o.verdicts}, {"stages", o.stages}, {"errors", Json::array()}};
    out << (opt.format == "text" ? render_text(rep) : rep.dump(2) + "\n");
    return o.code;
  } catch (const std::exception& e) {
    return fail(opt.command, error_json(e));
  }
}

}  // namespace folab::cli
