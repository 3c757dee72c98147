#pragma once

// Logarithmic-form pipelines: the germ-level verifiers (Omega = omega/f before
// and after blow-ups), the extremal-degree analysis on P^2, de Rham-Saito
// division and rational first integrals, plus the built-in examples.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folab/blowup.hpp"
#include "folab/linsolve.hpp"

namespace folab {

// ---------------------------------------------------------------------------
// Germ-level checks

namespace detail {

inline void require_reduced_invariant(const OneForm& w, const Poly& f) {
  if (f.is_constant()) throw Error(ErrorKind::ConstantCurve, "curve equation is constant");
  if (!is_squarefree(f)) throw Error(ErrorKind::NotSquarefree, "curve equation " + to_string(f) + " is not reduced");
  if (!is_invariant_form(w, f)) throw Error(ErrorKind::NotInvariant, "curve " + to_string(f) + " is not invariant");
}

inline void require_non_dicritical(const DicriticityVerdict& v) {
  if (v.verdict == Dicriticity::Dicritical)
    throw Error(ErrorKind::DicriticalInput, "germ is dicritical (witness node " + std::to_string(*v.witness) + ")");
  if (v.verdict == Dicriticity::Unknown)
    throw Error(ErrorKind::UnknownDicriticity, "dicriticity could not be decided: " + v.reason);
}

inline unsigned order_at(const Poly& p, const Point2& at) {
  auto o = order(translate(p, at));
  return o ? static_cast<unsigned>(*o) : std::numeric_limits<unsigned>::max();
}

}  // namespace detail

/// omega/f is logarithmic for every reduced invariant f.
inline bool verify_prop1(const GermFoliation& g, const Poly& f) {
  detail::require_reduced_invariant(g.omega(), f);
  return mero_is_logarithmic(mero_make(g.omega(), f));
}

struct ChartLog {
  int chart = 0;
  bool logarithmic = false;
  unsigned divisor_pole_order = 0;   ///< pole order of the pulled-back form along the exceptional divisor
  unsigned divisor_dpole_order = 0;  ///< same for its exterior derivative
  std::string form;                  ///< rendered pulled-back form
};

struct Prop2Report {
  unsigned nu_f = 0;
  unsigned nu_omega = 0;
  bool inequality_ok = false;
  std::array<ChartLog, 2> charts;
};

/// Pulls omega/f back along one blow-up of the basepoint; no hypotheses checked.
inline Prop2Report prop2_measure(const GermFoliation& g, const Poly& f) {
  Prop2Report rep;
  rep.nu_f = detail::order_at(f, g.basepoint());
  rep.nu_omega = static_cast<unsigned>(g.nu().value_or(0));
  rep.inequality_ok = rep.nu_f <= rep.nu_omega + 1;
  for (int chart : {1, 2}) {
    const BlowupChart bc{chart, g.basepoint()};
    const auto map = bc.full_map();
    MeroOneForm w = mero_make(pullback(std::span<const Poly>(map), g.omega()), substitute(f, std::span<const Poly>(map)));
    const PoleReport pr = pole_orders(w, Poly::variable(2, bc.divisor_var()));
    rep.charts[chart - 1] = {chart, mero_is_logarithmic(w), pr.order_form, pr.order_dform, to_string(w, bc.var_names())};
  }
  return rep;
}

inline Prop2Report verify_prop2(const GermFoliation& g, const Poly& f, unsigned max_depth = 12) {
  detail::require_reduced_invariant(g.omega(), f);
  detail::require_non_dicritical(dicriticity(g, max_depth));
  return prop2_measure(g, f);
}

struct NodeLog {
  std::size_t node = 0;
  int chart = 0;  ///< 0 for the original coordinates at the root
  bool logarithmic = false;
  unsigned divisor_pole_order = 0;
};

struct Prop3Report {
  ReductionTree tree;
  std::vector<NodeLog> entries;
  bool all_logarithmic = true;
  unsigned nu_f = 0;
  unsigned nu_omega = 0;
  bool inequality_ok = false;
};

/// Checks omega/f (in root coordinates) pulled back to both charts of every
/// blown-up node of the tree.
inline std::vector<NodeLog> log_along_tree(const ReductionTree& tree, const OneForm& omega, const Poly& f) {
  std::vector<NodeLog> out;
  out.push_back({0, 0, mero_is_logarithmic(mero_make(omega, f)), 0});
  for (const auto& n : tree.nodes) {
    if (n.verdict != NodeVerdict::BlownUp) continue;
    for (const auto& st : n.transforms) {
      const auto chart_map = st.chart.full_map();
      std::vector<Poly> map{substitute(n.to_root[0], std::span<const Poly>(chart_map)),
                            substitute(n.to_root[1], std::span<const Poly>(chart_map))};
      MeroOneForm w = mero_make(pullback(std::span<const Poly>(map), omega), substitute(f, std::span<const Poly>(map)));
      const unsigned pole = pole_orders(w, Poly::variable(2, st.chart.divisor_var())).order_form;
      out.push_back({n.id, st.chart.chart_id, mero_is_logarithmic(w), pole});
    }
  }
  return out;
}

inline Prop3Report prop3_measure(const GermFoliation& g, const Poly& f, unsigned max_depth = 12) {
  Prop3Report rep;
  rep.tree = reduce_singularities(g, ReductionOptions{max_depth, false});
  rep.entries = log_along_tree(rep.tree, g.omega(), f);
  rep.all_logarithmic = std::all_of(rep.entries.begin(), rep.entries.end(), [](const NodeLog& e) { return e.logarithmic; });
  rep.nu_f = detail::order_at(f, g.basepoint());
  rep.nu_omega = static_cast<unsigned>(g.nu().value_or(0));
  rep.inequality_ok = rep.nu_f <= rep.nu_omega + 1;
  return rep;
}

inline Prop3Report verify_prop3(const GermFoliation& g, const Poly& f, unsigned max_depth = 12) {
  detail::require_reduced_invariant(g.omega(), f);
  detail::require_non_dicritical(dicriticity(g, max_depth));
  Prop3Report rep = prop3_measure(g, f, max_depth);
  if (rep.tree.status != ReductionStatus::Complete)
    throw Error(ErrorKind::ReductionIncomplete, "reduction ended with status " + std::string(to_string(rep.tree.status)));
  return rep;
}

// ---------------------------------------------------------------------------
// Projective logarithmic forms

inline MeroOneForm log_form_projective(const ProjFoliation& F, const Poly& f) {
  if (f.nvars() != 3) throw Error(ErrorKind::VariableCountMismatch, "projective curves live in z0, z1, z2");
  if (!is_homogeneous(f) || f.is_zero()) throw Error(ErrorKind::NotHomogeneous, "curve equation must be homogeneous");
  if (total_degree(f) != static_cast<long>(F.degree()) + 2)
    throw Error(ErrorKind::DegreeMismatch, "deg f = " + std::to_string(total_degree(f)) + " but the foliation has degree " +
                                               std::to_string(F.degree()) + ", so deg f must be " + std::to_string(F.degree() + 2));
  if (!is_squarefree(f)) throw Error(ErrorKind::NotReduced, "curve equation " + to_string(f) + " is not reduced");
  if (!is_invariant(F, f)) throw Error(ErrorKind::NotInvariant, "curve " + to_string(f) + " is not invariant");
  return mero_make(F.omega(), f);
}

enum class Hypothesis { Satisfied, Violated, Unknown };

inline std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::Satisfied: return "satisfied";
    case Hypothesis::Violated: return "violated";
    case Hypothesis::Unknown: return "unknown";
  }
  return "?";
}

struct Stage {
  std::string label;
  std::optional<bool> ok;  ///< nullopt: undecided
  std::string detail;
  std::optional<std::string> point;
};

struct OnCurvePoint {
  Point3 point;
  std::size_t chart = 0;  ///< affine chart z_chart = 1 used for the local analysis
  Point2 affine;
  DicriticityVerdict dicriticity;
};

struct LogPipelineReport {
  bool degree_extremal = false;
  bool invariance_ok = false;
  bool squarefree_ok = false;
  std::array<SingularPointReport, 3> singular_points_checked;
  bool singular_search_complete = true;
  std::vector<OnCurvePoint> points;
  std::vector<Stage> stages;
  std::optional<bool> closed;
  std::array<std::optional<bool>, 3> closed_by_chart;
  Hypothesis theorem_hypothesis = Hypothesis::Unknown;
  std::vector<std::string> failed_hypotheses;
  bool consistent = true;  ///< false only if the hypothesis holds and the form is not closed
};

namespace detail {

inline Point3 chart_to_projective(std::size_t chart, const Point2& p) {
  Point3 out;
  for (std::size_t j = 0, k = 0; j < 3; ++j) out[j] = j == chart ? Rat(1) : p[k++];
  return out;
}

}  // namespace detail

/// The extremal-degree pipeline for F and a curve f of degree d + 2. Every
/// outcome is recorded in the report; nothing is thrown for failed checks.
inline LogPipelineReport analyze_extremal(const ProjFoliation& F, const Poly& f, unsigned max_depth = 12) {
  if (f.nvars() != 3) throw Error(ErrorKind::VariableCountMismatch, "projective curves live in z0, z1, z2");
  if (f.is_zero() || !is_homogeneous(f)) throw Error(ErrorKind::NotHomogeneous, "curve equation must be homogeneous");
  if (f.is_constant()) throw Error(ErrorKind::ConstantCurve, "curve equation is constant");

  LogPipelineReport rep;
  const long want = static_cast<long>(F.degree()) + 2;
  rep.degree_extremal = total_degree(f) == want;
  rep.stages.push_back({"degree", rep.degree_extremal,
                        "deg f = " + std::to_string(total_degree(f)) + ", d + 2 = " + std::to_string(want), std::nullopt});
  rep.invariance_ok = is_invariant(F, f);
  rep.stages.push_back({"invariance", rep.invariance_ok, rep.invariance_ok ? "f divides omega^df" : "f does not divide omega^df", std::nullopt});
  rep.squarefree_ok = is_squarefree(f);
  rep.stages.push_back({"squarefree", rep.squarefree_ok, "", std::nullopt});

  // Rational singular points of F on {f = 0}: chart z0 = 1, then the line z0 = 0
  // inside z1 = 1, then the single remaining point (0:0:1).
  std::vector<std::pair<std::size_t, Point2>> found;
  for (std::size_t chart = 0; chart < 3; ++chart) {
    const OneForm w = affine_chart(F, chart);
    const Poly fc = dehomogenize(f, chart);
    SingularPointReport sp;
    sp.eliminants = {UniPoly::constant(1), UniPoly::constant(1)};
    if (chart == 2) {
      const Point2 origin{Rat(0), Rat(0)};
      if (is_singular_at(w, origin) && evaluate(fc, origin) == 0) sp.rational_points.push_back(origin);
    } else if (!fc.is_constant()) {
      std::vector<Poly> polys{w[0], w[1], fc};
      if (chart == 1) polys.push_back(Poly::variable(2, 0));
      sp = common_rational_zeros(polys);
    }
    if (!sp.complete) rep.singular_search_complete = false;
    for (const auto& p : sp.rational_points) found.emplace_back(chart, p);
    rep.singular_points_checked[chart] = std::move(sp);
  }
  rep.stages.push_back({"singular-points", rep.singular_search_complete,
                        std::to_string(found.size()) + " rational point(s) on the curve" +
                            (rep.singular_search_complete ? "" : "; some candidates have irrational coordinates"),
                        std::nullopt});

  bool any_unknown = !rep.singular_search_complete;
  for (const auto& [chart, p] : found) {
    const OneForm w = affine_chart(F, chart);
    GermFoliation germ(w, p, trusted);
    OnCurvePoint pt{detail::chart_to_projective(chart, p), chart, p, dicriticity(germ, max_depth)};
    const std::string label = to_string(pt.point);
    const Dicriticity v = pt.dicriticity.verdict;
    std::optional<bool> ok;
    if (v != Dicriticity::Unknown) ok = v == Dicriticity::NonDicritical;
    std::string detail(to_string(v));
    if (v == Dicriticity::Dicritical) detail += " (witness node " + std::to_string(*pt.dicriticity.witness) + ")";
    if (v == Dicriticity::Unknown) detail += " (" + pt.dicriticity.reason + ")";
    rep.stages.push_back({"dicriticity:" + label, ok, detail, label});
    if (v == Dicriticity::Dicritical) {
      rep.failed_hypotheses.push_back("dicritical:" + label);
    }
    if (v == Dicriticity::Unknown) any_unknown = true;

    // Logarithmicity of the raw chart restriction of omega/f along the tree.
    if (pt.dicriticity.tree.status == ReductionStatus::Complete) {
      const OneForm raw = dehomogenize(F.omega(), chart);
      for (const auto& e : log_along_tree(pt.dicriticity.tree, raw, dehomogenize(f, chart))) {
        std::string d = e.chart == 0 ? "affine chart" : "pole order " + std::to_string(e.divisor_pole_order) + " along the divisor";
        rep.stages.push_back({"log:chart" + std::to_string(e.chart) + ":node" + std::to_string(e.node), e.logarithmic, d, label});
      }
    }
    rep.points.push_back(std::move(pt));
  }

  if (!rep.degree_extremal) rep.failed_hypotheses.insert(rep.failed_hypotheses.begin(), "degree");
  if (!rep.invariance_ok) rep.failed_hypotheses.insert(rep.failed_hypotheses.begin(), "invariance");
  if (!rep.squarefree_ok) rep.failed_hypotheses.insert(rep.failed_hypotheses.begin(), "squarefree");

  if (rep.degree_extremal && rep.invariance_ok && rep.squarefree_ok) {
    bool all = true;
    std::string detail;
    for (std::size_t i = 0; i < 3; ++i) {
      const bool c = mero_is_closed(mero_make(dehomogenize(F.omega(), i), dehomogenize(f, i)));
      rep.closed_by_chart[i] = c;
      all = all && c;
      detail += (i ? ", " : "") + std::string("chart") + std::to_string(i) + (c ? "=closed" : "=not closed");
    }
    rep.closed = all;
    rep.stages.push_back({"closed", all, detail, std::nullopt});
  } else {
    rep.stages.push_back({"closed", std::nullopt, "skipped: the curve is not an extremal reduced invariant curve", std::nullopt});
  }

  if (!rep.failed_hypotheses.empty())
    rep.theorem_hypothesis = Hypothesis::Violated;
  else if (any_unknown)
    rep.theorem_hypothesis = Hypothesis::Unknown;
  else
    rep.theorem_hypothesis = Hypothesis::Satisfied;
  rep.consistent = rep.theorem_hypothesis != Hypothesis::Satisfied || rep.closed == true;
  return rep;
}

// ---------------------------------------------------------------------------
// Division and first integrals

/// All exponent vectors of total degree d in n variables, in graded-lex order.
inline std::vector<Exponent> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Exponent> out;
  Exponent e(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  return out;
}

struct DivisionResult {
  Poly a;
  OneForm eta;
  bool certified = false;
};

/// Solves omega = a dh + h eta for homogeneous a and eta by coefficient matching.
inline DivisionResult rham_saito_divide(const OneForm& omega, const Poly& h) {
  const std::size_t n = omega.nvars();
  h.check_same(omega[0]);
  if (h.is_constant() || !is_homogeneous(h)) throw Error(ErrorKind::InvalidArgument, "h must be homogeneous and nonconstant");
  if (omega.is_zero()) throw Error(ErrorKind::ZeroForm, "cannot divide the zero form");
  long k = -1;
  for (const auto& c : omega.coeffs()) {
    if (c.is_zero()) continue;
    if (!is_homogeneous(c) || (k >= 0 && total_degree(c) != k))
      throw Error(ErrorKind::NotHomogeneous, "form coefficients must be homogeneous of one degree");
    k = total_degree(c);
  }
  const long m = total_degree(h);
  const long deg_a = k - m + 1, deg_eta = k - m;
  if (deg_a < 0)
    throw Error(ErrorKind::DegreeInfeasible, "a would need degree " + std::to_string(deg_a));

  const auto a_monos = monomials_of_degree(n, static_cast<unsigned>(deg_a));
  const auto eta_monos = deg_eta >= 0 ? monomials_of_degree(n, static_cast<unsigned>(deg_eta)) : std::vector<Exponent>{};
  const auto rows_monos = monomials_of_degree(n, static_cast<unsigned>(k));
  std::map<Exponent, std::size_t, GrlexGreater> row_of;
  for (std::size_t i = 0; i < rows_monos.size(); ++i) row_of[rows_monos[i]] = i;

  const std::size_t cols = a_monos.size() + n * eta_monos.size();
  const std::size_t rows = n * rows_monos.size();
  std::vector<std::vector<Rat>> mat(rows, std::vector<Rat>(cols, Rat(0)));
  std::vector<Rat> rhs(rows, Rat(0));
  const OneForm dh = ext_d(h);
  // a-part: component i gets m_a * dh_i
  for (std::size_t c = 0; c < a_monos.size(); ++c)
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [e, v] : dh[i].terms()) {
        Exponent s(n);
        for (std::size_t j = 0; j < n; ++j) s[j] = e[j] + a_monos[c][j];
        mat[i * rows_monos.size() + row_of.at(s)][c] += v;
      }
  // eta-part: component i gets h * m_eta
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < eta_monos.size(); ++c)
      for (const auto& [e, v] : h.terms()) {
        Exponent s(n);
        for (std::size_t j = 0; j < n; ++j) s[j] = e[j] + eta_monos[c][j];
        mat[i * rows_monos.size() + row_of.at(s)][a_monos.size() + i * eta_monos.size() + c] += v;
      }
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [e, v] : omega[i].terms()) rhs[i * rows_monos.size() + row_of.at(e)] = v;

  DivisionResult out{Poly(n), OneForm::zero(n), false};
  auto sol = solve_linear(std::move(mat), std::move(rhs));
  if (!sol) return out;
  for (std::size_t c = 0; c < a_monos.size(); ++c)
    if ((*sol)[c] != 0) out.a.add_term(a_monos[c], (*sol)[c]);
  std::vector<Poly> eta(n, Poly(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < eta_monos.size(); ++c) {
      const Rat& v = (*sol)[a_monos.size() + i * eta_monos.size() + c];
      if (v != 0) eta[i].add_term(eta_monos[c], v);
    }
  out.eta = OneForm(std::move(eta));
  if (out.a * dh + h * out.eta != omega) throw std::logic_error("division solution does not re-expand to omega");
  out.certified = true;
  return out;
}

struct FirstIntegral {
  Poly h;
  Poly a;
  unsigned delta = 0;
  OneForm eta;
};

/// For an invariant h of degree d + 1: omega = a dh + h eta with eta = -delta da,
/// so h / a^delta is a rational first integral.
inline FirstIntegral first_integral_extremal(const ProjFoliation& F, const Poly& h) {
  if (h.nvars() != 3 || h.is_zero() || !is_homogeneous(h) || h.is_constant())
    throw Error(ErrorKind::NotHomogeneous, "h must be a nonconstant homogeneous polynomial in z0, z1, z2");
  const long delta = total_degree(h);
  if (delta != static_cast<long>(F.degree()) + 1)
    throw Error(ErrorKind::NotExtremalDegree, "deg h = " + std::to_string(delta) + " but d + 1 = " + std::to_string(F.degree() + 1));
  if (!is_invariant(F, h)) throw Error(ErrorKind::NotInvariant, "h is not invariant");
  DivisionResult div = rham_saito_divide(F.omega(), h);
  if (!div.certified) throw Error(ErrorKind::DivisionFailed, "omega is not of the form a dh + h eta");
  const Poly euler = Poly::constant(3, Rat(delta)) * div.a + contract_radial(div.eta);
  if (!euler.is_zero())
    throw Error(ErrorKind::EulerConsequenceViolated, "(deg h) a + i_R eta = " + to_string(euler));
  if (div.eta != Rat(-delta) * ext_d(div.a))
    throw Error(ErrorKind::EulerConsequenceViolated, "eta differs from -(deg h) da");
  const OneForm num = div.a * ext_d(h) - Rat(delta) * (h * ext_d(div.a));
  if (!wedge(F.omega(), num).is_zero())
    throw Error(ErrorKind::EulerConsequenceViolated, "omega ^ (a dh - delta h da) does not vanish");
  return {h, div.a, static_cast<unsigned>(delta), div.eta};
}

// ---------------------------------------------------------------------------
// Built-in examples

struct NamedCurve {
  std::string name;
  Poly poly;
};

struct CdfExample {
  OneForm affine;
  ProjFoliation foliation;
  std::vector<NamedCurve> curves;
};

/// z1 dz2 - z2 dz1 + z1 z2 (z2 - z1)(alpha dz1/z1 + beta dz2/z2 + gamma d(z2 - z1)/(z2 - z1)),
/// in the affine chart z0 = 1.
inline CdfExample builtin_example_cdf(const Rat& alpha, const Rat& beta, const Rat& gamma) {
  const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  const auto k = [](const Rat& r) { return Poly::constant(2, r); };
  Poly a = -y + k(alpha) * y * (y - x) - k(gamma) * x * y;
  Poly b = x + k(beta) * x * (y - x) + k(gamma) * x * y;
  OneForm affine({a, b});
  const Poly z0 = Poly::variable(3, 0), z1 = Poly::variable(3, 1), z2 = Poly::variable(3, 2);
  return {affine, homogenize_affine(affine), {{"z1", z1}, {"z2", z2}, {"z2-z1", z2 - z1}, {"z0", z0}}};
}

struct RadialExample {
  GermFoliation germ;
  Poly f;
};

/// x dy - y dx with the four lines x^4 + y^4 = 0.
inline RadialExample builtin_example_radial() {
  const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  return {GermFoliation::make(OneForm({-y, x})), pow(x, 4) + pow(y, 4)};
}

struct ExtremalExample {
  OneForm omega;  ///< as written, before the sign normalization of proj_new
  ProjFoliation foliation;
  Poly h;
};

/// Degree-1 foliation with the invariant conic z0 z1 + z2^2 and the invariant line z0.
inline ExtremalExample builtin_example_extremal_d1() {
  const Poly z0 = Poly::variable(3, 0), z1 = Poly::variable(3, 1), z2 = Poly::variable(3, 2);
  const Poly two = Poly::constant(3, Rat(2));
  OneForm omega({-(z0 * z1 + two * z2 * z2), z0 * z0, two * z0 * z2});
  return {omega, proj_new(omega), z0 * z1 + z2 * z2};
}

}  // namespace folab
