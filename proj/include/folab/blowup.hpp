#pragma once

// Point blow-ups of planar germs and the Seidenberg reduction driver.
//
// Chart 1 has coordinates (x, t) and maps to (c0 + x, c1 + t x); chart 2 has
// coordinates (s, y) and maps to (c0 + s y, c1 + y). The exceptional divisor
// is {x = 0} in chart 1 and {y = 0} in chart 2; chart 1 covers every point of
// it except t = infinity, which is the origin of chart 2.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folab/foliation.hpp"

namespace folab {

struct BlowupChart {
  int chart_id = 1;
  Point2 center{Rat(0), Rat(0)};

  /// The chart map without the translation to the center.
  std::array<Poly, 2> map() const {
    const Poly u = Poly::variable(2, 0), v = Poly::variable(2, 1);
    if (chart_id == 1) return {u, v * u};
    return {u * v, v};
  }

  std::array<Poly, 2> full_map() const {
    auto m = map();
    m[0] += Poly::constant(2, center[0]);
    m[1] += Poly::constant(2, center[1]);
    return m;
  }

  /// Index of the variable whose vanishing defines the exceptional divisor.
  std::size_t divisor_var() const { return chart_id == 1 ? 0 : 1; }

  std::vector<std::string> var_names() const {
    if (chart_id == 1) return {"x", "t"};
    return {"s", "y"};
  }
};

struct StrictTransform {
  BlowupChart chart;
  OneForm omega_tilde = OneForm::zero(2);
  unsigned divided_power = 0;
  bool exceptional_invariant = true;
};

/// Pulls the germ back through one chart and divides by the largest power of
/// the exceptional equation.
inline StrictTransform blowup_once(const GermFoliation& g, int chart_id) {
  if (chart_id != 1 && chart_id != 2) throw Error(ErrorKind::InvalidArgument, "chart must be 1 or 2");
  StrictTransform st;
  st.chart = BlowupChart{chart_id, g.basepoint()};
  const auto map = st.chart.full_map();
  OneForm pulled = pullback(std::span<const Poly>(map), g.omega());
  const std::size_t dv = st.chart.divisor_var();
  std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
  for (const auto& c : pulled.coeffs())
    if (!c.is_zero()) m = std::min(m, min_exponent_in(c, dv));
  if (m == std::numeric_limits<std::uint32_t>::max()) m = 0;
  st.divided_power = m;
  st.omega_tilde = OneForm({shift_down(pulled[0], dv, m), shift_down(pulled[1], dv, m)});
  // {x = 0} is invariant for P dx + Q dt iff x | Q (and symmetrically in chart 2).
  const Poly& transverse = st.omega_tilde[1 - dv];
  st.exceptional_invariant = transverse.is_zero() || min_exponent_in(transverse, dv) >= 1;
  return st;
}

inline void require_singular(const GermFoliation& g) {
  if (!is_singular_at(g, g.basepoint()))
    throw Error(ErrorKind::NonSingularPoint, "basepoint " + to_string(g.basepoint()) + " is not singular");
}

inline bool is_first_level_dicritical(const GermFoliation& g) {
  require_singular(g);
  const bool inv1 = blowup_once(g, 1).exceptional_invariant;
  const bool inv2 = blowup_once(g, 2).exceptional_invariant;
  if (inv1 != inv2) throw std::logic_error("blow-up charts disagree on invariance of the exceptional divisor");
  return !inv1;
}

// ---------------------------------------------------------------------------
// Reduction tree

enum class NodeVerdict { Regular, Reduced, BlownUp, DepthExceeded, Skipped };
enum class ReductionStatus { Complete, DepthExceeded, NonRationalCenter };

inline std::string_view to_string(NodeVerdict v) {
  switch (v) {
    case NodeVerdict::Regular: return "regular";
    case NodeVerdict::Reduced: return "reduced";
    case NodeVerdict::BlownUp: return "blown-up";
    case NodeVerdict::DepthExceeded: return "depth-exceeded";
    case NodeVerdict::Skipped: return "skipped";
  }
  return "?";
}

inline std::string_view to_string(ReductionStatus s) {
  switch (s) {
    case ReductionStatus::Complete: return "Complete";
    case ReductionStatus::DepthExceeded: return "DepthExceeded";
    case ReductionStatus::NonRationalCenter: return "NonRationalCenter";
  }
  return "?";
}

struct ReductionNode {
  explicit ReductionNode(GermFoliation g) : germ(std::move(g)) {}

  std::size_t id = 0;
  std::optional<std::size_t> parent;
  int parent_chart = 0;  ///< chart of the parent blow-up containing this center; 0 at the root
  unsigned depth = 0;
  GermFoliation germ;    ///< form in the parent's chart coordinates, based at the center
  std::array<Poly, 2> to_root{Poly(2), Poly(2)};  ///< coordinates of this node -> coordinates of the root germ
  NodeVerdict verdict = NodeVerdict::Regular;
  std::vector<StrictTransform> transforms;  ///< charts 1 and 2 when blown up
  bool exceptional_invariant = true;
  std::optional<UniPoly> unresolved_eliminant;  ///< set when some centers on the divisor are irrational
  std::vector<std::size_t> children;
};

struct ReductionTree {
  std::vector<ReductionNode> nodes;
  ReductionStatus status = ReductionStatus::Complete;
  std::optional<UniPoly> nonrational_eliminant;
  bool truncated = false;  ///< stopped early at a dicritical component

  const ReductionNode& root() const { return nodes.front(); }

  bool all_exceptional_invariant() const {
    return std::all_of(nodes.begin(), nodes.end(), [](const ReductionNode& n) {
      return n.verdict != NodeVerdict::BlownUp || n.exceptional_invariant;
    });
  }

  std::optional<std::size_t> first_dicritical_node() const {
    for (const auto& n : nodes)
      if (n.verdict == NodeVerdict::BlownUp && !n.exceptional_invariant) return n.id;
    return std::nullopt;
  }

  std::size_t max_depth() const {
    std::size_t d = 0;
    for (const auto& n : nodes) d = std::max<std::size_t>(d, n.depth);
    return d;
  }
};

struct ReductionOptions {
  unsigned max_depth = 12;
  bool stop_at_dicritical = false;
};

namespace detail {

inline bool point_less(const Point2& a, const Point2& b) {
  if (a[0] != b[0]) return a[0] < b[0];
  return a[1] < b[1];
}

class Reducer {
 public:
  Reducer(ReductionTree& tree, ReductionOptions opts) : tree_(tree), opts_(opts) {}

  void run(const GermFoliation& root) {
    ReductionNode n(root);
    n.to_root = {Poly::variable(2, 0), Poly::variable(2, 1)};
    tree_.nodes.push_back(std::move(n));
    visit(0);
  }

 private:
  void mark(ReductionStatus s, const std::optional<UniPoly>& elim = std::nullopt) {
    if (tree_.status != ReductionStatus::Complete) return;
    tree_.status = s;
    if (elim) tree_.nonrational_eliminant = elim;
  }

  void visit(std::size_t id) {
    if (stop_) {
      tree_.nodes[id].verdict = NodeVerdict::Skipped;
      return;
    }
    const GermFoliation germ = tree_.nodes[id].germ;
    if (!is_singular_at(germ, germ.basepoint())) {
      tree_.nodes[id].verdict = NodeVerdict::Regular;
      return;
    }
    if (is_reduced_singularity(germ)) {
      tree_.nodes[id].verdict = NodeVerdict::Reduced;
      return;
    }
    if (tree_.nodes[id].depth >= opts_.max_depth) {
      tree_.nodes[id].verdict = NodeVerdict::DepthExceeded;
      mark(ReductionStatus::DepthExceeded);
      return;
    }
    StrictTransform c1 = blowup_once(germ, 1);
    StrictTransform c2 = blowup_once(germ, 2);
    if (c1.exceptional_invariant != c2.exceptional_invariant)
      throw std::logic_error("blow-up charts disagree on invariance of the exceptional divisor");

    struct Center {
      int chart;
      Point2 point;
    };
    std::vector<Center> centers;
    SingularPointReport on_divisor = singular_points_on_axis(c1.omega_tilde, 0);
    std::vector<Point2> pts = on_divisor.rational_points;
    std::sort(pts.begin(), pts.end(), point_less);
    for (const auto& p : pts) centers.push_back({1, p});
    const Point2 origin{Rat(0), Rat(0)};
    if (is_singular_at(c2.omega_tilde, origin)) centers.push_back({2, origin});

    {
      ReductionNode& node = tree_.nodes[id];
      node.verdict = NodeVerdict::BlownUp;
      node.exceptional_invariant = c1.exceptional_invariant;
      if (!on_divisor.complete) {
        node.unresolved_eliminant = on_divisor.eliminants[1];
        mark(ReductionStatus::NonRationalCenter, on_divisor.eliminants[1]);
      }
      node.transforms = {c1, c2};
    }
    if (!c1.exceptional_invariant && opts_.stop_at_dicritical) {
      stop_ = true;
      tree_.truncated = true;
    }

    for (const auto& c : centers) {
      const StrictTransform& st = c.chart == 1 ? c1 : c2;
      const auto fm = st.chart.full_map();
      ReductionNode child(GermFoliation(st.omega_tilde, c.point, trusted));
      child.id = tree_.nodes.size();
      child.parent = id;
      child.parent_chart = c.chart;
      child.depth = tree_.nodes[id].depth + 1;
      const auto& up = tree_.nodes[id].to_root;
      child.to_root = {substitute(up[0], std::span<const Poly>(fm)), substitute(up[1], std::span<const Poly>(fm))};
      tree_.nodes[id].children.push_back(child.id);
      tree_.nodes.push_back(std::move(child));
    }
    const auto kids = tree_.nodes[id].children;
    for (auto k : kids) visit(k);
  }

  ReductionTree& tree_;
  ReductionOptions opts_;
  bool stop_ = false;
};

}  // namespace detail

/// Blows up non-reduced singular points until every leaf is reduced (or a
/// guard trips). Nodes are numbered in depth-first order; siblings are sorted
/// by their center, chart 1 first.
inline ReductionTree reduce_singularities(const GermFoliation& g, ReductionOptions opts = {}) {
  if (opts.max_depth < 1) throw Error(ErrorKind::InvalidArgument, "max_depth must be at least 1");
  ReductionTree tree;
  detail::Reducer(tree, opts).run(g);
  return tree;
}

inline ReductionTree reduce_singularities(const GermFoliation& g, unsigned max_depth) {
  return reduce_singularities(g, ReductionOptions{max_depth, false});
}

enum class Dicriticity { NonDicritical, Dicritical, Unknown };

inline std::string_view to_string(Dicriticity d) {
  switch (d) {
    case Dicriticity::NonDicritical: return "NonDicritical";
    case Dicriticity::Dicritical: return "Dicritical";
    case Dicriticity::Unknown: return "Unknown";
  }
  return "?";
}

struct DicriticityVerdict {
  Dicriticity verdict = Dicriticity::Unknown;
  std::optional<std::size_t> witness;  ///< node whose exceptional component is not invariant
  std::string reason;                  ///< set for Unknown
  ReductionTree tree;
};

inline DicriticityVerdict dicriticity(const GermFoliation& g, unsigned max_depth = 12, bool full_tree = false) {
  require_singular(g);
  DicriticityVerdict out;
  out.tree = reduce_singularities(g, ReductionOptions{max_depth, !full_tree});
  if (auto w = out.tree.first_dicritical_node()) {
    out.verdict = Dicriticity::Dicritical;
    out.witness = w;
  } else if (out.tree.status == ReductionStatus::Complete) {
    out.verdict = Dicriticity::NonDicritical;
  } else {
    out.verdict = Dicriticity::Unknown;
    out.reason = std::string(to_string(out.tree.status));
  }
  return out;
}

}  // namespace folab
