#pragma once

// Foliations of the projective plane (homogeneous 1-forms in z0, z1, z2) and
// germs of foliations of the affine plane (A dx + B dy at a rational point).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "folab/forms.hpp"
#include "folab/unipoly.hpp"

namespace folab {

using Point2 = std::array<Rat, 2>;
using Point3 = std::array<Rat, 3>;

/// Marks constructors that skip validation because the caller already guarantees the invariants.
struct trusted_t {
  explicit trusted_t() = default;
};
inline constexpr trusted_t trusted{};

class ProjFoliation {
 public:
  ProjFoliation(OneForm omega, unsigned degree, trusted_t) : omega_(std::move(omega)), degree_(degree) {}

  const OneForm& omega() const { return omega_; }
  unsigned degree() const { return degree_; }

  friend bool operator==(const ProjFoliation&, const ProjFoliation&) = default;

 private:
  OneForm omega_;
  unsigned degree_;
};

class GermFoliation {
 public:
  GermFoliation(OneForm omega, Point2 basepoint, trusted_t)
      : omega_(std::move(omega)), basepoint_(std::move(basepoint)) {}

  /// Validates nvars = 2, omega != 0 and gcd(A, B) constant.
  static GermFoliation make(OneForm omega, Point2 basepoint = {Rat(0), Rat(0)}) {
    if (omega.nvars() != 2) throw Error(ErrorKind::VariableCountMismatch, "germ forms live in two variables");
    if (omega.is_zero()) throw Error(ErrorKind::ZeroForm, "germ form is zero");
    if (!gcd(omega[0], omega[1]).is_constant())
      throw Error(ErrorKind::CommonFactor, "A and B share a nonconstant factor");
    return GermFoliation(std::move(omega), std::move(basepoint), trusted);
  }

  const OneForm& omega() const { return omega_; }
  const Point2& basepoint() const { return basepoint_; }
  const Poly& a() const { return omega_[0]; }
  const Poly& b() const { return omega_[1]; }

  /// The form in coordinates centred at the basepoint.
  OneForm centered() const {
    return OneForm({translate(omega_[0], basepoint_), translate(omega_[1], basepoint_)});
  }

  /// Algebraic multiplicity at the basepoint.
  std::optional<std::uint64_t> nu() const {
    OneForm c = centered();
    auto oa = order(c[0]), ob = order(c[1]);
    if (!oa) return ob;
    if (!ob) return oa;
    return std::min(*oa, *ob);
  }

  friend bool operator==(const GermFoliation&, const GermFoliation&) = default;

 private:
  OneForm omega_;
  Point2 basepoint_;
};

// ---------------------------------------------------------------------------
// Projective foliations

/// Validates the homogeneous data and removes any scalar factor.
inline ProjFoliation proj_new(const Poly& a0, const Poly& a1, const Poly& a2) {
  for (const Poly* p : {&a0, &a1, &a2})
    if (p->nvars() != 3) throw Error(ErrorKind::VariableCountMismatch, "projective forms live in z0, z1, z2");
  OneForm w({a0, a1, a2});
  if (w.is_zero()) throw Error(ErrorKind::ZeroForm, "all three coefficients vanish");
  long deg = -1;
  for (const auto& c : w.coeffs()) {
    if (!is_homogeneous(c)) throw Error(ErrorKind::NotHomogeneous, "coefficient " + to_string(c) + " is not homogeneous");
    if (c.is_zero()) continue;
    if (deg >= 0 && total_degree(c) != deg)
      throw Error(ErrorKind::UnequalDegrees, "coefficients have different degrees");
    deg = total_degree(c);
  }
  if (!contract_radial(w).is_zero())
    throw Error(ErrorKind::EulerViolated, "sum z_i A_i = " + to_string(contract_radial(w)));
  if (!coefficient_gcd(w.coeffs()).is_constant())
    throw Error(ErrorKind::CommonFactor, "gcd(A0, A1, A2) = " + to_string(coefficient_gcd(w.coeffs())));
  // deg >= 1 here: constant coefficients cannot satisfy the Euler identity unless all vanish.
  return ProjFoliation(normalize_scale(w), static_cast<unsigned>(deg - 1), trusted);
}

inline ProjFoliation proj_new(const OneForm& w) {
  if (w.nvars() != 3) throw Error(ErrorKind::VariableCountMismatch, "projective forms live in z0, z1, z2");
  return proj_new(w[0], w[1], w[2]);
}

/// Affine A dx + B dy with x = z1/z0, y = z2/z0, cleared of z0 and of content.
inline ProjFoliation homogenize_affine(const OneForm& w) {
  if (w.nvars() != 2) throw Error(ErrorKind::VariableCountMismatch, "affine forms live in two variables");
  if (w.is_zero()) throw Error(ErrorKind::ZeroForm, "affine form is zero");
  const long k = std::max(total_degree(w[0]), total_degree(w[1]));
  auto homog = [k](const Poly& p) {
    Poly h(3);
    for (const auto& [e, c] : p.terms())
      h.add_term({static_cast<std::uint32_t>(k - static_cast<long>(e[0] + e[1])), e[0], e[1]}, c);
    return h;
  };
  const Poly z0 = Poly::variable(3, 0), z1 = Poly::variable(3, 1), z2 = Poly::variable(3, 2);
  const Poly ah = homog(w[0]), bh = homog(w[1]);
  OneForm theta({-(z1 * ah + z2 * bh), z0 * ah, z0 * bh});
  OneForm p = primitive_form(theta);
  return proj_new(p[0], p[1], p[2]);
}

/// Sets z_i = 1 and drops dz_i; the remaining variables keep their order.
inline OneForm dehomogenize(const OneForm& w, std::size_t i) {
  std::vector<Poly> c;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == i) continue;
    c.push_back(w[j]);
  }
  std::vector<Poly> images;
  for (std::size_t j = 0, k = 0; j < 3; ++j) images.push_back(j == i ? Poly::constant(2, 1) : Poly::variable(2, k++));
  for (auto& p : c) p = substitute(p, images);
  return OneForm(std::move(c));
}

inline Poly dehomogenize(const Poly& p, std::size_t i) {
  std::vector<Poly> images;
  for (std::size_t j = 0, k = 0; j < 3; ++j) images.push_back(j == i ? Poly::constant(2, 1) : Poly::variable(2, k++));
  return substitute(p, images);
}

/// Affine form in chart z_i = 1 with its content removed.
inline OneForm affine_chart(const ProjFoliation& f, std::size_t i) {
  if (i > 2) throw Error(ErrorKind::InvalidArgument, "chart index must be 0, 1 or 2");
  return primitive_form(dehomogenize(f.omega(), i));
}

// ---------------------------------------------------------------------------
// Invariance and singular points

inline bool is_invariant_form(const OneForm& w, const Poly& f) {
  if (f.is_constant()) throw Error(ErrorKind::ConstantCurve, "invariance of a constant");
  TwoForm t = wedge(w, ext_d(f));
  return std::all_of(t.coeffs().begin(), t.coeffs().end(), [&](const Poly& c) { return divides(f, c); });
}

inline bool is_invariant(const ProjFoliation& F, const Poly& f) {
  if (f.nvars() != 3) throw Error(ErrorKind::VariableCountMismatch, "projective curves live in z0, z1, z2");
  if (!is_homogeneous(f)) throw Error(ErrorKind::NotHomogeneous, "projective curve must be homogeneous");
  return is_invariant_form(F.omega(), f);
}

inline bool is_invariant(const GermFoliation& g, const Poly& f) { return is_invariant_form(g.omega(), f); }

inline bool infinity_line_invariant(const ProjFoliation& F) { return is_invariant(F, Poly::variable(3, 0)); }

inline bool is_singular_at(const ProjFoliation& F, const Point3& p) {
  if (p[0] == 0 && p[1] == 0 && p[2] == 0) throw Error(ErrorKind::InvalidPoint, "(0:0:0) is not a projective point");
  return std::all_of(F.omega().coeffs().begin(), F.omega().coeffs().end(),
                     [&](const Poly& c) { return evaluate(c, p) == 0; });
}

inline bool is_singular_at(const OneForm& w, const Point2& p) {
  if (w.nvars() != 2) throw Error(ErrorKind::InvalidPoint, "affine points need a form in two variables");
  return evaluate(w[0], p) == 0 && evaluate(w[1], p) == 0;
}

inline bool is_singular_at(const GermFoliation& g, const Point2& p) { return is_singular_at(g.omega(), p); }

struct SingularPointReport {
  std::vector<Point2> rational_points;  ///< sorted lexicographically
  std::array<UniPoly, 2> eliminants;    ///< residual eliminants in x and in y
  bool complete = true;
};

/// Rational common zeros of bivariate polynomials, via the gcd of pairwise
/// resultants in each direction. All rational zeros are always found;
/// complete is false when some zero may have an irrational coordinate.
inline SingularPointReport common_rational_zeros(const std::vector<Poly>& polys) {
  std::vector<Poly> ps;
  for (const auto& p : polys) {
    if (p.nvars() != 2) throw Error(ErrorKind::VariableCountMismatch, "common zeros need bivariate input");
    if (!p.is_zero()) ps.push_back(p);
  }
  if (ps.empty()) throw Error(ErrorKind::ZeroForm, "every polynomial vanishes identically");
  SingularPointReport rep;
  rep.eliminants = {UniPoly::constant(1), UniPoly::constant(1)};
  if (std::any_of(ps.begin(), ps.end(), [](const Poly& p) { return p.is_constant(); })) return rep;

  std::array<std::vector<Rat>, 2> coords;
  for (std::size_t keep = 0; keep < 2; ++keep) {
    const std::size_t elim = 1 - keep;
    Poly g(2);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!involves(ps[i], elim)) {
        g = gcd(g, ps[i]);
        continue;
      }
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (!involves(ps[j], elim)) continue;
        Poly r = resultant(ps[i], ps[j], elim);
        if (!r.is_zero()) g = gcd(g, r);
      }
    }
    if (g.is_zero())
      throw Error(ErrorKind::NonIsolatedSingularities, "common zero set contains a curve");
    RationalRoots rr = uni_rational_roots(UniPoly::from_poly(g, keep));
    coords[keep] = rr.roots;
    coords[keep].erase(std::unique(coords[keep].begin(), coords[keep].end()), coords[keep].end());
    rep.eliminants[keep] = rr.residual;
    if (!rr.residual.is_constant()) rep.complete = false;
  }
  for (const auto& x : coords[0])
    for (const auto& y : coords[1]) {
      Point2 pt{x, y};
      if (std::all_of(ps.begin(), ps.end(), [&](const Poly& p) { return evaluate(p, pt) == 0; }))
        rep.rational_points.push_back(pt);
    }
  return rep;
}

inline SingularPointReport singular_points(const OneForm& w) {
  if (w.nvars() != 2) throw Error(ErrorKind::VariableCountMismatch, "singular points need a planar form");
  if (w.is_zero()) throw Error(ErrorKind::ZeroForm, "singular points of the zero form");
  return common_rational_zeros(w.coeffs());
}

/// Singular points on the axis {x_axis = 0}: a univariate gcd in the other coordinate.
inline SingularPointReport singular_points_on_axis(const OneForm& w, std::size_t axis) {
  if (w.nvars() != 2 || axis > 1) throw Error(ErrorKind::InvalidArgument, "axis must be 0 or 1 of a planar form");
  if (w.is_zero()) throw Error(ErrorKind::ZeroForm, "singular points of the zero form");
  const std::size_t free_var = 1 - axis;
  Poly g(2);
  for (const auto& c : w.coeffs()) g = gcd(g, specialize(c, axis, Rat(0)));
  if (g.is_zero()) throw Error(ErrorKind::NonIsolatedSingularities, "the whole axis is singular");
  SingularPointReport rep;
  RationalRoots rr = uni_rational_roots(UniPoly::from_poly(g, free_var));
  rr.roots.erase(std::unique(rr.roots.begin(), rr.roots.end()), rr.roots.end());
  for (const auto& r : rr.roots) {
    Point2 p;
    p[axis] = 0;
    p[free_var] = r;
    rep.rational_points.push_back(p);
  }
  rep.eliminants[free_var] = rr.residual;
  rep.eliminants[axis] = UniPoly::constant(1);
  rep.complete = rr.residual.is_constant();
  return rep;
}

inline SingularPointReport singular_points(const GermFoliation& g) { return singular_points(g.omega()); }

// ---------------------------------------------------------------------------
// Linear part and the reduced-singularity criterion

/// Jacobian at the basepoint of the dual vector field (-B, A).
struct LinearPart {
  Rat m00, m01, m10, m11;

  Rat trace() const { return m00 + m11; }
  Rat det() const { return m00 * m11 - m01 * m10; }
  bool is_zero() const { return m00 == 0 && m01 == 0 && m10 == 0 && m11 == 0; }
};

inline LinearPart linear_part(const GermFoliation& g) {
  OneForm c = g.centered();
  const Exponent origin{0, 0}, ex{1, 0}, ey{0, 1};
  if (c[0].coeff(origin) != 0 || c[1].coeff(origin) != 0)
    throw Error(ErrorKind::NonSingularPoint, "basepoint is not a singular point");
  return {-c[1].coeff(ex), -c[1].coeff(ey), c[0].coeff(ex), c[0].coeff(ey)};
}

/// Seidenberg's criterion: some eigenvalue is nonzero and the eigenvalue
/// ratio is not a positive rational. With trace T and determinant D the
/// ratio r satisfies D r^2 + (2D - T^2) r + D = 0.
inline bool is_reduced_linear_part(const LinearPart& lp) {
  const Rat t = lp.trace();
  const Rat d = lp.det();
  if (d == 0) return t != 0;
  UniPoly q({d, Rat(2 * d - t * t), d});
  for (const auto& r : uni_rational_roots(q).roots)
    if (r > 0) return false;
  return true;
}

inline bool is_reduced_singularity(const GermFoliation& g) { return is_reduced_linear_part(linear_part(g)); }

inline std::string to_string(const Point2& p) { return "(" + to_string(p[0]) + "," + to_string(p[1]) + ")"; }

inline std::string to_string(const Point3& p) {
  return "(" + to_string(p[0]) + ":" + to_string(p[1]) + ":" + to_string(p[2]) + ")";
}

}  // namespace folab
