#pragma once

// Polynomial and meromorphic differential forms.
//
// A 1-form on n variables stores one coefficient per dz_i. A 2-form stores
// the coefficients of dz_i^dz_j for i < j in lexicographic pair order, so
// for n = 3 the slots are (0,1), (0,2), (1,2).

#include <string>
#include <utility>
#include <vector>

#include "folab/gcd.hpp"
#include "folab/poly.hpp"

namespace folab {

class OneForm {
 public:
  explicit OneForm(std::vector<Poly> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "1-form without coefficients");
    for (const auto& c : coeffs_) {
      if (c.nvars() != coeffs_.size())
        throw Error(ErrorKind::VariableCountMismatch, "1-form coefficient count must equal variable count");
    }
  }

  static OneForm zero(std::size_t n) { return OneForm(std::vector<Poly>(n, Poly(n))); }

  /// The basis form dz_i.
  static OneForm basis(std::size_t n, std::size_t i) {
    OneForm w = zero(n);
    w.coeffs_.at(i) = Poly::constant(n, 1);
    return w;
  }

  std::size_t nvars() const { return coeffs_.size(); }
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  const Poly& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  OneForm& operator+=(const OneForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  OneForm& operator-=(const OneForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator-(OneForm a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend OneForm operator*(const Poly& f, OneForm a) {
    for (auto& c : a.coeffs_) c = f * c;
    return a;
  }
  friend OneForm operator*(const Rat& s, OneForm a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }
  friend bool operator==(const OneForm&, const OneForm&) = default;

  void check_same(const OneForm& o) const {
    if (o.nvars() != nvars()) throw Error(ErrorKind::VariableCountMismatch, "forms on different spaces");
  }

 private:
  std::vector<Poly> coeffs_;
};

class TwoForm {
 public:
  explicit TwoForm(std::size_t n, std::vector<Poly> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "2-forms need at least two variables");
    if (coeffs_.size() != n * (n - 1) / 2)
      throw Error(ErrorKind::InvalidArgument, "wrong number of 2-form coefficients");
    for (const auto& c : coeffs_)
      if (c.nvars() != n) throw Error(ErrorKind::VariableCountMismatch, "2-form coefficient on wrong space");
  }

  static TwoForm zero(std::size_t n) { return TwoForm(n, std::vector<Poly>(n * (n - 1) / 2, Poly(n))); }

  /// Slot of dz_i^dz_j, i < j.
  static std::size_t slot(std::size_t n, std::size_t i, std::size_t j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t nvars() const { return n_; }
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  const Poly& at(std::size_t i, std::size_t j) const { return coeffs_[slot(n_, i, j)]; }
  Poly& at(std::size_t i, std::size_t j) { return coeffs_[slot(n_, i, j)]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  friend TwoForm operator+(TwoForm a, const TwoForm& b) {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_.at(i);
    return a;
  }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_.at(i);
    return a;
  }
  friend TwoForm operator-(TwoForm a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend TwoForm operator*(const Poly& f, TwoForm a) {
    for (auto& c : a.coeffs_) c = f * c;
    return a;
  }
  friend bool operator==(const TwoForm&, const TwoForm&) = default;

 private:
  std::size_t n_;
  std::vector<Poly> coeffs_;
};

// ---------------------------------------------------------------------------
// Exterior calculus

inline OneForm ext_d(const Poly& p) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < p.nvars(); ++i) c.push_back(derivative(p, i));
  return OneForm(std::move(c));
}

inline TwoForm ext_d(const OneForm& w) {
  const std::size_t n = w.nvars();
  TwoForm out = TwoForm::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.at(i, j) = derivative(w[j], i) - derivative(w[i], j);
  return out;
}

inline TwoForm wedge(const OneForm& a, const OneForm& b) {
  a.check_same(b);
  const std::size_t n = a.nvars();
  TwoForm out = TwoForm::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.at(i, j) = a[i] * b[j] - a[j] * b[i];
  return out;
}

/// Contraction with the radial field sum z_i d/dz_i.
inline Poly contract_radial(const OneForm& w) {
  Poly r(w.nvars());
  for (std::size_t i = 0; i < w.nvars(); ++i) r += Poly::variable(w.nvars(), i) * w[i];
  return r;
}

/// Chain-rule pullback: dz_i becomes d(map[i]).
inline OneForm pullback(std::span<const Poly> map, const OneForm& w) {
  if (map.size() != w.nvars())
    throw Error(ErrorKind::VariableCountMismatch, "pullback map needs one component per variable");
  const std::size_t target = map[0].nvars();
  for (const auto& m : map) m.check_same(map[0]);
  std::vector<OneForm> dmap;
  for (const auto& m : map) dmap.push_back(ext_d(m));
  OneForm out = OneForm::zero(target);
  for (std::size_t i = 0; i < w.nvars(); ++i) {
    if (w[i].is_zero()) continue;
    out += substitute(w[i], map) * dmap[i];
  }
  return out;
}

inline OneForm pullback(std::initializer_list<Poly> map, const OneForm& w) {
  std::vector<Poly> v(map);
  return pullback(std::span<const Poly>(v), w);
}

/// Canonical gcd of all coefficients (0 only for the zero form).
inline Poly coefficient_gcd(const std::vector<Poly>& coeffs) {
  Poly g(coeffs.front().nvars());
  for (const auto& c : coeffs) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

/// Joint scaling: coprime integer coefficients, first nonzero coefficient has a
/// positive leading coefficient. Returns the form divided by that scale.
inline OneForm normalize_scale(const OneForm& w) {
  Integer g = 0, l = 1;
  const Poly* first = nullptr;
  for (const auto& c : w.coeffs()) {
    if (c.is_zero()) continue;
    if (!first) first = &c;
    Rat rc = rational_content(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rc.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rc.get_den_mpz_t());
  }
  if (!first) return w;
  Rat scale = make_rat(l, g);
  if (first->leading_coeff() < 0) scale = -scale;
  return scale * w;
}

/// Removes the polynomial content and normalizes the scale.
inline OneForm primitive_form(const OneForm& w) {
  if (w.is_zero()) return w;
  Poly g = coefficient_gcd(w.coeffs());
  std::vector<Poly> c;
  for (const auto& a : w.coeffs()) c.push_back(divexact(a, g));
  return normalize_scale(OneForm(std::move(c)));
}

// ---------------------------------------------------------------------------
// Meromorphic forms

class MeroOneForm {
 public:
  const OneForm& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::size_t nvars() const { return num_.nvars(); }

  friend bool operator==(const MeroOneForm&, const MeroOneForm&) = default;

  friend MeroOneForm mero_make(const OneForm& num, const Poly& den);

 private:
  MeroOneForm(OneForm num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}

  OneForm num_;
  Poly den_;
};

/// theta / f reduced: the gcd of f with all coefficients is cancelled and the
/// denominator is canonical (primitive, positive leading coefficient).
inline MeroOneForm mero_make(const OneForm& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "meromorphic form with zero denominator");
  den.check_same(num[0]);
  if (num.is_zero()) return MeroOneForm(num, Poly::constant(den.nvars(), 1));
  std::vector<Poly> all = num.coeffs();
  all.push_back(den);
  Poly g = coefficient_gcd(all);
  Poly d = divexact(den, g);
  const Rat scale = canonical_scale(d);
  const Rat inv = 1 / scale;
  std::vector<Poly> c;
  for (const auto& a : num.coeffs()) c.push_back(divexact(a, g) * inv);
  return MeroOneForm(OneForm(std::move(c)), d * inv);
}

struct MeroTwoForm {
  TwoForm num;
  Poly den;
};

/// d(theta/f) = (f dtheta - df ^ theta) / f^2, reduced like mero_make.
inline MeroTwoForm mero_d(const MeroOneForm& w) {
  const Poly& f = w.den();
  TwoForm n = f * ext_d(w.num()) - wedge(ext_d(f), w.num());
  const std::size_t nv = w.nvars();
  if (n.is_zero()) return {TwoForm::zero(nv), Poly::constant(nv, 1)};
  std::vector<Poly> all = n.coeffs();
  all.push_back(f * f);
  Poly g = coefficient_gcd(all);
  Poly d = divexact(f * f, g);
  const Rat inv = 1 / canonical_scale(d);
  std::vector<Poly> c;
  for (const auto& a : n.coeffs()) c.push_back(divexact(a, g) * inv);
  return {TwoForm(nv, std::move(c)), d * inv};
}

inline bool mero_is_closed(const MeroOneForm& w) {
  return (w.den() * ext_d(w.num()) - wedge(ext_d(w.den()), w.num())).is_zero();
}

struct PoleReport {
  Poly factor;
  unsigned order_form = 0;
  unsigned order_dform = 0;
};

/// Multiplicity of the squarefree nonconstant g in the reduced denominators of w and dw.
inline PoleReport pole_orders(const MeroOneForm& w, const Poly& g) {
  if (g.is_zero() || g.is_constant())
    throw Error(ErrorKind::ConstantCurve, "pole order along a constant");
  if (!is_squarefree(g)) throw Error(ErrorKind::NotSquarefree, "pole order along a non-reduced divisor");
  MeroTwoForm dw = mero_d(w);
  return {g, multiplicity(g, w.den()), multiplicity(g, dw.den)};
}

/// Simple poles for w and dw: den(w) squarefree and den(dw) | den(w).
inline bool mero_is_logarithmic(const MeroOneForm& w) {
  if (w.den().is_constant()) return true;
  if (!is_squarefree(w.den())) return false;
  return divides(mero_d(w).den, w.den());
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string to_string(const OneForm& w, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < w.nvars(); ++i) {
    if (w[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(w[i], vars) + ")*d" + vars[i];
  }
  return out.empty() ? "0" : out;
}

inline std::string to_string(const TwoForm& w, const std::vector<std::string>& vars) {
  std::string out;
  const std::size_t n = w.nvars();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w.at(i, j).is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + to_string(w.at(i, j), vars) + ")*d" + vars[i] + "^d" + vars[j];
    }
  return out.empty() ? "0" : out;
}

inline std::string to_string(const MeroOneForm& w, const std::vector<std::string>& vars) {
  return "(" + to_string(w.num(), vars) + ")/(" + to_string(w.den(), vars) + ")";
}

}  // namespace folab
