#pragma once

// Sparse multivariate polynomials over the rationals.
//
// Terms are kept in a map ordered by graded-lexicographic order, largest
// first, so the leading term is always terms().begin() and rendering is
// deterministic. Zero coefficients are never stored.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "folab/error.hpp"
#include "folab/rational.hpp"

namespace folab {

using Exponent = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Strict "greater than" under graded-lex with x0 > x1 > ... > x(n-1).
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

inline std::uint32_t checked_exp_add(std::uint32_t a, std::uint32_t b) {
  if (a > std::numeric_limits<std::uint32_t>::max() - b)
    throw Error(ErrorKind::ExponentOverflow, "exponent overflow");
  return a + b;
}

class Poly {
 public:
  using TermMap = std::map<Exponent, Rat, GrlexGreater>;

  explicit Poly(std::size_t nvars = 1) : nvars_(nvars) {
    if (nvars == 0) throw Error(ErrorKind::InvalidArgument, "polynomial needs at least one variable");
  }

  static Poly constant(std::size_t nvars, const Rat& c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static Poly constant(std::size_t nvars, long c) { return constant(nvars, Rat(c)); }

  static Poly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
    Exponent e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, std::move(e), Rat(1));
  }

  static Poly monomial(std::size_t nvars, Exponent e, const Rat& c) {
    if (e.size() != nvars) throw Error(ErrorKind::VariableCountMismatch, "exponent length mismatch");
    Poly p(nvars);
    p.add_term(e, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  bool is_one() const { return is_constant() && !is_zero() && terms_.begin()->second == 1; }

  Rat constant_term() const {
    auto it = terms_.find(Exponent(nvars_, 0));
    return it == terms_.end() ? Rat(0) : it->second;
  }

  /// Leading term under graded-lex; precondition: nonzero.
  const Exponent& leading_exponent() const { return terms_.begin()->first; }
  const Rat& leading_coeff() const { return terms_.begin()->second; }

  Rat coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Exponent& e, const Rat& c) {
    if (e.size() != nvars_) throw Error(ErrorKind::VariableCountMismatch, "exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& q) {
    check_same(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& q) {
    check_same(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }
  Poly& operator*=(const Poly& q) { return *this = *this * q; }

  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator-(Poly p) {
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
  }
  friend Poly operator*(Poly p, const Rat& s) { return p *= s; }
  friend Poly operator*(const Rat& s, Poly p) { return p *= s; }

  friend Poly operator*(const Poly& p, const Poly& q) {
    p.check_same(q);
    Poly r(p.nvars_);
    if (p.is_zero() || q.is_zero()) return r;
    Exponent e(p.nvars_);
    for (const auto& [ep, cp] : p.terms_) {
      for (const auto& [eq, cq] : q.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_exp_add(ep[i], eq[i]);
        r.add_term(e, Rat(cp * cq));
      }
    }
    return r;
  }

  /// Multiplies by c * x^e.
  Poly mul_term(const Exponent& e, const Rat& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    Exponent f(nvars_);
    for (const auto& [ep, cp] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) f[i] = checked_exp_add(ep[i], e[i]);
      r.terms_.emplace_hint(r.terms_.end(), f, Rat(cp * c));
    }
    return r;
  }

  friend bool operator==(const Poly& p, const Poly& q) {
    return p.nvars_ == q.nvars_ && p.terms_ == q.terms_;
  }

  void check_same(const Poly& q) const {
    if (q.nvars_ != nvars_)
      throw Error(ErrorKind::VariableCountMismatch,
                  "polynomials in " + std::to_string(nvars_) + " and " + std::to_string(q.nvars_) +
                      " variables");
  }

 private:
  std::size_t nvars_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Degrees and orders

/// Minimal total degree of a term; nullopt stands for +infinity (zero polynomial).
inline std::optional<std::uint64_t> order(const Poly& p) {
  if (p.is_zero()) return std::nullopt;
  std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
  for (const auto& [e, c] : p.terms()) m = std::min(m, total_degree(e));
  return m;
}

/// Maximal total degree; -1 for the zero polynomial.
inline long total_degree(const Poly& p) {
  if (p.is_zero()) return -1;
  return static_cast<long>(total_degree(p.leading_exponent()));
}

inline bool is_homogeneous(const Poly& p) {
  if (p.is_zero()) return true;
  auto d = total_degree(p.leading_exponent());
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [d](const auto& t) { return total_degree(t.first) == d; });
}

inline std::uint32_t degree_in(const Poly& p, std::size_t v) {
  std::uint32_t d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, e[v]);
  return d;
}

inline bool involves(const Poly& p, std::size_t v) { return degree_in(p, v) > 0; }

/// Largest k with x_v^k dividing p (0 for the zero polynomial).
inline std::uint32_t min_exponent_in(const Poly& p, std::size_t v) {
  if (p.is_zero()) return 0;
  std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [e, c] : p.terms()) m = std::min(m, e[v]);
  return m;
}

/// Homogeneous component of total degree d.
inline Poly homogeneous_part(const Poly& p, std::uint64_t d) {
  Poly r(p.nvars());
  for (const auto& [e, c] : p.terms())
    if (total_degree(e) == d) r.add_term(e, c);
  return r;
}

// ---------------------------------------------------------------------------
// Calculus and evaluation

inline Poly derivative(const Poly& p, std::size_t v) {
  if (v >= p.nvars()) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  Poly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] == 0) continue;
    Exponent f = e;
    f[v] -= 1;
    r.add_term(f, Rat(c * e[v]));
  }
  return r;
}

inline Poly pow(const Poly& p, std::uint64_t k) {
  Poly result = Poly::constant(p.nvars(), 1);
  Poly base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

inline Rat evaluate(const Poly& p, std::span<const Rat> point) {
  if (point.size() != p.nvars())
    throw Error(ErrorKind::VariableCountMismatch, "evaluation point has wrong dimension");
  Rat sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= rat_pow(point[i], e[i]);
    sum += t;
  }
  return sum;
}

/// Composition p(images[0], ..., images[n-1]); all images share one variable count.
inline Poly substitute(const Poly& p, std::span<const Poly> images) {
  if (images.size() != p.nvars())
    throw Error(ErrorKind::VariableCountMismatch, "substitution needs one image per variable");
  if (images.empty()) return p;
  const std::size_t target = images[0].nvars();
  for (const auto& im : images) im.check_same(images[0]);

  // Powers of each image are cached on demand.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power_of = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };

  Poly r(target);
  for (const auto& [e, c] : p.terms()) {
    Poly t = Poly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t = t * power_of(i, e[i]);
    r += t;
  }
  return r;
}

inline Poly substitute(const Poly& p, std::initializer_list<Poly> images) {
  std::vector<Poly> v(images);
  return substitute(p, std::span<const Poly>(v));
}

/// Exact translation p(x + shift).
inline Poly translate(const Poly& p, std::span<const Rat> shift) {
  if (shift.size() != p.nvars())
    throw Error(ErrorKind::VariableCountMismatch, "shift has wrong dimension");
  if (std::all_of(shift.begin(), shift.end(), [](const Rat& r) { return r == 0; })) return p;
  std::vector<Poly> images;
  for (std::size_t i = 0; i < p.nvars(); ++i)
    images.push_back(Poly::variable(p.nvars(), i) + Poly::constant(p.nvars(), shift[i]));
  return substitute(p, images);
}

/// Sets x_v = value; the variable count is kept (x_v simply no longer occurs).
inline Poly specialize(const Poly& p, std::size_t v, const Rat& value) {
  Poly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[v] = 0;
    r.add_term(f, e[v] == 0 ? c : Rat(c * rat_pow(value, e[v])));
  }
  return r;
}

/// Divides by x_v^k exactly; throws NotDivisible when some term has a smaller exponent.
inline Poly shift_down(const Poly& p, std::size_t v, std::uint32_t k) {
  Poly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] < k) throw Error(ErrorKind::NotDivisible, "monomial division failed");
    Exponent f = e;
    f[v] -= k;
    r.add_term(f, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Content and canonical form

/// Positive rational c such that p / c has coprime integer coefficients (1 for zero).
inline Rat rational_content(const Poly& p) {
  if (p.is_zero()) return Rat(1);
  Integer g = 0, l = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  return make_rat(g, l);
}

/// Primitive integer representative with positive leading coefficient.
inline Poly canonical(const Poly& p) {
  if (p.is_zero()) return p;
  Rat c = rational_content(p);
  if (p.leading_coeff() < 0) c = -c;
  Rat inv = 1 / c;
  return p * inv;
}

/// The scalar s with p = s * canonical(p).
inline Rat canonical_scale(const Poly& p) {
  if (p.is_zero()) return Rat(1);
  Rat c = rational_content(p);
  return p.leading_coeff() < 0 ? Rat(-c) : c;
}

// ---------------------------------------------------------------------------
// Exact division

/// Quotient when q divides p, nullopt otherwise.
inline std::optional<Poly> try_divide(const Poly& p, const Poly& q) {
  p.check_same(q);
  if (q.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by the zero polynomial");
  Poly quotient(p.nvars());
  Poly rem = p;
  const Exponent& lq = q.leading_exponent();
  const Rat& lc = q.leading_coeff();
  Exponent shift(p.nvars());
  while (!rem.is_zero()) {
    const Exponent& lr = rem.leading_exponent();
    for (std::size_t i = 0; i < shift.size(); ++i) {
      if (lr[i] < lq[i]) return std::nullopt;
      shift[i] = lr[i] - lq[i];
    }
    Rat c = rem.leading_coeff() / lc;
    quotient.add_term(shift, c);
    rem -= q.mul_term(shift, c);
  }
  return quotient;
}

inline bool divides(const Poly& q, const Poly& p) { return try_divide(p, q).has_value(); }

inline Poly divexact(const Poly& p, const Poly& q) {
  auto r = try_divide(p, q);
  if (!r) throw Error(ErrorKind::NotDivisible, "polynomial is not an exact multiple");
  return std::move(*r);
}

/// Largest k such that g^k divides p; g must be nonconstant and p nonzero.
inline unsigned multiplicity(const Poly& g, Poly p) {
  if (g.is_constant()) throw Error(ErrorKind::InvalidArgument, "multiplicity of a constant");
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "multiplicity in the zero polynomial");
  unsigned k = 0;
  while (auto q = try_divide(p, g)) {
    p = std::move(*q);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::vector<std::string> default_var_names(std::size_t n) {
  if (n == 2) return {"x", "y"};
  if (n == 3) return {"z0", "z1", "z2"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

/// Canonical text: graded-lex descending, explicit '*' and '^', rationals as p/q.
inline std::string to_string(const Poly& p, const std::vector<std::string>& vars) {
  if (vars.size() != p.nvars())
    throw Error(ErrorKind::VariableCountMismatch, "variable names do not match polynomial");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rat a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += to_string(a);
    } else if (a == 1) {
      out += mono;
    } else {
      out += to_string(a) + "*" + mono;
    }
  }
  return out;
}

inline std::string to_string(const Poly& p) { return to_string(p, default_var_names(p.nvars())); }

}  // namespace folab
