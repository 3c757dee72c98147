#pragma once

// Multivariate gcd, resultants and squarefree parts.
//
// A polynomial is viewed recursively as a univariate polynomial in its
// highest occurring variable with coefficients in the remaining ones.
// Contents are removed recursively and the primitive parts go through a
// subresultant pseudo-remainder sequence, so every division is exact.

#include <vector>

#include "folab/poly.hpp"

namespace folab {

namespace detail {

/// Dense coefficients in x_v: c[k] multiplies x_v^k and does not involve x_v.
using Dense = std::vector<Poly>;

inline Dense split(const Poly& p, std::size_t v) {
  Dense d(degree_in(p, v) + (p.is_zero() ? 0 : 1), Poly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[v] = 0;
    d[e[v]].add_term(f, c);
  }
  return d;
}

inline Poly join(const Dense& d, std::size_t v, std::size_t nvars) {
  Poly r(nvars);
  for (std::size_t k = 0; k < d.size(); ++k)
    for (const auto& [e, c] : d[k].terms()) {
      Exponent f = e;
      f[v] = static_cast<std::uint32_t>(k);
      r.add_term(f, c);
    }
  return r;
}

inline void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

inline long deg(const Dense& d) { return static_cast<long>(d.size()) - 1; }

/// lc(B)^(deg A - deg B + 1) * A mod B.
inline Dense prem(Dense a, const Dense& b) {
  const long db = deg(b);
  const Poly& lb = b.back();
  long e = deg(a) - db + 1;
  while (!a.empty() && deg(a) >= db) {
    Poly la = a.back();
    const std::size_t shift = static_cast<std::size_t>(deg(a) - db);
    for (auto& c : a) c = c * lb;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= la * b[k];
    trim(a);
    --e;
  }
  if (e > 0) {
    Poly f = pow(lb, static_cast<std::uint64_t>(e));
    for (auto& c : a) c = c * f;
  }
  return a;
}

inline Dense divexact(const Dense& d, const Poly& q) {
  Dense r;
  r.reserve(d.size());
  for (const auto& c : d) r.push_back(folab::divexact(c, q));
  return r;
}

}  // namespace detail

Poly gcd(const Poly& p, const Poly& q);

namespace detail {

inline Poly content(const Dense& d) {
  Poly g(d.empty() ? 1 : d.front().nvars());
  for (const auto& c : d) {
    g = folab::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

/// Primitive gcd in x_v of primitive inputs via the subresultant PRS.
inline Dense primitive_gcd(Dense a, Dense b, std::size_t nvars) {
  if (deg(a) < deg(b)) std::swap(a, b);
  Poly g = Poly::constant(nvars, 1);
  Poly h = Poly::constant(nvars, 1);
  for (;;) {
    const long delta = deg(a) - deg(b);
    Dense r = prem(a, b);
    if (r.empty()) break;
    if (deg(r) == 0) return Dense{Poly::constant(nvars, 1)};
    a = std::move(b);
    b = divexact(r, g * pow(h, static_cast<std::uint64_t>(delta)));
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = folab::divexact(pow(g, static_cast<std::uint64_t>(delta)),
                          pow(h, static_cast<std::uint64_t>(delta - 1)));
    }
  }
  return divexact(b, content(b));
}

inline long highest_var(const Poly& p) {
  long v = -1;
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (involves(p, i)) v = static_cast<long>(i);
  return v;
}

}  // namespace detail

/// Canonical gcd: primitive over the integers with positive graded-lex leading coefficient.
/// gcd(0, q) = canonical(q); gcd(0, 0) = 0.
inline Poly gcd(const Poly& p, const Poly& q) {
  p.check_same(q);
  const std::size_t n = p.nvars();
  if (p.is_zero()) return canonical(q);
  if (q.is_zero()) return canonical(p);
  if (p.is_constant() || q.is_constant()) return Poly::constant(n, 1);
  if (divides(q, p)) return canonical(q);
  if (divides(p, q)) return canonical(p);

  const std::size_t v = static_cast<std::size_t>(std::max(detail::highest_var(p), detail::highest_var(q)));
  detail::Dense a = detail::split(p, v);
  detail::Dense b = detail::split(q, v);
  if (a.size() == 1) return gcd(p, detail::content(b));
  if (b.size() == 1) return gcd(detail::content(a), q);

  Poly ca = detail::content(a);
  Poly cb = detail::content(b);
  Poly c = gcd(ca, cb);
  detail::Dense g = detail::primitive_gcd(detail::divexact(a, ca), detail::divexact(b, cb), n);
  return canonical(c * detail::join(g, v, n));
}

inline Poly gcd(const std::vector<Poly>& ps) {
  if (ps.empty()) throw Error(ErrorKind::InvalidArgument, "gcd of an empty list");
  Poly g(ps.front().nvars());
  for (const auto& p : ps) {
    g = gcd(g, p);
    if (g.is_one()) break;
  }
  return g;
}

/// Resultant with respect to x_v; the result does not involve x_v.
inline Poly resultant(const Poly& p, const Poly& q, std::size_t v) {
  p.check_same(q);
  const std::size_t n = p.nvars();
  if (p.is_zero() || q.is_zero()) return Poly(n);
  detail::Dense a = detail::split(p, v);
  detail::Dense b = detail::split(q, v);
  Rat s = 1;
  if (detail::deg(a) < detail::deg(b)) {
    if ((detail::deg(a) * detail::deg(b)) % 2 != 0) s = -1;
    std::swap(a, b);
  }
  if (detail::deg(b) == 0) return pow(b[0], static_cast<std::uint64_t>(detail::deg(a))) * s;

  Poly g = Poly::constant(n, 1);
  Poly h = Poly::constant(n, 1);
  for (;;) {
    const long delta = detail::deg(a) - detail::deg(b);
    if (detail::deg(a) % 2 != 0 && detail::deg(b) % 2 != 0) s = -s;
    detail::Dense r = detail::prem(a, b);
    a = std::move(b);
    b = detail::divexact(r, g * pow(h, static_cast<std::uint64_t>(delta)));
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divexact(pow(g, static_cast<std::uint64_t>(delta)), pow(h, static_cast<std::uint64_t>(delta - 1)));
    } else {
      // delta == 0 keeps h.
    }
    if (detail::deg(b) <= 0) break;
  }
  if (b.empty()) return Poly(n);
  const auto da = static_cast<std::uint64_t>(detail::deg(a));
  Poly top = pow(b[0], da);
  if (da > 1) top = divexact(top, pow(h, da - 1));
  return top * s;
}

/// p / gcd(p, dp/dx_0, ..., dp/dx_{n-1}), canonical. Precondition: p != 0.
inline Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree part of zero");
  Poly g = p;
  for (std::size_t v = 0; v < p.nvars() && !g.is_one(); ++v) {
    Poly dv = derivative(p, v);
    if (!dv.is_zero()) g = gcd(g, dv);
  }
  if (g.is_zero() || g.is_constant()) return canonical(p);
  return canonical(divexact(p, g));
}

inline bool is_squarefree(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree test of zero");
  if (p.is_constant()) return true;
  return squarefree_part(p) == canonical(p);
}

}  // namespace folab
