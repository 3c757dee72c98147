#pragma once

// Dense univariate polynomials over Q and their rational roots.

#include <algorithm>
#include <map>
#include <vector>

#include "folab/gcd.hpp"

namespace folab {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rat& c) { return UniPoly({c}); }

  /// Reads p as a polynomial in x_v alone; other variables must not occur.
  static UniPoly from_poly(const Poly& p, std::size_t v) {
    std::vector<Rat> c(p.is_zero() ? 0 : degree_in(p, v) + 1, Rat(0));
    for (const auto& [e, a] : p.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != v && e[i] != 0)
          throw Error(ErrorKind::InvalidArgument, "polynomial is not univariate in the requested variable");
      c[e[v]] = a;
    }
    return UniPoly(std::move(c));
  }

  Poly to_poly(std::size_t nvars, std::size_t v) const {
    Poly p(nvars);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      Exponent e(nvars, 0);
      e[v] = static_cast<std::uint32_t>(k);
      p.add_term(e, coeffs_[k]);
    }
    return p;
  }

  const std::vector<Rat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const Rat& leading_coeff() const { return coeffs_.back(); }

  Rat operator()(const Rat& t) const {
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Coprime integer coefficients, positive leading coefficient.
  UniPoly primitive() const {
    if (is_zero()) return *this;
    Integer g = 0, l = 1;
    for (const auto& c : coeffs_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    Rat scale = make_rat(l, g);
    if (leading_coeff() < 0) scale = -scale;
    std::vector<Rat> out;
    for (const auto& c : coeffs_) out.push_back(c * scale);
    return UniPoly(std::move(out));
  }

  std::string to_string(const std::string& var) const {
    return folab::to_string(to_poly(1, 0), {var});
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rat> coeffs_;
};

namespace detail {

/// Brent's variant of Pollard rho; n is composite and odd.
inline Integer pollard_rho(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1, q = 1, ys;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    unsigned long r = 1;
    const unsigned long m = 64;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && d == 1);
      r *= 2;
    } while (d == 1);
    if (d == n) {
      do {
        ys = f(ys);
        Integer diff = x - ys;
        diff = abs(diff);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

inline void pollard_factor(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  pollard_factor(d, out);
  Integer rest = n / d;
  pollard_factor(rest, out);
}

inline std::map<Integer, unsigned> factor_integer(Integer n) {
  std::map<Integer, unsigned> out;
  n = abs(n);
  if (n <= 1) return out;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    if (n == 1) break;
    Integer pp = p;
    if (pp * pp > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[pp];
      n /= p;
    }
  }
  if (n > 1) pollard_factor(n, out);
  return out;
}

inline std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, k] : factor_integer(n)) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned j = 1; j <= k; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Synthetic division by (t - root); root must be a root of c.
inline std::vector<Rat> deflate(const std::vector<Rat>& c, const Rat& root) {
  std::vector<Rat> out(c.size() - 1);
  Rat carry = 0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    carry = c[k + 1] + carry * root;
    out[k] = carry;
  }
  return out;
}

}  // namespace detail

struct RationalRoots {
  std::vector<Rat> roots;  ///< ascending, repeated by multiplicity
  UniPoly residual;        ///< primitive cofactor without rational roots
};

/// All rational roots with multiplicity; candidates p/q come from divisors of the
/// trailing and leading coefficients of the primitive integer polynomial.
inline RationalRoots uni_rational_roots(const UniPoly& u) {
  if (u.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational roots of the zero polynomial");
  RationalRoots out;
  std::vector<Rat> c = u.primitive().coeffs();
  while (c.size() > 1 && c.front() == 0) {
    out.roots.push_back(Rat(0));
    c.erase(c.begin());
  }
  if (c.size() > 1) {
    const Integer a0 = c.front().get_num();
    const Integer an = c.back().get_num();
    // Cauchy bound prunes candidates of large modulus.
    Rat bound = 0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) bound = std::max(bound, Rat(abs(c[k] / c.back())));
    bound += 1;
    const auto nums = detail::positive_divisors(a0);
    const auto dens = detail::positive_divisors(an);
    std::vector<Rat> candidates;
    for (const auto& p : nums)
      for (const auto& q : dens) {
        Rat r = make_rat(p, q);
        if (r.get_den() != q) continue;  // duplicate of a reduced fraction
        if (r > bound) continue;
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& r : candidates) {
      while (c.size() > 1 && UniPoly(c)(r) == 0) {
        out.roots.push_back(r);
        c = UniPoly(detail::deflate(c, r)).primitive().coeffs();
      }
      if (c.size() <= 1) break;
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.residual = UniPoly(c).primitive();
  return out;
}

inline UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
  Poly g = gcd(a.to_poly(1, 0), b.to_poly(1, 0));
  return UniPoly::from_poly(g, 0);
}

}  // namespace folab
