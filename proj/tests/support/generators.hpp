#pragma once

// Seeded random generators shared by the property suites.

#include <random>
#include <vector>

#include "folab/poly.hpp"

namespace folab::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rat rat(long num_bound = 5, long den_bound = 3) {
    long n = integer(-num_bound, num_bound);
    long d = integer(1, den_bound);
    return make_rat(n, d);
  }

  Rat nonzero_rat(long num_bound = 5, long den_bound = 3) {
    Rat r;
    do r = rat(num_bound, den_bound);
    while (r == 0);
    return r;
  }

  Exponent exponent(std::size_t nvars, unsigned max_total) {
    Exponent e(nvars, 0);
    unsigned budget = static_cast<unsigned>(integer(0, max_total));
    for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
      unsigned k = static_cast<unsigned>(integer(0, budget));
      e[i] = k;
      budget -= k;
    }
    if (budget > 0) e[nvars - 1] += budget;
    std::shuffle(e.begin(), e.end(), rng_);
    return e;
  }

  Poly poly(std::size_t nvars, unsigned max_total, unsigned max_terms) {
    Poly p(nvars);
    unsigned n = static_cast<unsigned>(integer(1, max_terms));
    for (unsigned i = 0; i < n; ++i) p.add_term(exponent(nvars, max_total), rat());
    return p;
  }

  Poly nonzero_poly(std::size_t nvars, unsigned max_total, unsigned max_terms) {
    Poly p(nvars);
    while (p.is_zero()) p = poly(nvars, max_total, max_terms);
    return p;
  }

  /// Homogeneous of the given degree with at least one term.
  Poly homogeneous(std::size_t nvars, unsigned degree, unsigned max_terms) {
    Poly p(nvars);
    while (p.is_zero()) {
      unsigned n = static_cast<unsigned>(integer(1, max_terms));
      for (unsigned i = 0; i < n; ++i) {
        Exponent e(nvars, 0);
        for (unsigned k = 0; k < degree; ++k) e[static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1))]++;
        p.add_term(e, rat());
      }
    }
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace folab::testing
