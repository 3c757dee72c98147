#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "folab/error.hpp"

namespace folab {

using Integer = mpz_class;
/// Always canonical: gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p" or "p/q" (optional leading sign); anything else is an InvalidArgument.
inline Rat parse_rat(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw Error(ErrorKind::InvalidArgument, "empty rational literal");
  std::size_t i = (str[0] == '-' || str[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < str.size(); ++i) {
    char c = str[i];
    if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else {
      throw Error(ErrorKind::InvalidArgument, "malformed rational literal '" + str + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw Error(ErrorKind::InvalidArgument, "malformed rational literal '" + str + "'");
  if (str[0] == '+') str.erase(0, 1);
  if (seen_slash) {
    auto slash = str.find('/');
    Integer num(str.substr(0, slash), 10);
    Integer den(str.substr(slash + 1), 10);
    return make_rat(num, den);
  }
  return Rat(Integer(str, 10));
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }

inline int sign(const Rat& r) { return sgn(r); }

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace folab
