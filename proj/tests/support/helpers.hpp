#pragma once

#include <string>
#include <vector>

#include "folab/parser.hpp"

namespace folab::testing {

inline Poly P(const std::string& s, const std::vector<std::string>& vars = {"x", "y"}) { return parse_poly(s, vars); }
inline Poly P3(const std::string& s) { return parse_poly(s, {"z0", "z1", "z2"}); }
inline Rat Q(long n, long d = 1) { return make_rat(n, d); }

}  // namespace folab::testing
