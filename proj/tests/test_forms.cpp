#include <gtest/gtest.h>

#include "folab/forms.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"

using namespace folab;
using namespace folab::testing;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XT{"x", "t"};

OneForm F(const std::string& a, const std::string& b, const std::vector<std::string>& vars = XY) {
  return OneForm({P(a, vars), P(b, vars)});
}

TwoForm T2(const std::string& c, const std::vector<std::string>& vars = XY) { return TwoForm(2, {P(c, vars)}); }

OneForm random_form(Gen& g, std::size_t n, unsigned deg) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(g.poly(n, deg, 4));
  return OneForm(std::move(c));
}

const OneForm radial = F("-y", "x");  // x dy - y dx

}  // namespace

TEST(ExtD, Examples) {
  EXPECT_EQ(ext_d(P("x*y")), F("y", "x"));
  EXPECT_EQ(ext_d(radial), T2("2"));
  EXPECT_TRUE(ext_d(ext_d(P("x^3*y - 5*y^2 + 1"))).is_zero());
  EXPECT_TRUE(ext_d(P("7")).is_zero());
}

TEST(ExtD, ThreeVariableSlots) {
  // d(z1 dz0) = -dz0^dz1
  OneForm w({P3("z1"), P3("0"), P3("0")});
  TwoForm dw = ext_d(w);
  EXPECT_EQ(dw.at(0, 1), P3("-1"));
  EXPECT_TRUE(dw.at(0, 2).is_zero());
  EXPECT_TRUE(dw.at(1, 2).is_zero());
  EXPECT_EQ(TwoForm::slot(3, 0, 1), 0u);
  EXPECT_EQ(TwoForm::slot(3, 0, 2), 1u);
  EXPECT_EQ(TwoForm::slot(3, 1, 2), 2u);
}

TEST(Wedge, Examples) {
  EXPECT_EQ(wedge(radial, ext_d(P("x^4+y^4"))), T2("-4*(x^4+y^4)"));
  EXPECT_TRUE(wedge(radial, radial).is_zero());
  EXPECT_EQ(wedge(OneForm::basis(2, 0), OneForm::basis(2, 1)), T2("1"));
}

TEST(Wedge, MismatchedVariables) {
  EXPECT_THROW(wedge(OneForm::basis(2, 0), OneForm::basis(3, 1)), Error);
}

TEST(ContractRadial, Examples) {
  EXPECT_TRUE(contract_radial(OneForm({P3("z1"), P3("-z0"), P3("0")})).is_zero());
  EXPECT_EQ(contract_radial(OneForm::basis(3, 0)), P3("z0"));
  EXPECT_TRUE(contract_radial(OneForm({P3("-(z0*z1+2*z2^2)"), P3("z0^2"), P3("2*z0*z2")})).is_zero());
}

TEST(Pullback, Examples) {
  Poly x = Poly::variable(2, 0), t = Poly::variable(2, 1);
  EXPECT_EQ(pullback({x, t * x}, radial), F("0", "x^2", XT));
  EXPECT_EQ(pullback({Poly::variable(2, 0), Poly::variable(2, 1)}, radial), radial);
  EXPECT_EQ(pullback({x, t * x}, F("-3*x^2", "2*y")), F("2*t^2*x - 3*x^2", "2*t*x^2", XT));
}

TEST(MeroMake, Examples) {
  Poly x = Poly::variable(2, 0), t = Poly::variable(2, 1);
  MeroOneForm w = mero_make(pullback({x, t * x}, radial), substitute(P("x^4+y^4"), {x, t * x}));
  EXPECT_EQ(w.num(), F("0", "1", XT));
  EXPECT_EQ(w.den(), P("x^2*(1+t^4)", XT));

  MeroOneForm v = mero_make(F("0", "x"), P("x"));
  EXPECT_EQ(v.num(), F("0", "1"));
  EXPECT_EQ(v.den(), P("1"));

  MeroOneForm r = mero_make(radial, P("x^4+y^4"));
  EXPECT_EQ(r.num(), radial);
  EXPECT_EQ(r.den(), P("x^4+y^4"));
}

TEST(MeroMake, CanonicalSignAndZeroDenominator) {
  MeroOneForm w = mero_make(F("1", "0"), P("-2*x"));
  EXPECT_EQ(w.den(), P("x"));
  EXPECT_EQ(w.num(), F("-1/2", "0"));
  try {
    (void)mero_make(F("1", "0"), Poly(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroDenominator);
  }
}

TEST(MeroD, Examples) {
  MeroTwoForm a = mero_d(mero_make(ext_d(P("x*y")), P("x*y")));
  EXPECT_TRUE(a.num.is_zero());

  // f dtheta - df^theta = 2f - 4f = -2f over f^2, so -2/(x^4+y^4).
  MeroTwoForm b = mero_d(mero_make(radial, P("x^4+y^4")));
  EXPECT_EQ(b.num, T2("-2"));
  EXPECT_EQ(b.den, P("x^4+y^4"));

  MeroTwoForm c = mero_d(mero_make(F("0", "1"), P("x^2")));
  EXPECT_EQ(c.num, T2("-2"));
  EXPECT_EQ(c.den, P("x^3"));
}

TEST(MeroClosed, Examples) {
  EXPECT_TRUE(mero_is_closed(mero_make(F("y", "x"), P("x*y"))));
  EXPECT_FALSE(mero_is_closed(mero_make(radial, P("x*y*(y-x)"))));
  Poly f = P("x^3 - y^2 + x*y");
  EXPECT_TRUE(mero_is_closed(mero_make(make_rat(-7, 3) * ext_d(f), f)));
}

TEST(Logarithmic, Examples) {
  EXPECT_TRUE(mero_is_logarithmic(mero_make(radial, P("x^4+y^4"))));

  MeroOneForm pulled = mero_make(F("0", "1", XT), P("x^2*(1+t^4)", XT));
  PoleReport rep = pole_orders(pulled, P("x", XT));
  EXPECT_EQ(rep.order_form, 2u);
  EXPECT_FALSE(mero_is_logarithmic(pulled));

  Poly f = P("x^2 - y^3");
  MeroOneForm dlog = mero_make(ext_d(f), f);
  EXPECT_TRUE(mero_is_logarithmic(dlog));
  PoleReport r2 = pole_orders(dlog, f);
  EXPECT_EQ(r2.order_form, 1u);
  EXPECT_EQ(r2.order_dform, 0u);
}

TEST(Logarithmic, SimplePoleWithNonClosedDerivativeDoubles) {
  // dx/(x y) has d = dx^dy/(x y^2): double pole along y.
  MeroOneForm w = mero_make(F("1", "0"), P("x*y"));
  EXPECT_FALSE(mero_is_logarithmic(w));
  EXPECT_EQ(pole_orders(w, P("y")).order_dform, 2u);
}

TEST(PoleOrders, RejectsBadFactors) {
  MeroOneForm w = mero_make(radial, P("x^4+y^4"));
  try {
    (void)pole_orders(w, P("x^2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSquarefree);
  }
  EXPECT_THROW((void)pole_orders(w, P("3")), Error);
}

TEST(Render, Forms) {
  EXPECT_EQ(to_string(radial, XY), "(-y)*dx + (x)*dy");
  EXPECT_EQ(to_string(T2("2"), XY), "(2)*dx^dy");
  EXPECT_EQ(to_string(OneForm::zero(2), XY), "0");
  EXPECT_EQ(to_string(mero_make(radial, P("x^4+y^4")), XY), "((-y)*dx + (x)*dy)/(x^4 + y^4)");
}

TEST(Properties, DSquaredVanishes) {
  Gen g(21);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 3));
    EXPECT_TRUE(ext_d(ext_d(g.poly(n, 5, 6))).is_zero());
    // d of a 2-form is not modelled; check d(f dg) = df^dg instead.
    Poly f = g.poly(n, 3, 4), h = g.poly(n, 3, 4);
    EXPECT_EQ(ext_d(f * ext_d(h)), wedge(ext_d(f), ext_d(h)));
  }
}

TEST(Properties, LeibnizAndAntisymmetry) {
  Gen g(22);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 3));
    Poly p = g.poly(n, 4, 5), q = g.poly(n, 4, 5);
    EXPECT_EQ(ext_d(p * q), p * ext_d(q) + q * ext_d(p));
    OneForm a = random_form(g, n, 3), b = random_form(g, n, 3);
    EXPECT_EQ(wedge(a, b), -wedge(b, a));
    EXPECT_TRUE(wedge(a, a).is_zero());
  }
}

TEST(Properties, PullbackIsFunctorial) {
  Gen g(23);
  for (int it = 0; it < 50; ++it) {
    OneForm w = random_form(g, 2, 3);
    std::vector<Poly> tau{g.poly(2, 2, 3), g.poly(2, 2, 3)};
    std::vector<Poly> sigma{g.poly(2, 2, 3), g.poly(2, 2, 3)};
    std::vector<Poly> tau_sigma{substitute(tau[0], std::span<const Poly>(sigma)), substitute(tau[1], std::span<const Poly>(sigma))};
    EXPECT_EQ(pullback(std::span<const Poly>(sigma), pullback(std::span<const Poly>(tau), w)),
              pullback(std::span<const Poly>(tau_sigma), w));
  }
}

TEST(Properties, PullbackCommutesWithD) {
  Gen g(24);
  for (int it = 0; it < 50; ++it) {
    Poly f = g.poly(2, 4, 5);
    std::vector<Poly> sigma{g.poly(2, 2, 3), g.poly(2, 2, 3)};
    EXPECT_EQ(pullback(std::span<const Poly>(sigma), ext_d(f)), ext_d(substitute(f, std::span<const Poly>(sigma))));
  }
}

TEST(Properties, EulerRelation) {
  Gen g(25);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 3));
    unsigned d = static_cast<unsigned>(g.integer(0, 5));
    Poly p = g.homogeneous(n, d, 5);
    EXPECT_EQ(contract_radial(ext_d(p)), Poly::constant(n, Rat(total_degree(p) < 0 ? 0 : total_degree(p))) * p);
  }
}

TEST(Properties, LogDerivativeIsClosed) {
  Gen g(26);
  int checked = 0;
  while (checked < 50) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 3));
    Poly f = g.nonzero_poly(n, 4, 5);
    if (f.is_constant() || !is_squarefree(f)) continue;
    MeroOneForm w = mero_make(ext_d(f), f);
    EXPECT_TRUE(mero_is_closed(w)) << to_string(f);
    EXPECT_TRUE(mero_d(w).num.is_zero());
    EXPECT_TRUE(mero_is_logarithmic(w));
    ++checked;
  }
}

TEST(Properties, PoleOrderMatchesConstruction) {
  Gen g(27);
  int checked = 0;
  while (checked < 40) {
    Poly base = g.nonzero_poly(2, 2, 3);
    if (base.is_constant() || !is_squarefree(base)) continue;
    Poly other = g.nonzero_poly(2, 2, 3);
    if (divides(base, other)) continue;
    unsigned k = static_cast<unsigned>(g.integer(1, 3));
    OneForm theta = random_form(g, 2, 3);
    // Make sure base does not divide theta so nothing cancels.
    if (divides(base, theta[0]) && divides(base, theta[1])) continue;
    MeroOneForm w = mero_make(theta, pow(base, k) * other);
    Poly gg = canonical(base);
    unsigned expected = multiplicity(gg, pow(base, k) * other);
    if (gcd(std::vector<Poly>{theta[0], theta[1], gg}).is_one()) {
      EXPECT_EQ(pole_orders(w, gg).order_form, expected);
    }
    ++checked;
  }
}
