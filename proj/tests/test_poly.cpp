#include <gtest/gtest.h>

#include <random>

#include "bh/curve.hpp"
#include "bh/poly.hpp"

using namespace bh;

namespace {

UniPoly from_ints(const Field& k, std::initializer_list<int> cs) {
  std::vector<Elem> v;
  for (int c : cs) v.push_back(k.from_int(c));
  return UniPoly(k, v);
}

MPoly random_form(const Field& k, int nvars, int degree, std::mt19937_64& rng) {
  const auto els = k.elements();
  std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
  MPoly f(k, nvars);
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      Monomial m{};
      m[0] = static_cast<std::uint16_t>(a);
      m[1] = static_cast<std::uint16_t>(b);
      m[2] = static_cast<std::uint16_t>(degree - a - b);
      f = f + MPoly::monomial(k, nvars, m, els[pick(rng)]);
    }
  return f;
}

}  // namespace

TEST(Compose, LinearFormExample) {
  const Field k = make_field(5, 1);
  const std::vector<Elem> ones{k.one(), k.one(), k.one()};
  const HomogForm f(MPoly::linear(k, ones));
  const UniPoly t = UniPoly::x(k);
  const UniPoly r = compose(f, {UniPoly::constant(k, k.one()), t * t, t});
  EXPECT_EQ(r, from_ints(k, {1, 1, 1}));
}

TEST(Compose, DehomogenizedCurveIdentities) {
  // q=2: x + x^2 + y^3 + xy at (t^3, t^2+t) over F_2.
  const Field f2 = make_field(2, 1);
  const MPoly x = MPoly::var(f2, 2, 0), y = MPoly::var(f2, 2, 1);
  const MPoly g2 = x + x * x + y * y * y + x * y;
  const UniPoly t = UniPoly::x(f2);
  EXPECT_TRUE(g2.compose(std::vector<UniPoly>{t.pow(3), t * t + t}).is_zero());

  // q=3: the odd-p form at (1, t^4, t^3 + t) over F_3.
  const Field f3 = make_field(3, 1);
  const HomogForm f = defining_form(PrimePower::of(3), f3);
  const UniPoly u = UniPoly::x(f3);
  EXPECT_TRUE(compose(f, {UniPoly::constant(f3, f3.one()), u.pow(4), u.pow(3) + u}).is_zero());
}

TEST(Compose, ArityMismatch) {
  const Field k = make_field(3, 1);
  const HomogForm f(MPoly::var(k, 3, 0));
  try {
    compose(f, std::vector<UniPoly>{UniPoly::x(k)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ArityMismatch);
  }
}

TEST(Compose, IsARingHomomorphism) {
  std::mt19937_64 rng(20240611);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Field k = make_field(p, 2);
    const auto els = k.elements();
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const MPoly f = random_form(k, 3, 3, rng), g = random_form(k, 3, 3, rng), h = random_form(k, 3, 2, rng);
      std::vector<UniPoly> subs;
      for (int i = 0; i < 3; ++i)
        subs.push_back(UniPoly(k, {els[pick(rng)], els[pick(rng)], els[pick(rng)]}));
      EXPECT_EQ((f + g).compose(subs), f.compose(subs) + g.compose(subs));
      EXPECT_EQ((f * h).compose(subs), f.compose(subs) * h.compose(subs));
    }
  }
}

TEST(VanishingOrder, Examples) {
  const Field k = make_field(5, 1);
  const UniPoly t = UniPoly::x(k);
  const UniPoly one = UniPoly::constant(k, k.one());
  const UniPoly f = (t - one).pow(3) * (t + one);
  EXPECT_EQ(vanishing_order(f, k.one()), 3);
  EXPECT_EQ(vanishing_order(f, k.from_int(-1)), 1);
  EXPECT_EQ(vanishing_order(f, k.from_int(2)), 0);
  EXPECT_EQ(vanishing_order(UniPoly(k, {}), k.one()), kInfiniteOrder);
}

TEST(VanishingOrder, TangentPullbackAtRationalPointHasOrderQPlusOne) {
  const PrimePower q = PrimePower::of(2);
  const BhCurve c = BhCurve::make(q);
  for (const auto& pt : p1_points(c.field)) {
    if (!c.in_fq(pt)) continue;
    const Line l = tangent_line(pt, q);
    const BinaryForm pull = c.phi.coords[0].scale(l.c[0]) + c.phi.coords[1].scale(l.c[1]) + c.phi.coords[2].scale(l.c[2]);
    EXPECT_EQ(pull.order_at(pt), 3) << pt.to_string();
  }
}

TEST(VanishingOrder, RootOrdersSumToDeclaredDegree) {
  // Products of linear factors over F_9, viewed as forms of a declared degree
  // that may exceed the actual degree (the excess is the order at infinity).
  std::mt19937_64 rng(7);
  const Field k = make_field(3, 2);
  const auto els = k.elements();
  std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    UniPoly f = UniPoly::constant(k, k.one() + k.one());
    const int roots = trial % 6;
    for (int i = 0; i < roots; ++i) f = f * (UniPoly::x(k) - UniPoly::constant(k, els[pick(rng)]));
    const int declared = roots + trial % 3;
    int sum = vanishing_order_at_infinity(f, declared);
    for (const auto& a : els) sum += vanishing_order(f, a);
    EXPECT_EQ(sum, declared);
  }
}

TEST(RationalIdentity, Examples) {
  const Field k = make_field(3, 1);
  const MPoly z = MPoly::var(k, 2, 0);
  const MPoly one = MPoly::constant(k, 2, k.one());
  EXPECT_TRUE(rational_identity(RationalExpr(z, z), RationalExpr(one)));
  EXPECT_FALSE(rational_identity(RationalExpr(z), RationalExpr(z + one)));
  try {
    RationalExpr(z, MPoly(k, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroDenominator);
  }
}

TEST(RationalIdentity, EquivalenceOnFixtures) {
  const Field k = make_field(5, 1);
  const MPoly z = MPoly::var(k, 2, 0), t = MPoly::var(k, 2, 1);
  const MPoly one = MPoly::constant(k, 2, k.one());
  const RationalExpr a(z * t, t * t), b(z, t), c(z * z, z * t);
  EXPECT_TRUE(rational_identity(a, a));
  EXPECT_TRUE(rational_identity(a, b));
  EXPECT_TRUE(rational_identity(b, a));
  EXPECT_TRUE(rational_identity(b, c));
  EXPECT_TRUE(rational_identity(a, c));
  EXPECT_FALSE(rational_identity(a, RationalExpr(z + one, t)));
}

TEST(BinaryForm, OrderAtInfinityUsesDeclaredDegree) {
  const Field k = make_field(3, 1);
  const BinaryForm s = BinaryForm::s(k), t = BinaryForm::t(k);
  const BinaryForm f = s * s * t;  // degree 3, dehomogenized to t
  EXPECT_EQ(f.order_at(P1Point::infinity(k)), 2);
  EXPECT_EQ(f.order_at(P1Point::affine(k.zero())), 1);
}

TEST(MPoly, CanonicalText) {
  const Field k = make_field(3, 1);
  const MPoly x0 = MPoly::var(k, 3, 0), x1 = MPoly::var(k, 3, 1), x2 = MPoly::var(k, 3, 2);
  const MPoly f = x2 * x2 + x0 * x1.scale(k.from_int(-1)) + x0 * x0;
  EXPECT_EQ(f.to_string(), "x0^2+2*x0*x1+x2^2");
}
