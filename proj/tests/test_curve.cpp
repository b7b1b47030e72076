#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "bh/curve.hpp"

using namespace bh;

namespace {

const std::vector<std::uint32_t> kSupported{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};

P2Point pt3(const Field& k, int a, int b, int c) { return {k.from_int(a), k.from_int(b), k.from_int(c)}; }

// The defining form written out term by term, independently of defining_form.
MPoly reference_form(const PrimePower& q, const Field& k) {
  const MPoly x0 = MPoly::var(k, 3, 0), x1 = MPoly::var(k, 3, 1), x2 = MPoly::var(k, 3, 2);
  auto pw = [](const MPoly& m, std::uint32_t e) {
    MPoly r = MPoly::constant(m.field(), 3, m.field().one());
    for (std::uint32_t i = 0; i < e; ++i) r = r * m;
    return r;
  };
  MPoly f = pw(x0, q.q) * x1 + x0 * pw(x1, q.q);
  if (q.p == 2) {
    f = f + pw(x2, q.q + 1);
    for (std::uint32_t e = 1; 2 * e <= q.q; e *= 2) f = f + pw(x0, e) * pw(x1, e) * pw(x2, q.q + 1 - 2 * e);
    return f;
  }
  // 2(x0^q x1 + x0 x1^q) - x2^(q+1) - (x2^2 - 4 x0 x1)^((q+1)/2)
  const MPoly disc = x2 * x2 - (x0 * x1).scale(k.from_int(4));
  return f.scale(k.from_int(2)) - pw(x2, q.q + 1) - pw(disc, (q.q + 1) / 2);
}

}  // namespace

TEST(Parametrization, Examples) {
  const BhCurve c2 = BhCurve::make(PrimePower::of(2));
  EXPECT_EQ(c2.phi.coords[0].to_string(), "s^3");
  EXPECT_EQ(c2.phi.coords[1].to_string(), "t^3");
  EXPECT_EQ(c2.phi.coords[2].to_string(), "s*t^2+s^2*t");

  const BhCurve c3 = BhCurve::make(PrimePower::of(3), 2, detail::FpPoly{1, 0, 1});
  EXPECT_EQ(c3.phi.eval(P1Point::affine(c3.field.gen())), pt3(c3.field, 1, 1, 0));
  for (std::uint32_t q : {2u, 5u, 9u}) {
    const BhCurve c = BhCurve::make(PrimePower::of(q));
    EXPECT_EQ(c.phi.eval(P1Point::affine(c.field.zero())), pt3(c.field, 1, 0, 0));
  }
}

TEST(Parametrization, FieldTooSmall) {
  try {
    bh_parametrization(PrimePower::of(3), make_field(3, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldTooSmall);
  }
}

TEST(DefiningForm, Examples) {
  const Field f2 = make_field(2, 1);
  EXPECT_EQ(defining_form(PrimePower::of(2), f2).to_string(), "x0^2*x1+x0*x1^2+x0*x1*x2+x2^3");
  for (std::uint32_t q : {3u, 5u}) {
    const Field k = make_field(q, 1);
    const MPoly x0 = MPoly::var(k, 3, 0), x1 = MPoly::var(k, 3, 1), x2 = MPoly::var(k, 3, 2);
    const MPoly two = MPoly::constant(k, 3, k.from_int(2));
    // q=3: ... - (x2^2 - x1 x0)^2;  q=5: ... - (x2^2 + x0 x1)^3.
    const MPoly expected = q == 3 ? two * (x0.pow(3) * x1 + x0 * x1.pow(3)) - x2.pow(4) - (x2 * x2 - x1 * x0).pow(2)
                                  : two * (x0.pow(5) * x1 + x0 * x1.pow(5)) - x2.pow(6) - (x2 * x2 + x0 * x1).pow(3);
    EXPECT_EQ(defining_form(PrimePower::of(q), k).poly(), expected) << "q=" << q;
  }
}

TEST(DefiningForm, MatchesTermByTermReference) {
  for (std::uint32_t q : kSupported) {
    const PrimePower pp = PrimePower::of(q);
    const Field k = make_field(pp.p, 1);
    EXPECT_EQ(defining_form(pp, k).poly(), reference_form(pp, k)) << "q=" << q;
  }
}

TEST(VerifyOnCurve, AllSupportedQ) {
  for (std::uint32_t q : kSupported) EXPECT_TRUE(verify_on_curve(PrimePower::of(q))) << "q=" << q;
}

TEST(VerifyOnCurve, PointwiseOracleBeyondBezoutBound) {
  // F(phi(t)) has degree (q+1)^2; vanishing at more points proves the identity.
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    const PrimePower pp = PrimePower::of(q);
    std::uint32_t n = 2 * pp.nu;
    while (std::pow(double(pp.p), double(n)) <= double((q + 1) * (q + 1))) n += 2 * pp.nu;
    const Field k = make_field(pp.p, n);
    const MPoly f = reference_form(pp, k);
    std::size_t zeros = 0;
    for (const auto& t : k.elements()) {
      const std::array<Elem, 3> x{k.one(), t.pow(q + 1), t.pow(q) + t};
      zeros += f.evaluate(x).is_zero();
    }
    EXPECT_EQ(zeros, k.order()) << "q=" << q;
    EXPECT_GT(zeros, std::size_t((q + 1) * (q + 1)));
  }
}

TEST(VerifyOnCurve, PerturbedFormFails) {
  for (std::uint32_t q : {2u, 3u, 9u}) {
    const BhCurve c = BhCurve::make(PrimePower::of(q));
    EXPECT_FALSE(vanishes_on_parametrization(perturbed_form(c.form), c.phi));
  }
}

TEST(Nodes, Examples) {
  const BhCurve c3 = BhCurve::make(PrimePower::of(3), 2, detail::FpPoly{1, 0, 1});
  const auto n3 = nodes(c3);
  ASSERT_EQ(n3.size(), 3u);
  std::set<P2Point> images;
  for (const auto& n : n3) images.insert(n.image);
  EXPECT_EQ(images, (std::set<P2Point>{pt3(c3.field, 1, 1, 0), pt3(c3.field, 1, 2, 1), pt3(c3.field, 1, 2, 2)}));
  EXPECT_EQ(nodes(BhCurve::make(PrimePower::of(5))).size(), 10u);
  EXPECT_EQ(nodes(BhCurve::make(PrimePower::of(4))).size(), 6u);
}

TEST(Nodes, CountExhaustionAndStructure) {
  for (std::uint32_t q : kSupported) {
    const BhCurve c = BhCurve::make(PrimePower::of(q));
    const auto ns = nodes(c);
    ASSERT_EQ(ns.size(), (std::size_t(q) * q - q) / 2) << "q=" << q;
    std::set<std::uint32_t> params;
    for (const auto& n : ns) {
      EXPECT_TRUE(n.singular);
      EXPECT_TRUE(n.ordinary);
      EXPECT_EQ(c.phi.eval(n.tau), c.phi.eval(n.tau_conj));
      params.insert(n.tau.t.value());
      params.insert(n.tau_conj.t.value());
    }
    // Together with P^1(F_q) the node parameters exhaust P^1(F_{q^2}).
    std::size_t fq = 0;
    for (const auto& e : c.field.elements()) fq += c.in_fq(e);
    EXPECT_EQ(params.size() + fq + 1, std::size_t(q) * q + 1);
    EXPECT_TRUE(singular_parameters_certified(c)) << "q=" << q;
  }
}

TEST(TangentLine, Examples) {
  const PrimePower q3 = PrimePower::of(3);
  const Field k = make_field(3, 2, detail::FpPoly{1, 0, 1});
  EXPECT_EQ(tangent_line(P1Point::affine(k.zero()), q3), Line::make(k.zero(), k.one(), k.zero()));
  EXPECT_EQ(tangent_line(P1Point::affine(k.one()), q3), Line::make(k.one(), k.one(), -k.one()));
  // t = alpha: x + alpha*y - 1 = 0 in the chart x0 = 1.
  EXPECT_EQ(tangent_line(P1Point::affine(k.gen()), q3), Line::make(-k.one(), k.one(), k.gen()));
  EXPECT_EQ(tangent_line(P1Point::infinity(k), q3), Line::make(k.one(), k.zero(), k.zero()));
}

TEST(LineMeetCurve, NodeOverF4) {
  const BhCurve c = BhCurve::make(PrimePower::of(2));
  const Elem w = c.field.gen();
  ASSERT_FALSE(c.in_fq(w));
  const auto meet = line_meet_curve(tangent_line(P1Point::affine(w), c.q), c);
  ASSERT_EQ(meet.size(), 1u);
  EXPECT_EQ(meet[0].point, pt3(c.field, 1, 1, 1));
  EXPECT_EQ(meet[0].multiplicity, 3);
  ASSERT_EQ(meet[0].branches.size(), 2u);
  std::multiset<int> orders{meet[0].branches[0].order, meet[0].branches[1].order};
  EXPECT_EQ(orders, (std::multiset<int>{1, 2}));
}

TEST(LineMeetCurve, GenericPointOverF8) {
  const PrimePower q = PrimePower::of(2);
  const BhCurve c = BhCurve::over(q, make_field(2, 6));
  for (const auto& t : c.field.elements()) {
    if (!(t.pow(3) == t + c.field.one())) continue;
    const auto meet = line_meet_curve(tangent_line(P1Point::affine(t), q), c);
    ASSERT_EQ(meet.size(), 2u);
    const P2Point here = c.phi.eval(P1Point::affine(t));
    const P2Point second{c.field.one(), t.pow(6), t.pow(4) + t.pow(2)};
    for (const auto& m : meet) {
      if (m.point == here) EXPECT_EQ(m.multiplicity, 2);
      else {
        EXPECT_EQ(m.point, second);
        EXPECT_EQ(m.multiplicity, 1);
      }
    }
  }
}

TEST(LineMeetCurve, SearchFieldTooSmall) {
  // A line through no F_4-point of B other than a simple one leaves roots outside F_4.
  const BhCurve c = BhCurve::make(PrimePower::of(2));
  bool thrown = false;
  for (const auto& a : c.field.elements())
    for (const auto& b : c.field.elements()) {
      try {
        line_meet_curve(Line::make(a, b, c.field.one()), c);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SearchFieldTooSmall);
        thrown = true;
      }
    }
  EXPECT_TRUE(thrown);
}

TEST(TangentLines, MultiplicitiesSumAndNodeAvoidance) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const PrimePower pp = PrimePower::of(q);
    const BhCurve c = BhCurve::make(pp, 4);
    std::vector<P2Point> node_images;
    for (const auto& n : nodes(c)) node_images.push_back(n.image);
    for (const auto& pt : p1_points(c.field)) {
      const TangentReport r = tangent_report(c, pt, node_images);
      EXPECT_EQ(r.total, static_cast<int>(q) + 1);
      EXPECT_TRUE(r.ok()) << "q=" << q << " P=" << pt.to_string();
    }
  }
}

TEST(Inflections, Examples) {
  const auto i2 = inflection_points(BhCurve::make(PrimePower::of(2)));
  EXPECT_EQ(i2.size(), 3u);
  const BhCurve c3 = BhCurve::make(PrimePower::of(3));
  const auto i3 = inflection_points(c3);
  ASSERT_EQ(i3.size(), 4u);
  std::set<P2Point> node_images;
  for (const auto& n : nodes(c3)) node_images.insert(n.image);
  for (const auto& r : i3) {
    EXPECT_EQ(r.contact_order, 4);
    EXPECT_TRUE(r.smooth);
    EXPECT_TRUE(r.tangent_matches_gradient);
    EXPECT_EQ(node_images.count(r.point), 0u);
  }
}

TEST(DualConic, Examples) {
  for (std::uint32_t q : kSupported) EXPECT_TRUE(dual_conic_check(PrimePower::of(q))) << "q=" << q;
  const DualConicReport r = dual_conic_report(PrimePower::of(5));
  EXPECT_EQ(r.inseparable_degree, 5);
  const Field k = make_field(5, 1);
  const MPoly x0 = MPoly::var(k, 3, 0), x1 = MPoly::var(k, 3, 1), x2 = MPoly::var(k, 3, 2);
  const HomogForm perturbed(x0 * x1 - (x2 * x2).scale(k.from_int(2)));
  EXPECT_FALSE(dual_conic_report(PrimePower::of(5), perturbed).on_conic);
}

TEST(Coxeter, SupportedQ) {
  for (std::uint32_t q : kSupported) EXPECT_TRUE(coxeter_model_check(PrimePower::of(q))) << "q=" << q;
}
