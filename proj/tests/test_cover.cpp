#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bh/cover.hpp"

using namespace bh;

namespace {

std::vector<std::uint32_t> small_q() { return {2, 3, 4, 5, 7, 8, 9}; }

}  // namespace

TEST(BuildCover, QuarticExample) {
  const CoverSpec s = build_cover(PrimePower::of(3), 4, detail::FpPoly{1, 0, 1});
  const Field& k = s.curve.field;
  const MPoly w = MPoly::var(k, 4, 0);
  EXPECT_EQ(s.surface.poly(), w.pow(4) - lift_to_w(s.curve.form.poly()));
  EXPECT_EQ(s.signature(), "(1,1,1,1)");
  ASSERT_EQ(s.singular_points.size(), 3u);
  for (const auto& sp : s.singular_points) EXPECT_EQ(sp.type, "A_3");
  EXPECT_TRUE(s.singular_locus_ok());
}

TEST(BuildCover, SexticAndCubicExamples) {
  const CoverSpec s = build_cover(PrimePower::of(5), 2);
  EXPECT_EQ(s.signature(), "(3,1,1,1)");
  EXPECT_EQ(s.singular_points.size(), 10u);
  EXPECT_TRUE(s.singular_locus_ok());
  EXPECT_TRUE(s.surface.poly().is_homogeneous(s.weights));
  const CoverSpec c = build_cover(PrimePower::of(2), 3);
  EXPECT_EQ(c.singular_points.size(), 1u);
  EXPECT_TRUE(c.singular_locus_ok());
}

TEST(BuildCover, NotADivisor) {
  for (int d : {1, 3, 5}) {
    try {
      build_cover(PrimePower::of(3), d);
      FAIL() << d;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::NotADivisor);
    }
  }
}

TEST(BuildCover, SingularLocusForEveryDivisor) {
  for (std::uint32_t q : small_q())
    for (int d : cover_degrees(PrimePower::of(q))) {
      const CoverSpec s = build_cover(PrimePower::of(q), d);
      EXPECT_TRUE(s.singular_locus_ok()) << "q=" << q << " d=" << d;
      std::set<P2Point> over;
      for (const auto& sp : s.singular_points) {
        EXPECT_TRUE(sp.coords[0].is_zero());
        over.insert(normalize_projective<3>(sp.node.image));
      }
      EXPECT_EQ(over.size(), s.singular_points.size());
    }
}

TEST(Projection, Discriminants) {
  const ProjectionReport r2 = projection_degree_check(PrimePower::of(2));
  EXPECT_EQ(r2.discriminant, "y^2");
  EXPECT_FALSE(r2.discriminant_nonzero && r2.discriminant != "y^2");
  EXPECT_TRUE(r2.derivative_nonzero);
  EXPECT_TRUE(r2.ok(PrimePower::of(2)));
  const ProjectionReport r3 = projection_degree_check(PrimePower::of(3));
  EXPECT_EQ(r3.discriminant, "y^2+2*x");
  const ProjectionReport r5 = projection_degree_check(PrimePower::of(5));
  EXPECT_EQ(r5.discriminant, "y^2+x");
  for (std::uint32_t q : small_q()) {
    const ProjectionReport r = projection_degree_check(PrimePower::of(q));
    EXPECT_TRUE(r.ok(PrimePower::of(q)));
    EXPECT_EQ(r.total_degree, 2 * static_cast<int>(q));
    EXPECT_EQ(r.inseparable_degree, static_cast<int>(q));
  }
}

TEST(Unirationality, EveryDivisorUpToNine) {
  for (std::uint32_t q : small_q())
    for (int d : cover_degrees(PrimePower::of(q))) {
      const UnirationalityReport r = unirationality_check(PrimePower::of(q), d);
      EXPECT_TRUE(r.telescoping) << q << "," << d;
      EXPECT_TRUE(r.cover_equation) << q << "," << d;
    }
}

TEST(Unirationality, FlippedSignFailsInOddCharacteristic) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u})
    for (int d : cover_degrees(PrimePower::of(q))) EXPECT_FALSE(unirationality_check(PrimePower::of(q), d, true).ok());
  // In characteristic 2 the flip is the identity, so the identity still holds.
  EXPECT_TRUE(unirationality_check(PrimePower::of(4), 5, true).ok());
}

TEST(Unirationality, PointwiseOracle) {
  // Evaluate the substitution at random (z, t) with z^d != 1 and compare both sides.
  std::mt19937_64 rng(99);
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const PrimePower pp = PrimePower::of(q);
    const Field k = make_field(pp.p, 4 * pp.nu);
    const auto els = k.elements();
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    for (int d : cover_degrees(pp)) {
      const int c = static_cast<int>(q + 1) / d;
      int checked = 0;
      while (checked < 40) {
        const Elem zt = els[pick(rng)], t = els[pick(rng)];
        const Elem zd = zt.pow(std::uint64_t(d));
        if ((zd - k.one()).is_zero()) continue;
        const Elem tq = t.pow(q), tq2 = tq.pow(q);
        const Elem y = (zd * (tq + t) - (tq2 + tq)) / (zd - k.one());
        const Elem z = zt * (y - tq - t).pow(std::uint64_t(c));
        EXPECT_EQ(z.pow(std::uint64_t(d)), (y - tq - t).pow(q) * (y - tq2 - tq));
        ++checked;
      }
    }
  }
}

TEST(Sections, BookkeepingAndIntersections) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const SectionReport r = section_check(PrimePower::of(q), 16);
    EXPECT_TRUE(r.ok()) << "q=" << q;
  }
}

TEST(FiberSplitting, Examples) {
  const CoverSpec s3 = build_cover(PrimePower::of(3), 4);
  const FiberSplitting f = fiber_splitting_check(s3, P1Point::affine(s3.curve.field.zero()));
  EXPECT_TRUE(f.is_power);
  EXPECT_EQ(f.components, 4);
  EXPECT_EQ(f.line, Line::make(s3.curve.field.zero(), s3.curve.field.one(), s3.curve.field.zero()));

  const CoverSpec s5 = build_cover(PrimePower::of(5), 2, detail::FpPoly{3, 0, 1});
  const FiberSplitting g = fiber_splitting_check(s5, P1Point::affine(s5.curve.field.gen()));
  EXPECT_TRUE(g.ok(2));
  EXPECT_EQ(g.components, 2);

  const CoverSpec big = build_cover(PrimePower::of(3), 2);
  CoverSpec wide = big;
  wide.curve = BhCurve::make(PrimePower::of(3), 4);
  bool thrown = false;
  for (const auto& e : wide.curve.field.elements())
    if (!wide.curve.in_fq2(e)) {
      try {
        fiber_splitting_check(wide, P1Point::affine(e));
      } catch (const Error& err) {
        thrown = err.code() == Errc::NotRationalOverFq2;
      }
      break;
    }
  EXPECT_TRUE(thrown);
}

TEST(FiberSplitting, AllRationalTangentLines) {
  for (std::uint32_t q : {3u, 5u})
    for (int d : cover_degrees(PrimePower::of(q))) {
      const CoverSpec s = build_cover(PrimePower::of(q), d);
      for (const auto& pt : p1_points(s.curve.field)) {
        const FiberSplitting f = fiber_splitting_check(s, pt);
        EXPECT_TRUE(f.ok(d)) << "q=" << q << " d=" << d << " P=" << pt.to_string();
        // Independent restatement: F vanishes on l_P only at phi(P).
        const Line l = tangent_line(pt, s.curve.q);
        EXPECT_TRUE(l.contains(s.curve.phi.eval(pt)));
        const Elem mp = f.m[0] * s.curve.phi.eval(pt)[0] + f.m[1] * s.curve.phi.eval(pt)[1] +
                        f.m[2] * s.curve.phi.eval(pt)[2];
        EXPECT_TRUE(mp.is_zero());
      }
    }
}
