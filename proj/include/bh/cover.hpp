#pragma once

// Cyclic covers S_d : w^d = F(x0, x1, x2) in P(c,1,1,1), c = (q+1)/d, the
// projection M -> P^2 of degree 2q and the explicit rational parametrization
// of the incidence surface.

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bh/curve.hpp"
#include "bh/error.hpp"
#include "bh/field.hpp"
#include "bh/poly.hpp"

namespace bh {

struct SingularPointRecord {
  std::array<Elem, 4> coords;  // (w, x0, x1, x2)
  std::string type;            // "A_{d-1}"
  NodeRecord node;
  bool partials_vanish = false;
  bool quadratic_cone_is_tangent_pair = false;  // lowest term = k * lambda_u * lambda_v
};

struct CoverSpec {
  PrimePower q;
  int d = 0;
  int c = 0;
  std::vector<int> weights;  // (c, 1, 1, 1) on (w, x0, x1, x2)
  BhCurve curve;
  HomogForm surface;  // w^d - F
  std::vector<SingularPointRecord> singular_points;

  std::string signature() const {
    return "(" + std::to_string(c) + ",1,1,1)";
  }
  std::string surface_string() const {
    static const std::vector<std::string> names{"w", "x0", "x1", "x2"};
    return surface.to_string(names);
  }
  bool singular_locus_ok() const {
    const std::size_t expected = (std::size_t(q.q) * q.q - q.q) / 2;
    if (singular_points.size() != expected) return false;
    for (const auto& s : singular_points)
      if (!s.partials_vanish || !s.quadratic_cone_is_tangent_pair) return false;
    return true;
  }
};

/// F lifted to the four variables (w, x0, x1, x2).
inline MPoly lift_to_w(const MPoly& f) {
  MPoly r(f.field(), 4);
  for (const auto& [m, c] : f.terms()) r = r + MPoly::monomial(f.field(), 4, Monomial{0, m[0], m[1], m[2]}, c);
  return r;
}

/// Lowest-order part of F at a node: in the affine chart of the first nonzero
/// coordinate, the Taylor expansion starts with kappa * lambda_u * lambda_v
/// where lambda_u, lambda_v are the two branch tangents. Returns kappa.
inline std::optional<Elem> node_cone_constant(const HomogForm& f, const NodeRecord& n) {
  const Field& k = f.field();
  std::size_t j = 0;
  while (n.image[j].is_zero()) ++j;
  const P2Point p = normalize_projective<3>(n.image);
  const Elem pj = p[j];
  // Local coordinates y_a, y_b for the two other indices.
  std::array<std::size_t, 2> free{};
  for (std::size_t i = 0, w = 0; i < 3; ++i)
    if (i != j) free[w++] = i;
  std::vector<MPoly> subs(3, MPoly(k, 2));
  subs[j] = MPoly::constant(k, 2, pj);
  for (int a = 0; a < 2; ++a) {
    const std::size_t i = free[static_cast<std::size_t>(a)];
    subs[i] = MPoly::constant(k, 2, p[i]) + MPoly::var(k, 2, a);
  }
  const MPoly local = f.poly().compose(subs);
  MPoly low(k, 2), quad(k, 2);
  for (const auto& [m, c] : local.terms()) {
    const int deg = m[0] + m[1];
    if (deg < 2) low = low + MPoly::monomial(k, 2, m, c);
    if (deg == 2) quad = quad + MPoly::monomial(k, 2, m, c);
  }
  if (!low.is_zero() || quad.is_zero()) return std::nullopt;
  auto local_line = [&](const Line& l) {
    const std::array<Elem, 2> co{l.c[free[0]], l.c[free[1]]};
    return MPoly::linear(k, std::span<const Elem>(co));
  };
  const MPoly prod = local_line(n.tangent_tau) * local_line(n.tangent_conj);
  const auto& [m0, c0] = *prod.terms().begin();
  const Elem kappa = quad.coeff(m0) / c0;
  if (kappa.is_zero() || !(quad == prod.scale(kappa))) return std::nullopt;
  return kappa;
}

inline bool node_quadratic_cone_check(const HomogForm& f, const NodeRecord& n) {
  return node_cone_constant(f, n).has_value();
}

inline CoverSpec build_cover(const PrimePower& q, int d, std::optional<detail::FpPoly> modulus = std::nullopt) {
  if (d <= 1 || (q.q + 1) % static_cast<std::uint32_t>(d) != 0)
    throw Error(Errc::NotADivisor, std::to_string(d) + " is not a divisor > 1 of q+1 = " + std::to_string(q.q + 1));
  CoverSpec s{q, d, static_cast<int>((q.q + 1) / static_cast<std::uint32_t>(d)), {}, BhCurve::make(q, 2, modulus), {}, {}};
  s.weights = {s.c, 1, 1, 1};
  const Field& k = s.curve.field;
  const MPoly w = MPoly::var(k, 4, 0);
  s.surface = HomogForm(w.pow(static_cast<std::uint64_t>(d)) - lift_to_w(s.curve.form.poly()), s.weights);

  std::array<MPoly, 4> partials;
  for (int i = 0; i < 4; ++i) partials[static_cast<std::size_t>(i)] = s.surface.partial(i);
  for (const auto& n : nodes(s.curve)) {
    SingularPointRecord r;
    const P2Point x = normalize_projective<3>(n.image);
    r.coords = {k.zero(), x[0], x[1], x[2]};
    r.type = "A_" + std::to_string(d - 1);
    r.node = n;
    r.partials_vanish = s.surface.evaluate(r.coords).is_zero();
    for (const auto& pd : partials) r.partials_vanish = r.partials_vanish && pd.evaluate(r.coords).is_zero();
    r.quadratic_cone_is_tangent_pair = node_quadratic_cone_check(s.curve.form, n);
    s.singular_points.push_back(std::move(r));
  }
  return s;
}

/// Proper divisors d > 1 of q+1, ascending.
inline std::vector<int> cover_degrees(const PrimePower& q) {
  std::vector<int> out;
  for (std::uint32_t d = 2; d <= q.q + 1; ++d)
    if ((q.q + 1) % d == 0) out.push_back(static_cast<int>(d));
  return out;
}

struct ProjectionReport {
  std::string quadratic;      // u^2 - y u + x with u = t^q
  std::string discriminant;   // as a form in x, y
  bool discriminant_nonzero = false;
  bool derivative_nonzero = false;  // d/du of the quadratic, used when p = 2
  bool separable = false;
  bool irreducible = false;  // linear in x with unit coefficient
  int total_degree = 0;
  int separable_degree = 0;
  int inseparable_degree = 0;
  bool ok(const PrimePower& q) const {
    return separable && irreducible && total_degree == 2 * static_cast<int>(q.q) && separable_degree == 2 &&
           inseparable_degree == static_cast<int>(q.q);
  }
};

/// The relation x - t^q y + t^(2q) = 0 over F_p(x, y), read as a quadratic in
/// u = t^q. Variables of the forms below: (u, x, y).
inline ProjectionReport projection_degree_check(const PrimePower& q) {
  const Field k = make_field(q.p, 1);
  const MPoly u = MPoly::var(k, 3, 0), x = MPoly::var(k, 3, 1), y = MPoly::var(k, 3, 2);
  const MPoly quadratic = u * u - y * u + x;
  static const std::vector<std::string> names{"u", "x", "y"};
  ProjectionReport r;
  r.quadratic = quadratic.to_string(names);

  // Coefficients in u: a u^2 + b u + c.
  MPoly a(k, 3), b(k, 3), c(k, 3);
  for (const auto& [m, co] : quadratic.terms()) {
    const Monomial rest{0, m[1], m[2], 0};
    const MPoly term = MPoly::monomial(k, 3, rest, co);
    if (m[0] == 2) a = a + term;
    if (m[0] == 1) b = b + term;
    if (m[0] == 0) c = c + term;
  }
  const MPoly four = MPoly::constant(k, 3, k.from_int(4));
  const MPoly disc = b * b - four * a * c;
  r.discriminant = disc.to_string(names);
  const MPoly du = quadratic.partial(0);
  r.derivative_nonzero = !du.is_zero();
  if (q.p == 2) {
    // The discriminant collapses to a square; separability instead needs the
    // u-derivative to be nonzero.
    r.discriminant_nonzero = !disc.is_zero();
    r.separable = r.derivative_nonzero;
  } else {
    r.discriminant_nonzero = !disc.is_zero();
    r.separable = r.discriminant_nonzero;
  }

  // t^(2q) - y t^q + x is linear in x with coefficient 1, hence irreducible.
  const MPoly tx = quadratic.partial(1);
  r.irreducible = tx == MPoly::constant(k, 3, k.one());
  r.total_degree = 2 * static_cast<int>(q.q);
  r.separable_degree = r.separable ? 2 : 1;
  r.inseparable_degree = r.total_degree / r.separable_degree;
  return r;
}

struct UnirationalityReport {
  bool telescoping = false;  // y - t^q - t == (t - t^(q^2)) / (z^d - 1)
  bool line_relation = false;  // x - t^q y + t^(2q) == 0
  bool cover_equation = false;  // z^d == (y - t^q - t)^q (y - t^(q^2) - t^q)
  bool ok() const { return telescoping && line_relation && cover_equation; }
};

/// Rational identities in F_p(z~, t); `flip_sign` replaces -(t^(q^2)+t^q) by
/// +(t^(q^2)+t^q) in the y-formula.
inline UnirationalityReport unirationality_check(const PrimePower& q, int d, bool flip_sign = false) {
  if (d <= 1 || (q.q + 1) % static_cast<std::uint32_t>(d) != 0)
    throw Error(Errc::NotADivisor, std::to_string(d) + " is not a divisor > 1 of q+1");
  const int c = static_cast<int>(q.q + 1) / d;
  const Field k = make_field(q.p, 1);
  const MPoly zt = MPoly::var(k, 2, 0), t = MPoly::var(k, 2, 1);
  const MPoly one = MPoly::constant(k, 2, k.one());
  const std::uint64_t qq = q.q;
  const MPoly tq = t.pow(qq), tq2 = t.pow(qq * qq);
  const MPoly zd = zt.pow(static_cast<std::uint64_t>(d));

  const MPoly tail = tq2 + tq;
  const RationalExpr y(zd * (tq + t) + (flip_sign ? tail : -tail), zd - one);
  const RationalExpr x = RationalExpr(tq) * y - RationalExpr(tq * tq);
  const RationalExpr first = y - RationalExpr(tq + t);
  const RationalExpr second = y - RationalExpr(tq2 + tq);
  const RationalExpr z = RationalExpr(zt) * first.pow(static_cast<std::uint64_t>(c));

  UnirationalityReport r;
  r.telescoping = rational_identity(first, RationalExpr(t - tq2, zd - one));
  r.line_relation = rational_identity(x - RationalExpr(tq) * y + RationalExpr(tq * tq), RationalExpr(MPoly(k, 2)));
  r.cover_equation = rational_identity(z.pow(static_cast<std::uint64_t>(d)), first.pow(qq) * second);
  return r;
}

struct SectionReport {
  bool sigma1_on_line = false;
  bool sigmaq_on_line = false;
  bool intersection_in_fq2 = false;
  int intersection_count = 0;  // affine parameters where the sections meet
  std::size_t sampled = 0;
  std::size_t bookkeeping_ok = 0;  // sampled t with orders q at sigma_1, 1 at sigma_q
  bool ok() const {
    return sigma1_on_line && sigmaq_on_line && intersection_in_fq2 && sampled > 0 && bookkeeping_ok == sampled;
  }
};

/// sigma_1(t) = (t, t^(q+1), t^q + t) and sigma_q(t) = (t, t^(q^2+q), t^(q^2) + t^q)
/// against L = {x - t^q y + t^(2q) = 0}, and F restricted to the line l_t
/// through the two section points.
inline SectionReport section_check(const PrimePower& q, std::size_t max_samples = 64) {
  const Field kp = make_field(q.p, 1);
  const UniPoly t = UniPoly::x(kp);
  const std::uint64_t qq = q.q;
  const UniPoly tq = t.pow(qq);
  auto on_line = [&](const UniPoly& x, const UniPoly& y) { return (x - tq * y + tq * tq).is_zero(); };
  SectionReport r;
  r.sigma1_on_line = on_line(t.pow(qq + 1), tq + t);
  r.sigmaq_on_line = on_line(t.pow(qq * qq + qq), t.pow(qq * qq) + tq);

  const UniPoly ex = t.pow(qq * qq + qq) - t.pow(qq + 1);
  const UniPoly ey = t.pow(qq * qq) - t;
  const UniPoly g = UniPoly::gcd(ex, ey);
  r.intersection_in_fq2 = UniPoly::divmod(ey, g).second.is_zero();
  r.intersection_count = g.degree();

  // Generic parameters: elements of F_{q^4} outside F_{q^2}.
  const BhCurve c = BhCurve::over(q, extension_field(q, 4));
  for (const auto& e : c.field.elements()) {
    if (r.sampled >= max_samples) break;
    if (c.in_fq2(e)) continue;
    ++r.sampled;
    const P2Point a = c.phi.eval(P1Point::affine(e));
    const P2Point b = c.phi.eval(P1Point::affine(e.pow(qq)));
    std::vector<BinaryForm> subs;
    for (std::size_t i = 0; i < 3; ++i) subs.push_back(BinaryForm::linear(c.field, a[i], b[i]));
    const BinaryForm restricted = compose(c.form, subs);
    const int at_a = restricted.order_at(P1Point::affine(c.field.zero()));
    const int at_b = restricted.order_at(P1Point::infinity(c.field));
    r.bookkeeping_ok += at_a == static_cast<int>(qq) && at_b == 1;
  }
  return r;
}

struct FiberSplitting {
  P1Point param;
  Line line;
  int eliminated = 0;          // coordinate solved for on the line
  std::array<Elem, 3> m;       // linear form vanishing at phi(P), zero on `eliminated`
  Elem c0;                     // F|_line = c0 * m^(q+1)
  bool is_power = false;
  int splitting_degree = 0;    // components defined over F_{q^(2 * splitting_degree)}
  std::vector<Elem> kappas;    // kappa^d = c0, when splitting_degree = 1
  int components = 0;
  bool ok(int d) const {
    return is_power && components == d && (splitting_degree != 1 || static_cast<int>(kappas.size()) == d);
  }
};

/// Restricts F to l_P for P in P^1(F_{q^2}); the fiber w^d = c0 m^(q+1) splits
/// into the d components w = kappa m^c, kappa^d = c0.
inline FiberSplitting fiber_splitting_check(const CoverSpec& s, const P1Point& pt) {
  const BhCurve& c = s.curve;
  if (!c.in_fq2(pt)) throw Error(Errc::NotRationalOverFq2, pt.to_string() + " is not F_{q^2}-rational");
  const Field& k = c.field;
  FiberSplitting r;
  r.param = pt;
  r.line = tangent_line(pt, c.q);
  r.eliminated = pt.is_infinity() ? 0 : 1;
  const std::size_t e = static_cast<std::size_t>(r.eliminated);
  std::array<std::size_t, 2> free{};
  for (std::size_t i = 0, w = 0; i < 3; ++i)
    if (i != e) free[w++] = i;

  // x_e = -(sum of the other terms) / c_e, over binary forms in the free pair.
  std::vector<BinaryForm> subs(3);
  subs[free[0]] = BinaryForm::s(k);
  subs[free[1]] = BinaryForm::t(k);
  const Elem inv = r.line.c[e].inverse();
  subs[e] = BinaryForm::linear(k, -r.line.c[free[0]] * inv, -r.line.c[free[1]] * inv);
  const BinaryForm restricted = compose(c.form, subs);

  const P2Point img = c.phi.eval(pt);
  std::array<Elem, 3> m{k.zero(), k.zero(), k.zero()};
  m[free[0]] = img[free[1]];
  m[free[1]] = -img[free[0]];
  const Elem scale = m[free[1]].is_zero() ? m[free[0]].inverse() : m[free[1]].inverse();
  for (auto& x : m) x *= scale;
  r.m = m;
  const BinaryForm mf = BinaryForm::linear(k, m[free[0]], m[free[1]]);
  const BinaryForm mpow = mf.pow(c.q.q + 1);
  const auto& lead_idx = mpow.poly().degree();
  r.c0 = restricted.coeff(lead_idx) / mpow.coeff(lead_idx);
  r.is_power = !r.c0.is_zero() && restricted == mpow.scale(r.c0);
  if (!r.is_power) return r;

  const std::uint64_t q2m1 = std::uint64_t(c.q.q) * c.q.q - 1;
  const Elem beta = r.c0.pow(q2m1 / static_cast<std::uint64_t>(s.d));
  r.splitting_degree = 1;
  for (Elem x = beta; !x.is_one(); x *= beta) ++r.splitting_degree;
  if (r.splitting_degree == 1) {
    for (const auto& x : k.elements())
      if (c.in_fq2(x) && x.pow(static_cast<std::uint64_t>(s.d)) == r.c0) r.kappas.push_back(x);
    r.components = static_cast<int>(r.kappas.size());
  } else {
    // c0^(1/d) generates F_{q^(2m)}; its d conjugate-by-zeta roots are distinct since p does not divide d.
    r.components = s.d;
  }
  return r;
}

}  // namespace bh
