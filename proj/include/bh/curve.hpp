#pragma once

// The degree-(q+1) rational plane curve B = phi(P^1),
//   phi: [s:t] -> [s^(q+1) : t^(q+1) : s t^q + s^q t],
// with its defining form, nodes, tangent lines and the dual conic.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bh/error.hpp"
#include "bh/field.hpp"
#include "bh/poly.hpp"

namespace bh {

using P2Point = std::array<Elem, 3>;

/// Scales so the first nonzero coordinate is 1.
template <std::size_t N>
std::array<Elem, N> normalize_projective(std::array<Elem, N> v) {
  for (const auto& e : v) {
    if (e.is_zero()) continue;
    const Elem inv = e.inverse();
    for (auto& x : v) x *= inv;
    return v;
  }
  throw Error(Errc::InvalidArgument, "zero vector is not a projective point");
}

template <std::size_t N>
std::string point_to_string(const std::array<Elem, N>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < N; ++i) out += (i ? ":" : "") + v[i].to_string();
  return out + "]";
}

inline P2Point cross(const P2Point& a, const P2Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero_vector(const P2Point& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

/// c0 x0 + c1 x1 + c2 x2 = 0, first nonzero coefficient 1.
struct Line {
  P2Point c;

  static Line make(const Elem& c0, const Elem& c1, const Elem& c2) { return {normalize_projective<3>({c0, c1, c2})}; }
  Elem eval(const P2Point& x) const { return c[0] * x[0] + c[1] * x[1] + c[2] * x[2]; }
  bool contains(const P2Point& x) const { return eval(x).is_zero(); }
  std::string to_string() const { return point_to_string(c); }
  friend bool operator==(const Line& a, const Line& b) { return a.c == b.c; }
};

/// A rational parametrization P^1 -> P^n by binary forms of common degree.
struct ParamCurve {
  std::vector<BinaryForm> coords;
  int degree = 0;

  P2Point eval(const P1Point& pt) const {
    return normalize_projective<3>({coords[0].eval(pt), coords[1].eval(pt), coords[2].eval(pt)});
  }
};

/// Working field F_{q^k} as a degree nu*k extension of F_p.
inline Field extension_field(const PrimePower& q, unsigned k, std::optional<detail::FpPoly> modulus = std::nullopt) {
  return make_field(q.p, q.nu * k, std::move(modulus));
}

/// phi over a field containing F_{q^2}.
inline ParamCurve bh_parametrization(const PrimePower& q, const Field& k) {
  if (k.characteristic() != q.p || k.degree() % (2 * q.nu) != 0)
    throw Error(Errc::FieldTooSmall, "field of order " + std::to_string(k.order()) + " does not contain F_" +
                                         std::to_string(std::uint64_t(q.q) * q.q));
  const BinaryForm s = BinaryForm::s(k), t = BinaryForm::t(k);
  ParamCurve c;
  c.degree = static_cast<int>(q.q) + 1;
  c.coords = {s.pow(q.q + 1), t.pow(q.q + 1), s * t.pow(q.q) + s.pow(q.q) * t};
  return c;
}

/// The defining form of B (degree q+1, coefficients in F_p).
inline HomogForm defining_form(const PrimePower& q, const Field& k) {
  if (k.characteristic() != q.p) throw Error(Errc::InvalidArgument, "field characteristic differs from p");
  const MPoly x0 = MPoly::var(k, 3, 0), x1 = MPoly::var(k, 3, 1), x2 = MPoly::var(k, 3, 2);
  if (q.p == 2) {
    MPoly f = x0.pow(q.q) * x1 + x0 * x1.pow(q.q) + x2.pow(q.q + 1);
    for (std::uint32_t i = 0; i < q.nu; ++i) {
      const std::uint32_t e = 1u << i;
      f = f + x0.pow(e) * x1.pow(e) * x2.pow(q.q + 1 - 2 * e);
    }
    return HomogForm(f);
  }
  const MPoly two = MPoly::constant(k, 3, k.from_int(2));
  const MPoly four = MPoly::constant(k, 3, k.from_int(4));
  MPoly f = two * (x0.pow(q.q) * x1 + x0 * x1.pow(q.q)) - x2.pow(q.q + 1) - (x2 * x2 - four * x1 * x0).pow((q.q + 1) / 2);
  return HomogForm(f);
}

/// The curve together with the field its points live in.
struct BhCurve {
  PrimePower q;
  Field field;
  ParamCurve phi;
  HomogForm form;

  /// Over F_{q^ext} (ext even), optionally with an explicit modulus.
  static BhCurve make(const PrimePower& q, unsigned ext = 2, std::optional<detail::FpPoly> modulus = std::nullopt) {
    return over(q, extension_field(q, ext, std::move(modulus)));
  }
  static BhCurve over(const PrimePower& q, const Field& k) {
    return BhCurve{q, k, bh_parametrization(q, k), defining_form(q, k)};
  }

  Elem q_elem(std::uint64_t v) const { return field.from_int(static_cast<std::int64_t>(v)); }
  bool in_fq(const Elem& e) const { return e.pow(q.q) == e; }
  bool in_fq2(const Elem& e) const { return e.pow(std::uint64_t(q.q) * q.q) == e; }
  bool in_fq(const P1Point& pt) const { return pt.is_infinity() || in_fq(pt.t); }
  bool in_fq2(const P1Point& pt) const { return pt.is_infinity() || in_fq2(pt.t); }

  /// Image of a parameter under the q-power Frobenius.
  P1Point frobenius(const P1Point& pt) const {
    return pt.is_infinity() ? pt : P1Point::affine(pt.t.pow(q.q));
  }

  std::array<Elem, 3> gradient(const P2Point& x) const {
    return {form.partial(0).evaluate(x), form.partial(1).evaluate(x), form.partial(2).evaluate(x)};
  }
  bool is_singular_point(const P2Point& x) const {
    const auto g = gradient(x);
    return form.evaluate(x).is_zero() && is_zero_vector(g);
  }
};

/// Exact identity check F(phi(s,t)) == 0 for a given form.
inline bool vanishes_on_parametrization(const HomogForm& f, const ParamCurve& phi) {
  return compose(f, phi.coords).is_zero();
}

/// F o phi == 0 as a polynomial identity in F_p[s,t].
inline bool verify_on_curve(const PrimePower& q) {
  const BhCurve c = BhCurve::make(q);
  return vanishes_on_parametrization(c.form, c.phi);
}

/// The defining form with one coefficient changed (its leading term's
/// coefficient incremented by 1); a non-identity witness.
inline HomogForm perturbed_form(const HomogForm& f) {
  const auto& terms = f.poly().terms();
  if (terms.empty()) throw Error(Errc::InvalidArgument, "cannot perturb the zero form");
  const auto& [m, c] = *terms.rbegin();
  const MPoly bump = MPoly::monomial(f.field(), f.nvars(), m, f.field().one());
  return HomogForm(f.poly() + bump, f.weights());
}

/// Tangent direction data of the branch of phi at a parameter: the tangent
/// line and the order k of the first Hasse derivative not proportional to the
/// point (k = 1 for a smooth branch).
struct BranchTangent {
  Line line;
  int order = 0;
};

inline BranchTangent branch_tangent(const ParamCurve& phi, const P1Point& pt) {
  std::array<UniPoly, 3> chart;
  for (std::size_t i = 0; i < 3; ++i) chart[i] = phi.coords[i].chart_poly(pt);
  const Elem at = BinaryForm::chart_coordinate(pt);
  const P2Point base{chart[0].eval(at), chart[1].eval(at), chart[2].eval(at)};
  for (std::size_t ord = 1; ord <= static_cast<std::size_t>(phi.degree); ++ord) {
    const P2Point d{chart[0].hasse(ord, at), chart[1].hasse(ord, at), chart[2].hasse(ord, at)};
    const P2Point line = cross(base, d);
    if (!is_zero_vector(line)) return {Line{normalize_projective<3>(line)}, static_cast<int>(ord)};
  }
  throw Error(Errc::InvalidArgument, "parametrization is constant near the point");
}

struct NodeRecord {
  P1Point tau;       // the representative with smaller packed value
  P1Point tau_conj;  // tau^q
  P2Point image;
  Line tangent_tau;
  Line tangent_conj;
  bool singular = false;  // F and all partials vanish at image
  bool ordinary = false;  // both branches smooth with distinct tangents
};

/// Nodes of B: parameter pairs {tau, tau^q} with tau in P^1(F_{q^2}) \ P^1(F_q).
inline std::vector<NodeRecord> nodes(const BhCurve& c) {
  std::vector<NodeRecord> out;
  for (const auto& e : c.field.elements()) {
    if (!c.in_fq2(e) || c.in_fq(e)) continue;
    const Elem conj = e.pow(c.q.q);
    if (conj.value() < e.value()) continue;
    NodeRecord r;
    r.tau = P1Point::affine(e);
    r.tau_conj = P1Point::affine(conj);
    r.image = c.phi.eval(r.tau);
    const P2Point other = c.phi.eval(r.tau_conj);
    const BranchTangent bt = branch_tangent(c.phi, r.tau), bc = branch_tangent(c.phi, r.tau_conj);
    r.tangent_tau = bt.line;
    r.tangent_conj = bc.line;
    r.singular = other == r.image && c.is_singular_point(r.image);
    r.ordinary = bt.order == 1 && bc.order == 1 && !(bt.line == bc.line) && bt.line.contains(r.image) &&
                 bc.line.contains(r.image);
    out.push_back(std::move(r));
  }
  return out;
}

/// Certifies that every parameter mapping to a singular point of B lies in
/// P^1(F_{q^2}) \ P^1(F_q): the gcd of the pulled-back partials splits over
/// the working field with all roots there, and infinity is not a root.
inline bool singular_parameters_certified(const BhCurve& c) {
  std::array<BinaryForm, 3> g;
  for (int i = 0; i < 3; ++i) g[static_cast<std::size_t>(i)] = c.form.poly().partial(i).compose(c.phi.coords, std::vector<int>{1, 1, 1});
  const P1Point inf = P1Point::infinity(c.field);
  if (std::min({g[0].order_at(inf), g[1].order_at(inf), g[2].order_at(inf)}) != 0) return false;
  UniPoly h = UniPoly::gcd(UniPoly::gcd(g[0].poly(), g[1].poly()), g[2].poly());
  if (h.is_zero()) return false;
  int found = 0;
  for (const auto& e : c.field.elements()) {
    if (!h.eval(e).is_zero()) continue;
    if (!c.in_fq2(e) || c.in_fq(e)) return false;
    found += vanishing_order(h, e);
  }
  return found == h.degree();
}

/// Tangent line l_P at phi(P) to the branch of P: x1 - t^q x2 + t^(2q) x0 = 0
/// for P = [1:t]; x0 = 0 for P = [0:1].
inline Line tangent_line(const P1Point& pt, const PrimePower& q) {
  if (pt.is_infinity()) return Line::make(pt.t, pt.s, pt.s);
  const Elem tq = pt.t.pow(q.q);
  return Line::make(tq * tq, Elem(pt.t.data(), 1), -tq);
}

struct BranchContact {
  P1Point param;
  int order = 0;
};

struct MeetPoint {
  P2Point point;
  int multiplicity = 0;
  std::vector<BranchContact> branches;
};

/// L pulled back along phi; orders at all parameters over the curve's field,
/// grouped by image point. Multiplicities sum to q+1.
inline std::vector<MeetPoint> line_meet_curve(const Line& line, const BhCurve& c) {
  const BinaryForm pull = c.phi.coords[0].scale(line.c[0]) + c.phi.coords[1].scale(line.c[1]) +
                          c.phi.coords[2].scale(line.c[2]);
  if (pull.is_zero()) throw Error(Errc::InvalidArgument, "line pulls back to zero");
  std::vector<MeetPoint> out;
  int total = 0;
  for (const auto& pt : p1_points(c.field)) {
    if (!pt.is_infinity() && !pull.poly().eval(pt.t).is_zero()) continue;
    if (pt.is_infinity() && pull.poly().degree() == pull.degree()) continue;
    const int ord = pull.order_at(pt);
    total += ord;
    const P2Point img = c.phi.eval(pt);
    auto it = std::find_if(out.begin(), out.end(), [&](const MeetPoint& m) { return m.point == img; });
    if (it == out.end()) {
      out.push_back({img, 0, {}});
      it = out.end() - 1;
    }
    it->multiplicity += ord;
    it->branches.push_back({pt, ord});
  }
  if (total != pull.degree())
    throw Error(Errc::SearchFieldTooSmall, "pullback does not split over F_" + std::to_string(c.field.order()));
  return out;
}

enum class TangentCase { Inflection, Node, Generic };

inline const char* to_string(TangentCase k) {
  switch (k) {
    case TangentCase::Inflection: return "inflection";
    case TangentCase::Node: return "node";
    default: return "generic";
  }
}

/// How l_P meets B, by where P lives: P in P^1(F_q) gives one contact of
/// order q+1; P a node parameter gives q+1 at the node split q + 1 between
/// the two branches; otherwise contact q at phi(P) and a transversal point
/// (t^(q^2+q), t^(q^2)+t^q).
struct TangentReport {
  P1Point param;
  TangentCase kind = TangentCase::Generic;
  Line line;
  std::vector<MeetPoint> meet;
  int total = 0;
  bool pattern_ok = false;
  bool second_point_ok = true;  // generic case only
  bool avoids_nodes = true;     // inflection and generic cases
  bool ok() const { return pattern_ok && second_point_ok && avoids_nodes; }
};

inline TangentReport tangent_report(const BhCurve& c, const P1Point& pt, const std::vector<P2Point>& node_images) {
  TangentReport r;
  r.param = pt;
  r.kind = c.in_fq(pt) ? TangentCase::Inflection : c.in_fq2(pt) ? TangentCase::Node : TangentCase::Generic;
  r.line = tangent_line(pt, c.q);
  r.meet = line_meet_curve(r.line, c);
  const int q = static_cast<int>(c.q.q);
  for (const auto& m : r.meet) r.total += m.multiplicity;
  const P2Point here = c.phi.eval(pt);
  auto order_of = [](const MeetPoint& m, const P1Point& at) {
    for (const auto& b : m.branches)
      if (b.param.s == at.s && b.param.t == at.t) return b.order;
    return 0;
  };
  switch (r.kind) {
    case TangentCase::Inflection:
      r.pattern_ok = r.meet.size() == 1 && r.meet[0].point == here && r.meet[0].multiplicity == q + 1 &&
                     r.meet[0].branches.size() == 1;
      break;
    case TangentCase::Node:
      r.pattern_ok = r.meet.size() == 1 && r.meet[0].point == here && r.meet[0].multiplicity == q + 1 &&
                     order_of(r.meet[0], pt) == q && order_of(r.meet[0], c.frobenius(pt)) == 1;
      break;
    case TangentCase::Generic: {
      const Elem tq = pt.t.pow(c.q.q), tq2 = tq.pow(c.q.q);
      const P2Point second = normalize_projective<3>({Elem(pt.t.data(), 1), tq2 * tq, tq2 + tq});
      if (r.meet.size() == 2 && r.meet[1].point == here) std::swap(r.meet[0], r.meet[1]);
      r.pattern_ok = r.meet.size() == 2 && r.meet[0].point == here && r.meet[0].multiplicity == q &&
                     order_of(r.meet[0], pt) == q && r.meet[1].multiplicity == 1;
      r.second_point_ok = r.meet.size() == 2 && r.meet[1].point == second;
      break;
    }
  }
  if (r.kind != TangentCase::Node)
    for (const auto& m : r.meet)
      for (const auto& n : node_images)
        if (m.point == n) r.avoids_nodes = false;
  return r;
}

struct InflectionRecord {
  P1Point param;
  P2Point point;
  int contact_order = 0;
  bool smooth = false;
  bool tangent_matches_gradient = false;
};

/// phi(P^1(F_q)): smooth points whose tangent has contact order q+1.
/// An inflection point is taken to be a smooth point with tangent contact
/// order at least 3.
inline std::vector<InflectionRecord> inflection_points(const BhCurve& c) {
  std::vector<InflectionRecord> out;
  for (const auto& pt : p1_points(c.field)) {
    if (!c.in_fq(pt)) continue;
    InflectionRecord r;
    r.param = pt;
    r.point = c.phi.eval(pt);
    const auto g = c.gradient(r.point);
    r.smooth = !is_zero_vector(g);
    const Line l = tangent_line(pt, c.q);
    r.tangent_matches_gradient = r.smooth && normalize_projective<3>(g) == l.c;
    const auto meet = line_meet_curve(l, c);
    for (const auto& m : meet)
      if (m.point == r.point) r.contact_order = m.multiplicity;
    out.push_back(r);
  }
  return out;
}

struct DualConicReport {
  std::array<UniPoly, 3> gauss_map;  // tangent coefficients as polynomials in t
  int inseparable_degree = 0;
  bool factors_through_frobenius = false;
  bool on_conic = false;
  bool ok() const { return factors_through_frobenius && on_conic; }
};

/// The Gauss map t -> [t^(2q) : 1 : -t^q] computed as P(t) x P'(t); checks it
/// is (u -> [u^2 : 1 : -u]) o (t -> t^q) and lies on the given conic
/// (default X0 X1 - X2^2).
inline DualConicReport dual_conic_report(const PrimePower& q, std::optional<HomogForm> conic = std::nullopt) {
  const Field k = make_field(q.p, 1);
  const UniPoly t = UniPoly::x(k);
  const UniPoly one = UniPoly::constant(k, k.one());
  const std::array<UniPoly, 3> pt{one, t.pow(q.q + 1), t.pow(q.q) + t};
  const std::array<UniPoly, 3> d{pt[0].derivative(), pt[1].derivative(), pt[2].derivative()};
  DualConicReport r;
  std::array<UniPoly, 3> g{pt[1] * d[2] - pt[2] * d[1], pt[2] * d[0] - pt[0] * d[2], pt[0] * d[1] - pt[1] * d[0]};
  const UniPoly content = UniPoly::gcd(UniPoly::gcd(g[0], g[1]), g[2]);
  for (auto& gi : g) gi = UniPoly::divmod(gi, content).first;
  r.gauss_map = g;

  // Largest p-power dividing every exponent.
  std::uint64_t insep = 0;
  for (std::uint64_t cand = 1; cand <= std::uint64_t(q.q) * q.p; cand *= q.p) {
    bool all = true;
    for (const auto& gi : g)
      for (int i = 0; i <= gi.degree(); ++i)
        if (!gi.coeff(static_cast<std::size_t>(i)).is_zero() && i % static_cast<int>(cand) != 0) all = false;
    if (!all) break;
    insep = cand;
  }
  r.inseparable_degree = static_cast<int>(insep);

  if (insep == q.q) {
    std::array<BinaryForm, 3> reduced;
    int deg = 0;
    std::array<UniPoly, 3> red;
    for (std::size_t j = 0; j < 3; ++j) {
      std::vector<Elem> c;
      for (int i = 0; i <= g[j].degree(); i += static_cast<int>(q.q)) c.push_back(g[j].coeff(static_cast<std::size_t>(i)));
      red[j] = UniPoly(k, c);
      deg = std::max(deg, red[j].degree());
    }
    for (std::size_t j = 0; j < 3; ++j) reduced[j] = BinaryForm(deg, red[j]);
    const UniPoly u = UniPoly::x(k);
    const std::array<BinaryForm, 3> expected{BinaryForm(2, u * u), BinaryForm(2, one), BinaryForm(2, -u)};
    r.factors_through_frobenius = deg == 2 && proportional(reduced, expected);
  }

  const HomogForm cf = conic ? *conic
                             : HomogForm(MPoly::var(k, 3, 0) * MPoly::var(k, 3, 1) -
                                         MPoly::var(k, 3, 2) * MPoly::var(k, 3, 2));
  r.on_conic = compose(cf, std::vector<UniPoly>{g[0], g[1], g[2]}).is_zero();
  return r;
}

inline bool dual_conic_check(const PrimePower& q) { return dual_conic_report(q).ok(); }

/// The image of x0 + x1 + x2 = 0 under [x_i] -> [x_i^(q+1)], followed by
/// [x0:x1:x2] -> [x0 : x1 : x2 - x0 - x1], equals phi coordinate-wise.
inline bool coxeter_model_check(const PrimePower& q) {
  const Field k = make_field(q.p, 1);
  const BinaryForm s = BinaryForm::s(k), t = BinaryForm::t(k);
  const BinaryForm third = -(s + t);
  const BinaryForm y0 = s.pow(q.q + 1), y1 = t.pow(q.q + 1), y2 = third.pow(q.q + 1);
  const std::array<BinaryForm, 3> moved{y0, y1, y2 - y0 - y1};
  const std::array<BinaryForm, 3> phi{s.pow(q.q + 1), t.pow(q.q + 1), s * t.pow(q.q) + s.pow(q.q) * t};
  return proportional(moved, phi);
}

}  // namespace bh
