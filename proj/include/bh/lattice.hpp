#pragma once

// The two K3 cases (q, d) = (3, 4) and (5, 2): curve configurations on the
// minimal resolution of S_d, their intersection numbers, 22 x 22 Gram
// matrices and exact lattice invariants.
//
// Intersections away from Sing(S_d) are local vanishing orders of a witness
// equation pulled back along a parametrization. Over an A_{d-1} point
// w^d = kappa * u * v (+ higher order), an arc is placed on the toric
// resolution from its valuation vector (ord u, ord v, ord w); the exceptional
// curve E_i corresponds to the ray (i, d-i, 1).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bh/cover.hpp"
#include "bh/curve.hpp"
#include "bh/error.hpp"
#include "bh/field.hpp"
#include "bh/poly.hpp"

namespace bh {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<int>>;
using WPoint = std::array<Elem, 4>;  // (w, x0, x1, x2) in P(c,1,1,1)

struct SurfaceNode {
  NodeRecord node;
  WPoint point;
  std::size_t chart = 0;  // index of the x-coordinate set to 1 locally
  Elem cone;              // F = cone * lambda_u * lambda_v + higher order
  std::vector<std::string> e_labels;  // e_labels[i-1] names E_i, i = 1..d-1
};

struct K3Surface {
  PrimePower q;
  int d = 0;
  int c = 0;
  BhCurve curve;
  HomogForm surface;
  Elem alpha;  // the distinguished square root used in labels and equations
  Elem alpha_square;
  std::vector<SurfaceNode> nodes;

  const Field& field() const { return curve.field; }
  std::vector<int> weights() const { return {c, 1, 1, 1}; }
};

/// a + b*alpha with a, b in F_p.
inline std::pair<std::int64_t, std::int64_t> alpha_coords(const K3Surface& s, const Elem& e) {
  const Field& k = s.field();
  const std::int64_t p = k.characteristic();
  for (std::int64_t b = 0; b < p; ++b)
    for (std::int64_t a = 0; a < p; ++a)
      if (k.from_int(a) + k.from_int(b) * s.alpha == e) return {a, b};
  throw Error(Errc::InvalidArgument, "element is not in F_p(alpha)");
}

/// "1-α", "2α", "-α", "0".
inline std::string alpha_label(const K3Surface& s, const Elem& e) {
  const auto [a, b] = alpha_coords(s, e);
  const std::int64_t p = s.field().characteristic();
  std::string out = a ? std::to_string(a) : "";
  if (b) {
    const bool neg = b > p / 2;
    const std::int64_t mag = neg ? p - b : b;
    out += neg ? "-" : (a ? "+" : "");
    out += (mag == 1 ? "" : std::to_string(mag)) + "α";
  }
  return out.empty() ? "0" : out;
}

inline std::string alpha_label(const K3Surface& s, const P1Point& pt) {
  return pt.is_infinity() ? "∞" : alpha_label(s, pt.t);
}

inline K3Surface make_k3_surface(const PrimePower& q, int d, const detail::FpPoly& modulus, std::int64_t alpha_square) {
  K3Surface s;
  s.q = q;
  s.d = d;
  s.c = static_cast<int>(q.q + 1) / d;
  s.curve = BhCurve::make(q, 2, modulus);
  const Field& k = s.curve.field;
  s.surface = HomogForm(MPoly::var(k, 4, 0).pow(static_cast<std::uint64_t>(d)) - lift_to_w(s.curve.form.poly()),
                        s.weights());
  s.alpha_square = k.from_int(alpha_square);
  const auto roots = square_roots(k, s.alpha_square);
  if (roots.empty()) throw Error(Errc::InvalidArgument, "no square root of " + std::to_string(alpha_square));
  s.alpha = roots.front();
  for (const auto& n : nodes(s.curve)) {
    SurfaceNode sn;
    sn.node = n;
    const P2Point x = normalize_projective<3>(n.image);
    sn.point = {k.zero(), x[0], x[1], x[2]};
    while (x[sn.chart].is_zero()) ++sn.chart;
    const auto cone = node_cone_constant(s.curve.form, n);
    if (!cone) throw Error(Errc::InvalidArgument, "node " + point_to_string(x) + " is not an ordinary node");
    sn.cone = *cone;
    sn.e_labels.resize(static_cast<std::size_t>(d - 1));
    const Elem tau = n.tau.t, conj = n.tau_conj.t;
    if (d == 2) {
      const auto [a, b] = alpha_coords(s, tau);
      const std::int64_t p = k.characteristic();
      const std::int64_t mag = std::min(b, p - b);
      sn.e_labels[0] = "E_{" + (a ? std::to_string(a) : std::string()) + "±" +
                       (mag == 1 ? std::string() : std::to_string(mag)) + "α}";
    } else {
      sn.e_labels.front() = "E_{" + alpha_label(s, conj) + "}";
      sn.e_labels.back() = "E_{" + alpha_label(s, tau) + "}";
      const Elem mid = (tau + conj) / k.from_int(2);
      for (int i = 2; i < d - 1; ++i)
        sn.e_labels[static_cast<std::size_t>(i - 1)] =
            "E_{" + alpha_label(s, mid) + (d > 4 ? "," + std::to_string(i) : std::string()) + "}";
    }
    s.nodes.push_back(std::move(sn));
  }
  return s;
}

enum class CurveKind { Exceptional, Section };

/// Either an exceptional curve E_i over a node, or the strict transform of
/// {l = 0, w = kappa * m^c} parametrized over the line l = 0.
struct CurveOnSurface {
  std::string label;
  CurveKind kind = CurveKind::Section;
  // Section data.
  Line line;
  std::array<Elem, 3> m;
  Elem kappa;
  std::optional<P1Point> tau;  // l = l_tau when l is a tangent line of B
  std::array<BinaryForm, 4> param;
  std::size_t eliminated = 0;
  // Exceptional data.
  std::size_t node = 0;
  int chain = 0;  // i in 1..d-1

  std::string equations(const K3Surface& s) const {
    if (kind == CurveKind::Exceptional) return label;
    auto lin = [&](const std::array<Elem, 3>& c) {
      std::string out;
      for (std::size_t i = 0; i < 3; ++i) {
        if (c[i].is_zero()) continue;
        if (!out.empty()) out += "+";
        const std::string co = alpha_label(s, c[i]);
        const bool compound = co.find_first_of("+-", 1) != std::string::npos;
        if (co != "1") out += compound ? "(" + co + ")" : co;
        out += "x" + std::to_string(i);
      }
      return out;
    };
    const std::string mp = lin(m);
    return "{" + lin(line.c) + " = 0, w = " + alpha_label(s, kappa) + "*(" + mp + ")" +
           (s.c > 1 ? "^" + std::to_string(s.c) : "") + "}";
  }
};

/// x-part of a section as binary forms in the free coordinates.
inline CurveOnSurface make_section(const K3Surface& s, std::string label, const std::array<Elem, 3>& line_coeffs,
                                   const std::array<Elem, 3>& m, const Elem& kappa) {
  const Field& k = s.field();
  CurveOnSurface c;
  c.label = std::move(label);
  c.kind = CurveKind::Section;
  c.line = Line{line_coeffs};
  c.m = m;
  c.kappa = kappa;
  for (std::size_t e : {1u, 0u, 2u})
    if (!line_coeffs[e].is_zero()) {
      c.eliminated = e;
      break;
    }
  std::array<std::size_t, 2> free{};
  for (std::size_t i = 0, j = 0; i < 3; ++i)
    if (i != c.eliminated) free[j++] = i;
  std::array<BinaryForm, 3> x;
  x[free[0]] = BinaryForm::s(k);
  x[free[1]] = BinaryForm::t(k);
  const Elem inv = line_coeffs[c.eliminated].inverse();
  x[c.eliminated] = BinaryForm::linear(k, -line_coeffs[free[0]] * inv, -line_coeffs[free[1]] * inv);
  const BinaryForm mf = x[0].scale(m[0]) + x[1].scale(m[1]) + x[2].scale(m[2]);
  c.param = {mf.pow(static_cast<std::uint64_t>(s.c)).scale(kappa), x[0], x[1], x[2]};

  // l = (t^(2q), 1, -t^q) for t = tau, or (1, 0, 0) for tau = infinity.
  const std::uint64_t q = s.q.q;
  const Line normalized = Line::make(line_coeffs[0], line_coeffs[1], line_coeffs[2]);
  if (normalized.c[1].is_zero()) {
    if (normalized.c[2].is_zero()) c.tau = P1Point::infinity(k);
  } else {
    const Elem a = normalized.c[0] / normalized.c[1], b = normalized.c[2] / normalized.c[1];
    const Elem t = (-b).pow(q);
    if (t.pow(q * q) == t && a == b * b) c.tau = P1Point::affine(t);
  }
  return c;
}

inline CurveOnSurface make_exceptional(const K3Surface& s, std::size_t node, int chain) {
  CurveOnSurface c;
  c.kind = CurveKind::Exceptional;
  c.node = node;
  c.chain = chain;
  c.label = s.nodes[node].e_labels[static_cast<std::size_t>(chain - 1)];
  return c;
}

/// The parametrization satisfies w^d = F identically.
inline bool lies_on_surface(const K3Surface& s, const CurveOnSurface& c) {
  if (c.kind == CurveKind::Exceptional) return true;
  return compose(s.surface, std::vector<BinaryForm>(c.param.begin(), c.param.end())).is_zero();
}

inline WPoint eval_param(const CurveOnSurface& c, const P1Point& pt) {
  return {c.param[0].eval(pt), c.param[1].eval(pt), c.param[2].eval(pt), c.param[3].eval(pt)};
}

inline bool same_plane_point(const WPoint& a, const WPoint& b) {
  return is_zero_vector(cross({a[1], a[2], a[3]}, {b[1], b[2], b[3]}));
}

/// Index of the node at the image of pt, if the surface point is singular.
inline std::optional<std::size_t> node_at(const K3Surface& s, const WPoint& p) {
  if (!p[0].is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    if (same_plane_point(p, s.nodes[i].point)) return i;
  return std::nullopt;
}

/// Parameters of a section mapping to the given node.
inline std::vector<P1Point> params_through(const K3Surface& s, const CurveOnSurface& c, std::size_t node) {
  std::vector<P1Point> out;
  for (const auto& pt : p1_points(s.field())) {
    const WPoint p = eval_param(c, pt);
    if (p[0].is_zero() && same_plane_point(p, s.nodes[node].point)) out.push_back(pt);
  }
  return out;
}

struct Germ {
  int order = 0;
  Elem lead;
};

/// Order and leading Taylor coefficient of num/den at pt, in the chart
/// coordinate of BinaryForm::chart_poly.
inline Germ germ(const BinaryForm& num, const BinaryForm& den, const P1Point& pt) {
  const UniPoly n = num.chart_poly(pt), dn = den.chart_poly(pt);
  const Elem t0 = BinaryForm::chart_coordinate(pt);
  const Elem dv = dn.eval(t0);
  if (dv.is_zero()) throw Error(Errc::InvalidArgument, "chart denominator vanishes");
  Germ g;
  g.order = vanishing_order(n, t0);
  if (g.order == kInfiniteOrder) return g;
  g.lead = n.hasse(static_cast<std::size_t>(g.order), t0) / dv;
  return g;
}

struct ArcPlacement {
  std::array<int, 3> valuation{};  // (ord u, ord v, ord w)
  bool corner = false;
  int i = 0;         // orbit of E_i, or the corner E_i & E_{i+1}
  int a = 0, b = 0;  // C.E_i and C.E_{i+1}
  Elem position;     // orbit coordinate (orbit case only)

  /// C . E_j from this branch.
  int meets(int j) const {
    if (j == i) return a;
    if (corner && j == i + 1) return b;
    return 0;
  }
};

/// Places the branch of a section at parameter pt over a node of S_d on the
/// toric resolution.
inline ArcPlacement place_arc(const K3Surface& s, const CurveOnSurface& c, std::size_t node, const P1Point& pt) {
  const SurfaceNode& sn = s.nodes[node];
  const std::size_t j = sn.chart;
  const BinaryForm& xj = c.param[j + 1];
  auto lin = [&](const Line& l) {
    return c.param[1].scale(l.c[0]) + c.param[2].scale(l.c[1]) + c.param[3].scale(l.c[2]);
  };
  const Germ gu = germ(lin(sn.node.tangent_tau), xj, pt);
  const Germ gv = germ(lin(sn.node.tangent_conj), xj, pt);
  const Germ gw = germ(c.param[0], xj.pow(static_cast<std::uint64_t>(s.c)), pt);
  const int m = std::min(gu.order, gv.order);
  if (m < 1 || gw.order < 1 || gw.order == kInfiniteOrder)
    throw Error(Errc::WitnessUnavailable, c.label + " does not pass through the node as an arc");
  const bool u_exact = gu.order < 2 * m, v_exact = gv.order < 2 * m;
  const int dw = s.d * gw.order;
  int ou = gu.order, ov = gv.order;
  if (u_exact && v_exact) {
    if (ou + ov != dw) throw Error(Errc::WitnessUnavailable, c.label + ": inconsistent valuations at a node");
  } else if (u_exact) {
    ov = dw - ou;
  } else {
    ou = dw - ov;
  }
  if (ou <= 0 || ov <= 0) throw Error(Errc::WitnessUnavailable, c.label + ": degenerate valuation at a node");

  ArcPlacement r;
  r.valuation = {ou, ov, gw.order};
  const int cw = gw.order;
  r.i = ou / cw;
  if (ou % cw == 0) {
    r.a = cw;
    // Orbit coordinate u / w^i = w^(d-i) / (cone * v).
    if (u_exact)
      r.position = gu.lead / gw.lead.pow(static_cast<std::uint64_t>(r.i));
    else
      r.position = gw.lead.pow(static_cast<std::uint64_t>(s.d - r.i)) / (sn.cone * gv.lead);
  } else {
    r.corner = true;
    r.b = ou - r.i * cw;
    r.a = cw - r.b;
  }
  return r;
}

struct MeetContribution {
  P1Point param;  // on the first curve
  WPoint point;
  int multiplicity = 0;
  std::string witness;
};

namespace detail {

/// F - kappa^d m^(q+1) written as l^k R after making l a coordinate; returns
/// (k, R in the new coordinates, eliminated index).
struct Residual {
  int k = 0;
  MPoly r;
  std::size_t e = 0;
};

inline Residual residual_of(const K3Surface& s, const CurveOnSurface& c) {
  const Field& k = s.field();
  const MPoly mlin = MPoly::linear(k, std::span<const Elem>(c.m));
  const MPoly g = s.curve.form.poly() - mlin.pow(s.q.q + 1).scale(c.kappa.pow(static_cast<std::uint64_t>(s.d)));
  Residual res;
  res.e = c.eliminated;
  std::vector<MPoly> subs;
  const Elem inv = c.line.c[res.e].inverse();
  for (std::size_t i = 0; i < 3; ++i) subs.push_back(MPoly::var(k, 3, static_cast<int>(i)));
  MPoly xe = MPoly::var(k, 3, static_cast<int>(res.e)).scale(inv);
  for (std::size_t i = 0; i < 3; ++i)
    if (i != res.e) xe = xe - MPoly::var(k, 3, static_cast<int>(i)).scale(c.line.c[i] * inv);
  subs[res.e] = xe;
  const MPoly h = g.compose(subs);
  res.k = h.min_degree_in(static_cast<int>(res.e));
  MPoly r(k, 3);
  for (const auto& [mono, co] : h.terms()) {
    Monomial mm = mono;
    mm[res.e] = static_cast<std::uint16_t>(mm[res.e] - res.k);
    r = r + MPoly::monomial(k, 3, mm, co);
  }
  res.r = r;
  return res;
}

/// Tangent vector of a section at pt in the affine chart x_j = 1.
inline std::array<Elem, 3> tangent_vector(const K3Surface& s, const CurveOnSurface& c, const P1Point& pt, std::size_t j) {
  const BinaryForm& den = c.param[j + 1];
  const Elem t0 = BinaryForm::chart_coordinate(pt);
  std::array<Elem, 3> v;
  std::size_t slot = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i == j + 1) continue;
    const BinaryForm dd = i == 0 ? den.pow(static_cast<std::uint64_t>(s.c)) : den;
    const UniPoly n = c.param[i].chart_poly(pt), dp = dd.chart_poly(pt);
    const Elem n0 = n.eval(t0), n1 = n.hasse(1, t0), e0 = dp.eval(t0), e1 = dp.hasse(1, t0);
    v[slot++] = (n1 * e0 - n0 * e1) / (e0 * e0);
  }
  return v;
}

}  // namespace detail

/// Common points of two distinct sections away from and at the nodes, with
/// local intersection numbers on the resolution.
inline std::vector<MeetContribution> ambient_meet(const K3Surface& s, const CurveOnSurface& c1,
                                                  const CurveOnSurface& c2) {
  if (c1.kind != CurveKind::Section || c2.kind != CurveKind::Section)
    throw Error(Errc::InvalidArgument, "ambient_meet takes two sections");
  const Field& k = s.field();
  const BinaryForm a = c1.param[1].scale(c2.line.c[0]) + c1.param[2].scale(c2.line.c[1]) +
                       c1.param[3].scale(c2.line.c[2]);
  const BinaryForm m2 = c1.param[1].scale(c2.m[0]) + c1.param[2].scale(c2.m[1]) + c1.param[3].scale(c2.m[2]);
  const BinaryForm b = c1.param[0] - m2.pow(static_cast<std::uint64_t>(s.c)).scale(c2.kappa);
  if (a.is_zero() && b.is_zero()) throw Error(Errc::IdenticalCurves, c1.label + " and " + c2.label + " coincide");

  std::vector<P1Point> common;
  int found = 0;
  for (const auto& pt : p1_points(k)) {
    const bool za = a.is_zero() || a.order_at(pt) > 0;
    const bool zb = b.is_zero() || b.order_at(pt) > 0;
    if (!za || !zb) continue;
    common.push_back(pt);
    found += a.is_zero() ? b.order_at(pt) : a.order_at(pt);
  }
  // A nonzero linear A has its single root rational; otherwise every root of B must be seen.
  if (a.is_zero() && found != b.degree()) throw Error(Errc::SearchFieldTooSmall, "common points of " + c1.label + ", " + c2.label);

  std::optional<detail::Residual> residual;
  std::vector<MeetContribution> out;
  for (const auto& pt : common) {
    MeetContribution mc;
    mc.param = pt;
    mc.point = eval_param(c1, pt);
    if (const auto node = node_at(s, mc.point)) {
      const ArcPlacement p1 = place_arc(s, c1, *node, pt);
      for (const auto& pt2 : params_through(s, c2, *node)) {
        const ArcPlacement p2 = place_arc(s, c2, *node, pt2);
        const bool same_orbit = !p1.corner && !p2.corner && p1.i == p2.i && p1.position == p2.position;
        const bool same_corner = p1.corner && p2.corner && p1.i == p2.i;
        if (same_orbit || same_corner)
          throw Error(Errc::WitnessUnavailable,
                      c1.label + " and " + c2.label + " meet on the exceptional locus at the same point");
      }
      mc.multiplicity = 0;
      mc.witness = "node-separated";
      out.push_back(mc);
      continue;
    }
    const P2Point x{mc.point[1], mc.point[2], mc.point[3]};
    const Elem m2x = c2.m[0] * x[0] + c2.m[1] * x[1] + c2.m[2] * x[2];
    std::optional<int> via_line, via_w;
    if (!a.is_zero() && !m2x.is_zero()) via_line = a.order_at(pt);
    if (!residual) residual = detail::residual_of(s, c2);
    if (residual->k > 0) {
      std::array<Elem, 3> y = x;
      y[residual->e] = c2.line.eval(x);
      if (!residual->r.evaluate(y).is_zero()) {
        const int ob = b.order_at(pt);
        if (ob % residual->k != 0)
          throw Error(Errc::WitnessUnavailable, "w-witness order not divisible by the line multiplicity");
        via_w = ob / residual->k;
      }
    }
    if (via_line && via_w && *via_line != *via_w)
      throw Error(Errc::WitnessUnavailable, c1.label + ", " + c2.label + ": witnesses disagree");
    if (via_line) {
      mc.multiplicity = *via_line;
      mc.witness = via_w ? "line+w" : "line";
    } else if (via_w) {
      mc.multiplicity = *via_w;
      mc.witness = "w";
    } else {
      // Smooth point of S: two smooth branches with independent tangents meet once.
      std::size_t j = 0;
      while (x[j].is_zero()) ++j;
      const P1Point pt2 = [&] {
        for (const auto& q2 : p1_points(k)) {
          const WPoint p2 = eval_param(c2, q2);
          if (same_plane_point(p2, mc.point) && p2[0] * x[j].pow(static_cast<std::uint64_t>(s.c)) ==
                                                    mc.point[0] * p2[j + 1].pow(static_cast<std::uint64_t>(s.c)))
            return q2;
        }
        throw Error(Errc::WitnessUnavailable, "common point not found on " + c2.label);
      }();
      const auto t1 = detail::tangent_vector(s, c1, pt, j), t2 = detail::tangent_vector(s, c2, pt2, j);
      const bool t1z = t1[0].is_zero() && t1[1].is_zero() && t1[2].is_zero();
      const bool t2z = t2[0].is_zero() && t2[1].is_zero() && t2[2].is_zero();
      if (t1z || t2z || is_zero_vector(cross(t1, t2)))
        throw Error(Errc::WitnessUnavailable, c1.label + ", " + c2.label + ": no valid local witness");
      mc.multiplicity = 1;
      mc.witness = "transversal";
    }
    out.push_back(mc);
  }
  return out;
}

/// Intersection number of two distinct curves on the resolution.
inline int intersection_number(const K3Surface& s, const CurveOnSurface& c1, const CurveOnSurface& c2) {
  using K = CurveKind;
  if (c1.kind == K::Exceptional && c2.kind == K::Exceptional) {
    if (c1.node != c2.node) return 0;
    if (c1.chain == c2.chain) throw Error(Errc::IdenticalCurves, c1.label);
    return std::abs(c1.chain - c2.chain) == 1 ? 1 : 0;
  }
  if (c1.kind == K::Exceptional || c2.kind == K::Exceptional) {
    const CurveOnSurface& e = c1.kind == K::Exceptional ? c1 : c2;
    const CurveOnSurface& c = c1.kind == K::Exceptional ? c2 : c1;
    int total = 0;
    for (const auto& pt : params_through(s, c, e.node)) total += place_arc(s, c, e.node, pt).meets(e.chain);
    return total;
  }
  int total = 0;
  for (const auto& mc : ambient_meet(s, c1, c2)) total += mc.multiplicity;
  return total;
}

struct GramMatrix {
  std::vector<std::string> labels;
  IntMatrix entries;
  std::vector<std::pair<std::size_t, std::size_t>> unavailable;  // computed mode only

  bool symmetric() const {
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = 0; j < entries.size(); ++j)
        if (entries[i][j] != entries[j][i]) return false;
    return true;
  }
  bool diagonal_minus_two() const {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i][i] != -2) return false;
    return true;
  }
  bool complete() const { return unavailable.empty(); }
};

struct CurveConfig {
  std::string name;
  K3Surface surface;
  std::vector<CurveOnSurface> curves;
  std::vector<std::size_t> selection;  // the 22 classes, in table order
  std::vector<std::string> notes;

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < curves.size(); ++i)
      if (curves[i].label == label) return i;
    throw Error(Errc::InvalidArgument, "no curve labelled " + label);
  }
};

/// Intersection matrix of the given curves; entries that cannot be certified
/// are left at 0 and listed in `unavailable`.
inline GramMatrix compute_gram(const K3Surface& s, const std::vector<CurveOnSurface>& cs) {
  GramMatrix g;
  const std::size_t n = cs.size();
  g.entries.assign(n, std::vector<int>(n, 0));
  for (const auto& c : cs) g.labels.push_back(c.label);
  for (std::size_t i = 0; i < n; ++i) {
    g.entries[i][i] = -2;
    for (std::size_t j = i + 1; j < n; ++j) {
      try {
        g.entries[i][j] = g.entries[j][i] = intersection_number(s, cs[i], cs[j]);
      } catch (const Error& e) {
        if (e.code() != Errc::WitnessUnavailable) throw;
        g.unavailable.emplace_back(i, j);
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reference Gram matrices, rows in the reference label order.

inline const IntMatrix& quartic_table() {
  static const IntMatrix t = {
      {-2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0},
      {1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2, 1, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, -2, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, -2, 0, 1, 0, 1, 0, 0, 0, 1, 1},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -2, 1, 0, 0, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, -2, 0, 0, 1, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -2, 1, 0, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, -2, 1, 1, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, -2, 0, 1, 0, 0},
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, -2, 0, 0, 0},
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, -2, 1, 1},
      {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, -2, 0},
      {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, -2},
  };
  return t;
}

inline const IntMatrix& sextic_table() {
  static const IntMatrix t = {
      {-2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 0, 0, -2, 3, 1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1},
      {0, 0, 0, 0, 0, 0, 0, 0, 3, -2, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -2, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1},
      {0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -2, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0},
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -2, 0, 0, 0, 1, 1, 1, 1, 0, 1},
      {0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, -2, 0, 1, 0, 0, 1, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, -2, 1, 1, 0, 1, 0, 1, 1},
      {0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 1, -2, 1, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, -2, 1, 1, 1, 0, 0},
      {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, -2, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, -2, 0, 1, 0},
      {0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, -2, 1, 1},
      {0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 1, -2, 1},
      {0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1, -2},
  };
  return t;
}

inline const std::vector<std::string>& quartic_selection_labels() {
  static const std::vector<std::string> l = {
      "E_{-α}",       "E_{0}",        "E_{α}",        "E_{1-α}",      "E_{1}",        "E_{1+α}",
      "E_{2-α}",      "E_{2}",        "E_{2+α}",      "L_{0}^{(0)}",  "L_{0}^{(1)}",  "L_{0}^{(2)}",
      "L_{0}^{(3)}",  "L_{1}^{(0)}",  "L_{1}^{(1)}",  "L_{2}^{(0)}",  "L_{2}^{(1)}",  "L_{∞}^{(1)}",
      "L_{-α}^{(0)}", "L_{-α}^{(1)}", "L_{1-α}^{(2)}", "L_{2-α}^{(0)}",
  };
  return l;
}

inline const std::vector<std::string>& sextic_e_labels() {
  static const std::vector<std::string> l = {"E_{±α}",  "E_{±2α}",  "E_{1±α}", "E_{1±2α}",
                                             "E_{2±α}", "E_{3±2α}", "E_{4±α}", "E_{4±2α}"};
  return l;
}

inline detail::FpPoly quartic_modulus() { return {1, 0, 1}; }  // x^2 + 1
inline detail::FpPoly sextic_modulus() { return {3, 0, 1}; }   // x^2 - 2 over F_5

/// q = 3, d = 4 in P^3: 9 exceptional curves and the 40 lines
/// {l_tau = 0, w = alpha^nu m_tau}, tau in F_9 and infinity.
inline CurveConfig quartic_config(std::optional<detail::FpPoly> modulus = std::nullopt) {
  CurveConfig cfg;
  cfg.name = "quartic";
  cfg.surface = make_k3_surface(PrimePower::of(3), 4, modulus.value_or(quartic_modulus()), -1);
  const K3Surface& s = cfg.surface;
  const Field& k = s.field();

  std::vector<std::size_t> order(s.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.nodes[a].e_labels[1] < s.nodes[b].e_labels[1];
  });
  for (std::size_t n : order)
    for (int i = 1; i <= 3; ++i) cfg.curves.push_back(make_exceptional(s, n, i));

  const CoverSpec cover{s.q, s.d, s.c, s.weights(), s.curve, s.surface, {}};
  for (const auto& pt : p1_points(k)) {
    if (!s.curve.in_fq2(pt)) continue;
    const FiberSplitting f = fiber_splitting_check(cover, pt);
    if (!f.is_power || !f.c0.is_one())
      throw Error(Errc::InvalidArgument, "fiber over " + pt.to_string() + " is not w^4 = m^4");
    for (int nu = 0; nu < 4; ++nu) {
      const std::string label = "L_{" + alpha_label(s, pt) + "}^{(" + std::to_string(nu) + ")}";
      cfg.curves.push_back(make_section(s, label, f.line.c, f.m, s.alpha.pow(static_cast<std::uint64_t>(nu))));
    }
  }
  for (const auto& l : quartic_selection_labels()) cfg.selection.push_back(cfg.index_of(l));
  return cfg;
}

/// One of the 14 chosen sextic curves {l = 0, w = kappa m^3}; coefficients
/// are a + b*alpha pairs.
struct SexticCurveData {
  std::array<std::array<int, 2>, 3> line;
  std::array<int, 2> kappa;
  std::array<std::array<int, 2>, 3> m;
};

inline const std::vector<SexticCurveData>& sextic_curve_data() {
  static const std::vector<SexticCurveData> v = {
      {{{{0, 0}, {1, 0}, {0, 0}}}, {0, 2}, {{{0, 0}, {0, 0}, {1, 0}}}},
      {{{{0, 0}, {1, 0}, {0, 0}}}, {0, -2}, {{{0, 0}, {0, 0}, {1, 0}}}},
      {{{{1, 0}, {1, 0}, {4, 0}}}, {0, -2}, {{{3, 0}, {0, 0}, {1, 0}}}},
      {{{{3, 0}, {1, 0}, {0, 3}}}, {0, 2}, {{{0, 0}, {0, 0}, {1, 0}}}},
      {{{{2, 0}, {1, 0}, {0, 4}}}, {0, -2}, {{{0, 0}, {0, 0}, {1, 0}}}},
      {{{{3, 0}, {1, 0}, {0, 2}}}, {0, 2}, {{{0, 0}, {0, 0}, {1, 0}}}},
      {{{{3, 3}, {1, 0}, {4, 1}}}, {0, -2}, {{{3, 0}, {0, 0}, {1, 0}}}},
      {{{{4, 1}, {1, 0}, {4, 2}}}, {0, -2}, {{{3, 0}, {0, 0}, {1, 0}}}},
      {{{{2, 3}, {1, 0}, {3, 3}}}, {0, 2}, {{{1, 0}, {0, 0}, {1, 0}}}},
      {{{{1, 1}, {1, 0}, {3, 1}}}, {0, 2}, {{{1, 0}, {0, 0}, {1, 0}}}},
      {{{{1, 1}, {1, 0}, {2, 4}}}, {0, 2}, {{{4, 0}, {0, 0}, {1, 0}}}},
      {{{{2, 3}, {1, 0}, {2, 2}}}, {0, -2}, {{{4, 0}, {0, 0}, {1, 0}}}},
      {{{{3, 3}, {1, 0}, {1, 4}}}, {0, 2}, {{{2, 0}, {0, 0}, {1, 0}}}},
      {{{{4, 4}, {1, 0}, {1, 2}}}, {0, 2}, {{{2, 0}, {0, 0}, {1, 0}}}},
  };
  return v;
}

/// The sixth curve with line x0 + x1 + 2*alpha*x2. The tangent-line relation
/// c0 = c2^2 forces the x0-coefficient 3 used in the table above.
inline SexticCurveData sextic_curve6_literal() {
  SexticCurveData d = sextic_curve_data()[5];
  d.line[0] = {1, 0};
  return d;
}

inline CurveOnSurface make_sextic_curve(const K3Surface& s, const std::string& label, const SexticCurveData& d) {
  const Field& k = s.field();
  auto el = [&](const std::array<int, 2>& ab) { return k.from_int(ab[0]) + k.from_int(ab[1]) * s.alpha; };
  const std::array<Elem, 3> l{el(d.line[0]), el(d.line[1]), el(d.line[2])};
  const std::array<Elem, 3> m{el(d.m[0]), el(d.m[1]), el(d.m[2])};
  return make_section(s, label, l, m, el(d.kappa));
}

/// q = 5, d = 2 in P(3,1,1,1): 10 exceptional curves and the 14 chosen curves.
inline CurveConfig sextic_config(std::optional<detail::FpPoly> modulus = std::nullopt) {
  CurveConfig cfg;
  cfg.name = "sextic";
  cfg.surface = make_k3_surface(PrimePower::of(5), 2, modulus.value_or(sextic_modulus()), 2);
  const K3Surface& s = cfg.surface;
  std::vector<CurveOnSurface> es;
  for (std::size_t n = 0; n < s.nodes.size(); ++n) es.push_back(make_exceptional(s, n, 1));
  for (const auto& l : sextic_e_labels()) {
    const auto it = std::find_if(es.begin(), es.end(), [&](const CurveOnSurface& c) { return c.label == l; });
    if (it == es.end()) throw Error(Errc::InvalidArgument, "no node labelled " + l);
    cfg.curves.push_back(*it);
  }
  for (const auto& e : es)
    if (std::find(sextic_e_labels().begin(), sextic_e_labels().end(), e.label) == sextic_e_labels().end())
      cfg.curves.push_back(e);
  const auto& data = sextic_curve_data();
  for (std::size_t i = 0; i < data.size(); ++i)
    cfg.curves.push_back(make_sextic_curve(s, "C_{" + std::to_string(i + 1) + "}", data[i]));
  for (std::size_t i = 0; i < 8; ++i) cfg.selection.push_back(i);
  for (std::size_t i = 0; i < data.size(); ++i) cfg.selection.push_back(10 + i);

  const CurveOnSurface printed = make_sextic_curve(s, "C_{6} with x0-coefficient 1", sextic_curve6_literal());
  cfg.notes.push_back(std::string("C_{6} with x0-coefficient 1: tangent line ") + (printed.tau ? "yes" : "no") +
                      ", on surface " + (lies_on_surface(s, printed) ? "yes" : "no") +
                      "; with x0-coefficient 3: tangent line " + (cfg.curves[15].tau ? "yes" : "no") +
                      ", on surface " + (lies_on_surface(s, cfg.curves[15]) ? "yes" : "no"));
  return cfg;
}

enum class GramMode { Computed, TableReplay };

inline GramMatrix gram_assemble(const CurveConfig& cfg, GramMode mode) {
  if (mode == GramMode::TableReplay) {
    GramMatrix g;
    for (std::size_t i : cfg.selection) g.labels.push_back(cfg.curves[i].label);
    g.entries = cfg.name == "quartic" ? quartic_table() : sextic_table();
    return g;
  }
  std::vector<CurveOnSurface> chosen;
  for (std::size_t i : cfg.selection) chosen.push_back(cfg.curves[i]);
  return compute_gram(cfg.surface, chosen);
}

// ---------------------------------------------------------------------------
// Exact integer invariants.

/// Fraction-free (Bareiss) determinant.
inline BigInt bareiss_determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// (positive, negative, zero) eigenvalue counts by congruence diagonalization
/// over Q.
inline std::array<int, 3> inertia(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  std::array<int, 3> out{0, 0, 0};
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][r] == 0) ++r;
      if (r < n) {
        std::swap(m[k], m[r]);
        for (auto& row : m) std::swap(row[k], row[r]);
      } else {
        r = k + 1;
        while (r < n && m[k][r] == 0) ++r;
        if (r == n) {
          ++out[2];
          continue;
        }
        // Replace e_k by e_k + e_r: the new pivot is 2 m[k][r] (+ m[r][r] = 0).
        for (std::size_t j = 0; j < n; ++j) m[k][j] += m[r][j];
        for (std::size_t j = 0; j < n; ++j) m[j][k] += m[j][r];
      }
    }
    const BigRational piv = m[k][k];
    if (piv == 0) {
      ++out[2];
      continue;
    }
    ++out[piv > 0 ? 0 : 1];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const BigRational f = m[i][k] / piv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      for (std::size_t j = k; j < n; ++j) m[j][i] = m[i][j];
    }
  }
  return out;
}

struct LatticeInvariants {
  BigInt determinant;
  int artin_sigma = 0;
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// det = -p^(2 sigma) is required; otherwise NotMinusPPower.
inline LatticeInvariants lattice_invariants(const IntMatrix& g, std::uint32_t p) {
  LatticeInvariants r;
  r.determinant = bareiss_determinant(g);
  const auto in = inertia(g);
  r.positive = in[0];
  r.negative = in[1];
  r.zero = in[2];
  if (r.determinant >= 0)
    throw Error(Errc::NotMinusPPower, "determinant " + r.determinant.str() + " is not of the form -p^(2 sigma)");
  BigInt v = -r.determinant;
  int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  if (v != 1 || e % 2 != 0 || e == 0)
    throw Error(Errc::NotMinusPPower, "determinant " + r.determinant.str() + " is not of the form -p^(2 sigma)");
  r.artin_sigma = e / 2;
  return r;
}

/// Alternative moduli: another irreducible quadratic for each case.
inline detail::FpPoly alternative_modulus(const CurveConfig& cfg) {
  return cfg.name == "quartic" ? detail::FpPoly{2, 1, 1} : detail::FpPoly{1, 1, 1};
}

}  // namespace bh
