#pragma once

// PGL_2(F_q) acting on B through the symmetric-square lift
//   g = [[a,b],[c,d]]  ->  [[a^2, b^2, ab], [c^2, d^2, cd], [2ac, 2bd, ad+bc]].

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bh/curve.hpp"
#include "bh/error.hpp"
#include "bh/field.hpp"
#include "bh/poly.hpp"

namespace bh {

template <std::size_t N>
struct ProjMatrix {
  std::array<std::array<Elem, N>, N> m;

  /// Scaled so the first nonzero entry in row-major order is 1.
  static ProjMatrix canonical(std::array<std::array<Elem, N>, N> a) {
    for (const auto& row : a)
      for (const auto& e : row) {
        if (e.is_zero()) continue;
        const Elem inv = e.inverse();
        for (auto& r : a)
          for (auto& x : r) x *= inv;
        return {a};
      }
    throw Error(Errc::SingularInput, "zero matrix");
  }

  ProjMatrix operator*(const ProjMatrix& o) const {
    std::array<std::array<Elem, N>, N> r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        Elem acc(m[0][0].data(), 0);
        for (std::size_t k = 0; k < N; ++k) acc += m[i][k] * o.m[k][j];
        r[i][j] = acc;
      }
    return canonical(r);
  }

  std::array<Elem, N> apply(const std::array<Elem, N>& v) const {
    std::array<Elem, N> r;
    for (std::size_t i = 0; i < N; ++i) {
      Elem acc = m[i][0] * v[0];
      for (std::size_t k = 1; k < N; ++k) acc += m[i][k] * v[k];
      r[i] = acc;
    }
    return r;
  }

  Elem det() const {
    if constexpr (N == 2) {
      return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    } else {
      static_assert(N == 3);
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < N; ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < N; ++j) out += (j ? "," : "") + m[i][j].to_string();
      out += "]";
    }
    return out + "]";
  }

  std::vector<std::uint32_t> key() const {
    std::vector<std::uint32_t> k;
    for (const auto& row : m)
      for (const auto& e : row) k.push_back(e.value());
    return k;
  }

  friend bool operator==(const ProjMatrix& a, const ProjMatrix& b) { return a.m == b.m; }
  friend bool operator<(const ProjMatrix& a, const ProjMatrix& b) { return a.key() < b.key(); }
};

using Pgl2Elem = ProjMatrix<2>;
using Pgl3Elem = ProjMatrix<3>;

inline Pgl2Elem make_pgl2(const Elem& a, const Elem& b, const Elem& c, const Elem& d) {
  if ((a * d - b * c).is_zero()) throw Error(Errc::SingularInput, "ad - bc = 0");
  return Pgl2Elem::canonical({{{a, b}, {c, d}}});
}

inline Pgl3Elem lift(const Pgl2Elem& g) {
  const Elem a = g.m[0][0], b = g.m[0][1], c = g.m[1][0], d = g.m[1][1];
  if (g.det().is_zero()) throw Error(Errc::SingularInput, "ad - bc = 0");
  const Elem t2 = Elem(a.data(), 1) + Elem(a.data(), 1);
  return Pgl3Elem::canonical({{{a * a, b * b, a * b}, {c * c, d * d, c * d}, {t2 * a * c, t2 * b * d, a * d + b * c}}});
}

/// The q-element subfield of the curve's field.
inline std::vector<Elem> base_field_elements(const BhCurve& c) {
  std::vector<Elem> out;
  for (const auto& e : c.field.elements())
    if (c.in_fq(e)) out.push_back(e);
  return out;
}

/// All q^3 - q canonical elements of PGL_2(F_q).
inline std::vector<Pgl2Elem> enumerate_pgl2(const BhCurve& c) {
  const auto fq = base_field_elements(c);
  std::set<Pgl2Elem> seen;
  for (const auto& a : fq)
    for (const auto& b : fq)
      for (const auto& cc : fq)
        for (const auto& d : fq)
          if (!(a * d - b * cc).is_zero()) seen.insert(Pgl2Elem::canonical({{{a, b}, {cc, d}}}));
  return {seen.begin(), seen.end()};
}

/// phi o g and g~ o phi as coordinate triples of binary forms.
inline std::pair<std::array<BinaryForm, 3>, std::array<BinaryForm, 3>> equivariance_sides(const BhCurve& c,
                                                                                          const Pgl2Elem& g,
                                                                                          const Pgl3Elem& gl) {
  std::array<BinaryForm, 3> lhs, rhs;
  for (std::size_t i = 0; i < 3; ++i)
    lhs[i] = c.phi.coords[i].substitute(g.m[0][0], g.m[0][1], g.m[1][0], g.m[1][1]);
  for (std::size_t i = 0; i < 3; ++i) {
    BinaryForm acc = c.phi.coords[0].scale(gl.m[i][0]);
    for (std::size_t j = 1; j < 3; ++j) acc = acc + c.phi.coords[j].scale(gl.m[i][j]);
    rhs[i] = acc;
  }
  return {lhs, rhs};
}

/// phi o g == lift(g) o phi up to one scalar; `explicit_lift` replaces the
/// computed lift (used to show a wrong matrix is rejected).
inline bool equivariance_check(const BhCurve& c, const Pgl2Elem& g,
                               const std::optional<Pgl3Elem>& explicit_lift = std::nullopt) {
  const Pgl3Elem gl = explicit_lift ? *explicit_lift : lift(g);
  const auto [lhs, rhs] = equivariance_sides(c, g, gl);
  return proportional(lhs, rhs);
}

/// The lift with 1 added to its (2,0) entry, the one carrying 2ac.
inline Pgl3Elem corrupt_lift(const Pgl3Elem& h) {
  auto m = h.m;
  m[2][0] += Elem(m[2][0].data(), 1);
  return {m};
}

/// F(h x) as a form.
inline MPoly transform_form(const HomogForm& f, const Pgl3Elem& h) {
  std::vector<MPoly> subs;
  for (std::size_t i = 0; i < 3; ++i) subs.push_back(MPoly::linear(f.field(), std::span<const Elem>(h.m[i])));
  return f.poly().compose(subs);
}

/// F o h == lambda F for some nonzero lambda; returns lambda when it holds.
inline std::optional<Elem> preservation_scalar(const HomogForm& f, const Pgl3Elem& h) {
  const MPoly g = transform_form(f, h);
  if (g.size() != f.poly().size() || f.poly().is_zero()) return std::nullopt;
  const auto& [m0, c0] = *f.poly().terms().begin();
  const Elem lambda = g.coeff(m0) / c0;
  if (lambda.is_zero()) return std::nullopt;
  if (!(g == f.poly().scale(lambda))) return std::nullopt;
  return lambda;
}

inline bool preserves_curve_check(const HomogForm& f, const Pgl3Elem& h) {
  return preservation_scalar(f, h).has_value();
}

inline std::vector<P2Point> sorted_points(std::vector<P2Point> v) {
  for (auto& p : v) p = normalize_projective<3>(p);
  std::sort(v.begin(), v.end(), [](const P2Point& a, const P2Point& b) {
    return std::array{a[0].value(), a[1].value(), a[2].value()} < std::array{b[0].value(), b[1].value(), b[2].value()};
  });
  return v;
}

/// h maps the point set onto itself.
inline bool permutes(const Pgl3Elem& h, const std::vector<P2Point>& pts) {
  std::vector<P2Point> moved;
  moved.reserve(pts.size());
  for (const auto& p : pts) moved.push_back(h.apply(p));
  return sorted_points(moved) == sorted_points(pts);
}

struct GroupAudit {
  std::uint32_t q = 0;
  std::size_t order = 0;
  std::size_t expected_order = 0;
  bool injective = false;
  bool homomorphism = false;
  std::size_t equivariant = 0;
  std::size_t preserving = 0;
  std::size_t permutes_inflections = 0;
  std::size_t permutes_nodes = 0;
  bool ok() const {
    return order == expected_order && injective && homomorphism && equivariant == order && preserving == order &&
           permutes_inflections == order && permutes_nodes == order;
  }
};

inline constexpr std::uint32_t kExhaustionBound = 9;

namespace detail {

struct AutContext {
  std::vector<P2Point> inflections;
  std::vector<P2Point> node_images;

  explicit AutContext(const BhCurve& c) {
    for (const auto& r : inflection_points(c)) inflections.push_back(r.point);
    for (const auto& n : nodes(c)) node_images.push_back(n.image);
  }
};

inline void audit_element(const BhCurve& c, const AutContext& ctx, const Pgl2Elem& g, GroupAudit& a) {
  const Pgl3Elem h = lift(g);
  a.equivariant += equivariance_check(c, g, h);
  a.preserving += preserves_curve_check(c.form, h);
  a.permutes_inflections += permutes(h, ctx.inflections);
  a.permutes_nodes += permutes(h, ctx.node_images);
}

}  // namespace detail

/// Exhaustive audit of the lift over all of PGL_2(F_q).
inline GroupAudit group_audit(const PrimePower& q, std::uint32_t bound = kExhaustionBound) {
  if (q.q > bound)
    throw Error(Errc::ExhaustionBoundExceeded,
                "q = " + std::to_string(q.q) + " exceeds the exhaustion bound " + std::to_string(bound));
  const BhCurve c = BhCurve::make(q);
  const auto group = enumerate_pgl2(c);
  GroupAudit a;
  a.q = q.q;
  a.order = group.size();
  a.expected_order = std::size_t(q.q) * q.q * q.q - q.q;

  std::vector<Pgl3Elem> lifts;
  lifts.reserve(group.size());
  for (const auto& g : group) lifts.push_back(lift(g));
  a.injective = std::set<Pgl3Elem>(lifts.begin(), lifts.end()).size() == lifts.size();

  std::map<Pgl2Elem, std::size_t> index;
  for (std::size_t i = 0; i < group.size(); ++i) index.emplace(group[i], i);
  a.homomorphism = true;
  for (std::size_t i = 0; i < group.size() && a.homomorphism; ++i)
    for (std::size_t j = 0; j < group.size(); ++j) {
      const Pgl2Elem gh = group[i] * group[j];
      const auto it = index.find(gh);
      if (it == index.end() || !(lifts[it->second] == lifts[i] * lifts[j])) {
        a.homomorphism = false;
        break;
      }
    }

  const detail::AutContext ctx(c);
  for (const auto& g : group) detail::audit_element(c, ctx, g, a);
  return a;
}

/// Random elements of PGL_2(F_q) (with replacement) for q beyond the
/// exhaustion bound; checks lift properties and multiplicativity on
/// consecutive pairs.
inline GroupAudit sampled_audit(const PrimePower& q, std::size_t samples, std::uint64_t seed) {
  const BhCurve c = BhCurve::make(q);
  const auto fq = base_field_elements(c);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, fq.size() - 1);
  GroupAudit a;
  a.q = q.q;
  a.expected_order = samples;
  a.injective = true;
  a.homomorphism = true;
  const detail::AutContext ctx(c);
  std::optional<Pgl2Elem> prev;
  while (a.order < samples) {
    const Elem x = fq[pick(rng)], y = fq[pick(rng)], z = fq[pick(rng)], w = fq[pick(rng)];
    if ((x * w - y * z).is_zero()) continue;
    const Pgl2Elem g = make_pgl2(x, y, z, w);
    ++a.order;
    detail::audit_element(c, ctx, g, a);
    if (prev && !(lift(*prev * g) == lift(*prev) * lift(g))) a.homomorphism = false;
    prev = g;
  }
  return a;
}

struct NonLiftRejection {
  Pgl3Elem matrix;
  bool is_lift = false;
  bool preserves = false;
  std::size_t attempts = 0;
};

/// Draws random invertible 3x3 matrices over F_q until one is not a lift, and
/// reports whether it preserves F.
inline NonLiftRejection sample_non_lift(const BhCurve& c, std::uint64_t seed) {
  const auto fq = base_field_elements(c);
  std::set<Pgl3Elem> lifts;
  if (c.q.q <= kExhaustionBound)
    for (const auto& g : enumerate_pgl2(c)) lifts.insert(lift(g));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, fq.size() - 1);
  NonLiftRejection r;
  for (;;) {
    ++r.attempts;
    std::array<std::array<Elem, 3>, 3> m;
    for (auto& row : m)
      for (auto& e : row) e = fq[pick(rng)];
    const Pgl3Elem cand{m};
    if (cand.det().is_zero()) continue;
    r.matrix = Pgl3Elem::canonical(m);
    r.is_lift = lifts.count(r.matrix) > 0;
    if (r.is_lift) continue;
    r.preserves = preserves_curve_check(c.form, r.matrix);
    return r;
  }
}

}  // namespace bh
