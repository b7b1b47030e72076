#pragma once

// Dense univariate polynomials, binary forms, multivariate (weighted)
// homogeneous forms and rational expressions over a finite field.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bh/error.hpp"
#include "bh/field.hpp"

namespace bh {

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// binom(n, k) mod p by Lucas' theorem.
inline std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  while (n || k) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t j = 0; j < ki; ++j) {
      num = num * (ni - j) % p;
      den = den * (j + 1) % p;
    }
    r = r * num % p * detail::inv_mod(static_cast<std::uint32_t>(den), p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Field f) : field_(std::move(f)) {}
  UniPoly(Field f, std::vector<Elem> c) : field_(std::move(f)), c_(std::move(c)) { trim(); }

  static UniPoly constant(const Field& f, const Elem& c) { return UniPoly(f, {c}); }
  static UniPoly monomial(const Field& f, const Elem& c, std::size_t k) {
    std::vector<Elem> v(k + 1, f.zero());
    v[k] = c;
    return UniPoly(f, std::move(v));
  }
  static UniPoly x(const Field& f) { return monomial(f, f.one(), 1); }

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  Elem leading() const { return c_.empty() ? field_.zero() : c_.back(); }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(field_, std::move(r));
  }
  UniPoly operator-() const {
    std::vector<Elem> r = c_;
    for (auto& e : r) e = -e;
    return UniPoly(field_, std::move(r));
  }
  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly(field_);
    const auto* fd = field_.data();
    std::vector<std::uint32_t> acc(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const std::uint32_t a = c_[i].value();
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        const std::uint32_t b = o.c_[j].value();
        if (b == 0) continue;
        acc[i + j] = fd->add(acc[i + j], fd->mul(a, b));
      }
    }
    std::vector<Elem> r;
    r.reserve(acc.size());
    for (auto v : acc) r.emplace_back(fd, v);
    return UniPoly(field_, std::move(r));
  }
  UniPoly scale(const Elem& s) const {
    std::vector<Elem> r = c_;
    for (auto& e : r) e *= s;
    return UniPoly(field_, std::move(r));
  }
  UniPoly pow(std::uint64_t k) const {
    UniPoly result = constant(field_, field_.one());
    UniPoly base = *this;
    for (; k; k >>= 1) {
      if (k & 1) result = result * base;
      if (k > 1) base = base * base;
    }
    return result;
  }

  Elem eval(const Elem& x) const {
    Elem r = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  /// k-th Hasse derivative evaluated at a: sum_i binom(i,k) c_i a^(i-k).
  Elem hasse(std::size_t k, const Elem& a) const {
    Elem r = field_.zero();
    for (std::size_t i = c_.size(); i-- > k;) {
      const auto b = binom_mod_p(i, k, field_.characteristic());
      r = r * a + c_[i] * field_.from_int(b);
    }
    return r;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly(field_);
    std::vector<Elem> r(c_.size() - 1, field_.zero());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * field_.from_int(static_cast<std::int64_t>(i));
    return UniPoly(field_, std::move(r));
  }

  /// Horner composition f(g).
  UniPoly compose(const UniPoly& g) const {
    UniPoly r(field_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(field_, c_[i]);
    return r;
  }

  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(Errc::ZeroDenominator, "polynomial division by zero");
    const Field& f = a.field_;
    std::vector<Elem> rem = a.c_;
    if (a.degree() < b.degree()) return {UniPoly(f), a};
    std::vector<Elem> quo(a.c_.size() - b.c_.size() + 1, f.zero());
    const Elem inv = b.leading().inverse();
    for (std::size_t i = quo.size(); i-- > 0;) {
      const Elem c = rem[i + b.c_.size() - 1] * inv;
      quo[i] = c;
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[i + j] -= c * b.c_[j];
    }
    return {UniPoly(f, std::move(quo)), UniPoly(f, std::move(rem))};
  }

  /// Monic gcd (zero if both are zero).
  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      UniPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scale(a.leading().inverse());
  }

  std::string to_string(char var = 't') const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += '+';
      const std::string cs = c_[i].to_string();
      const bool compound = cs.find('+') != std::string::npos;
      if (i == 0) {
        out += compound ? "(" + cs + ")" : cs;
        continue;
      }
      if (!c_[i].is_one()) out += (compound ? "(" + cs + ")" : cs) + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field field_;
  std::vector<Elem> c_;
};

/// Largest m with (t - a)^m | f; kInfiniteOrder for f = 0.
inline int vanishing_order(const UniPoly& f, const Elem& a) {
  if (f.is_zero()) return kInfiniteOrder;
  if (!f.eval(a).is_zero()) return 0;
  const Field& k = f.field();
  const UniPoly lin(k, {-a, k.one()});
  UniPoly cur = f;
  int m = 0;
  for (;;) {
    auto [q, r] = UniPoly::divmod(cur, lin);
    if (!r.is_zero()) return m;
    cur = std::move(q);
    ++m;
  }
}

/// Order at t = infinity of f regarded as a form of the declared degree.
inline int vanishing_order_at_infinity(const UniPoly& f, int declared_degree) {
  if (f.is_zero()) return kInfiniteOrder;
  if (f.degree() > declared_degree) throw Error(Errc::InvalidArgument, "degree exceeds declared degree");
  return declared_degree - f.degree();
}

/// A point of P^1, normalized to [1:t] or [0:1].
struct P1Point {
  Elem s;
  Elem t;

  static P1Point affine(const Elem& t) { return {Elem(t.data(), 1), t}; }
  static P1Point infinity(const Field& f) { return {f.zero(), f.one()}; }
  static P1Point normalized(const Elem& s, const Elem& t) {
    if (s.is_zero()) {
      if (t.is_zero()) throw Error(Errc::InvalidArgument, "[0:0] is not a point");
      return {s, Elem(t.data(), 1)};
    }
    return {Elem(s.data(), 1), t / s};
  }
  bool is_infinity() const { return s.is_zero(); }
  std::string to_string() const { return "[" + s.to_string() + ":" + t.to_string() + "]"; }

  friend bool operator==(const P1Point& a, const P1Point& b) { return a.s == b.s && a.t == b.t; }
  friend bool operator<(const P1Point& a, const P1Point& b) {
    return std::pair(a.s.value(), a.t.value()) < std::pair(b.s.value(), b.t.value());
  }
};

/// All points of P^1 over the given field: [1:t] in element order, then [0:1].
inline std::vector<P1Point> p1_points(const Field& f) {
  std::vector<P1Point> out;
  out.reserve(f.order() + 1);
  for (const auto& e : f.elements()) out.push_back(P1Point::affine(e));
  out.push_back(P1Point::infinity(f));
  return out;
}

/// Homogeneous form in (s, t) of a declared degree D. Stored dehomogenized:
/// poly coefficient i is the coefficient of s^(D-i) t^i.
class BinaryForm {
 public:
  BinaryForm() = default;
  BinaryForm(int degree, UniPoly poly) : degree_(degree), poly_(std::move(poly)) {
    if (poly_.degree() > degree_) throw Error(Errc::InvalidArgument, "binary form exceeds declared degree");
  }

  static BinaryForm s(const Field& f) { return BinaryForm(1, UniPoly(f, {f.one()})); }
  static BinaryForm t(const Field& f) { return BinaryForm(1, UniPoly(f, {f.zero(), f.one()})); }
  /// a s + b t
  static BinaryForm linear(const Field& f, const Elem& a, const Elem& b) { return BinaryForm(1, UniPoly(f, {a, b})); }
  static BinaryForm constant(const Field& f, const Elem& c) { return BinaryForm(0, UniPoly(f, {c})); }

  int degree() const { return degree_; }
  const UniPoly& poly() const { return poly_; }
  const Field& field() const { return poly_.field(); }
  bool is_zero() const { return poly_.is_zero(); }
  Elem coeff(int i) const { return poly_.coeff(static_cast<std::size_t>(i)); }

  BinaryForm operator+(const BinaryForm& o) const {
    check_same_degree(o);
    return BinaryForm(degree_, poly_ + o.poly_);
  }
  BinaryForm operator-(const BinaryForm& o) const {
    check_same_degree(o);
    return BinaryForm(degree_, poly_ - o.poly_);
  }
  BinaryForm operator-() const { return BinaryForm(degree_, -poly_); }
  BinaryForm operator*(const BinaryForm& o) const { return BinaryForm(degree_ + o.degree_, poly_ * o.poly_); }
  BinaryForm scale(const Elem& c) const { return BinaryForm(degree_, poly_.scale(c)); }
  BinaryForm pow(std::uint64_t k) const { return BinaryForm(degree_ * static_cast<int>(k), poly_.pow(k)); }

  Elem eval(const Elem& s, const Elem& t) const {
    const Field& f = field();
    Elem r = f.zero();
    Elem tp = f.one();
    for (int i = 0; i <= degree_; ++i) {
      r += poly_.coeff(static_cast<std::size_t>(i)) * s.pow(static_cast<std::uint64_t>(degree_ - i)) * tp;
      tp *= t;
    }
    return r;
  }
  Elem eval(const P1Point& pt) const { return eval(pt.s, pt.t); }

  int order_at(const P1Point& pt) const {
    if (pt.is_infinity()) return vanishing_order_at_infinity(poly_, degree_);
    return vanishing_order(poly_, pt.t);
  }

  /// The form in the affine chart around pt: f(1, t) for finite points,
  /// f(s, 1) at infinity (where the point sits at s = 0).
  UniPoly chart_poly(const P1Point& pt) const {
    if (!pt.is_infinity()) return poly_;
    const Field& f = field();
    std::vector<Elem> rev(static_cast<std::size_t>(degree_) + 1, f.zero());
    for (int i = 0; i <= degree_; ++i) rev[static_cast<std::size_t>(degree_ - i)] = poly_.coeff(static_cast<std::size_t>(i));
    return UniPoly(f, std::move(rev));
  }
  /// Coordinate of pt in the chart used by chart_poly.
  static Elem chart_coordinate(const P1Point& pt) { return pt.is_infinity() ? pt.s : pt.t; }

  /// Substitutes s -> a s + b t, t -> c s + d t.
  BinaryForm substitute(const Elem& a, const Elem& b, const Elem& c, const Elem& d) const {
    const Field& f = field();
    const BinaryForm S = linear(f, a, b), T = linear(f, c, d);
    std::vector<BinaryForm> spow{constant(f, f.one())}, tpow{constant(f, f.one())};
    for (int i = 1; i <= degree_; ++i) {
      spow.push_back(spow.back() * S);
      tpow.push_back(tpow.back() * T);
    }
    BinaryForm r(degree_, UniPoly(f));
    for (int i = 0; i <= degree_; ++i) {
      const Elem ci = poly_.coeff(static_cast<std::size_t>(i));
      if (ci.is_zero()) continue;
      r = r + (spow[static_cast<std::size_t>(degree_ - i)] * tpow[static_cast<std::size_t>(i)]).scale(ci);
    }
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree_; i >= 0; --i) {
      const Elem c = poly_.coeff(static_cast<std::size_t>(i));
      if (c.is_zero()) continue;
      if (!out.empty()) out += '+';
      const int se = degree_ - i;
      std::string mono;
      if (se > 0) mono += "s" + (se > 1 ? "^" + std::to_string(se) : std::string());
      if (i > 0) mono += (mono.empty() ? "" : "*") + std::string("t") + (i > 1 ? "^" + std::to_string(i) : "");
      const std::string cs = c.to_string();
      const bool compound = cs.find('+') != std::string::npos;
      if (mono.empty()) {
        out += cs;
      } else {
        if (!c.is_one()) out += (compound ? "(" + cs + ")" : cs) + "*";
        out += mono;
      }
    }
    return out;
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.degree_ == b.degree_ && a.poly_ == b.poly_;
  }

 private:
  void check_same_degree(const BinaryForm& o) const {
    if (degree_ != o.degree_) throw Error(Errc::InvalidArgument, "adding binary forms of different degree");
  }

  int degree_ = 0;
  UniPoly poly_;
};

/// True iff the two tuples agree up to one common nonzero scalar.
inline bool proportional(std::span<const BinaryForm> a, std::span<const BinaryForm> b) {
  if (a.size() != b.size()) return false;
  std::optional<Elem> lambda;  // b = lambda * a
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].degree() != b[i].degree()) return false;
    const int n = std::max(a[i].poly().degree(), b[i].poly().degree());
    for (int k = 0; k <= n; ++k) {
      const Elem x = a[i].coeff(k), y = b[i].coeff(k);
      if (x.is_zero() != y.is_zero()) return false;
      if (x.is_zero()) continue;
      const Elem r = y / x;
      if (lambda && !(*lambda == r)) return false;
      lambda = r;
    }
  }
  return lambda.has_value();
}

using Monomial = std::array<std::uint16_t, 4>;

/// General multivariate polynomial in up to four variables.
class MPoly {
 public:
  MPoly() = default;
  MPoly(Field f, int nvars) : field_(std::move(f)), nvars_(nvars) {
    if (nvars < 1 || nvars > 4) throw Error(Errc::ArityMismatch, "MPoly supports 1..4 variables");
  }

  static MPoly var(const Field& f, int nvars, int i) {
    MPoly r(f, nvars);
    Monomial m{};
    m[static_cast<std::size_t>(i)] = 1;
    r.terms_.emplace(m, f.one());
    return r;
  }
  static MPoly constant(const Field& f, int nvars, const Elem& c) {
    MPoly r(f, nvars);
    if (!c.is_zero()) r.terms_.emplace(Monomial{}, c);
    return r;
  }
  static MPoly monomial(const Field& f, int nvars, const Monomial& m, const Elem& c) {
    MPoly r(f, nvars);
    if (!c.is_zero()) r.terms_.emplace(m, c);
    return r;
  }
  /// sum_i c_i x_i
  static MPoly linear(const Field& f, std::span<const Elem> c) {
    MPoly r(f, static_cast<int>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) r = r + var(f, r.nvars_, static_cast<int>(i)).scale(c[i]);
    return r;
  }

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  const std::map<Monomial, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Elem coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  MPoly operator+(const MPoly& o) const {
    check(o);
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + (-o); }

  MPoly operator*(const MPoly& o) const {
    check(o);
    if (is_zero() || o.is_zero()) return MPoly(field_, nvars_);
    const auto* fd = field_.data();
    std::vector<std::pair<std::uint64_t, std::uint32_t>> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) acc.emplace_back(pack(ma) + pack(mb), fd->mul(ca.value(), cb.value()));
    std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    MPoly r(field_, nvars_);
    for (std::size_t i = 0; i < acc.size();) {
      std::uint32_t sum = 0;
      std::size_t j = i;
      for (; j < acc.size() && acc[j].first == acc[i].first; ++j) sum = fd->add(sum, acc[j].second);
      if (sum != 0) r.terms_.emplace_hint(r.terms_.end(), unpack(acc[i].first), Elem(fd, sum));
      i = j;
    }
    return r;
  }

  MPoly scale(const Elem& s) const {
    if (s.is_zero()) return MPoly(field_, nvars_);
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }

  MPoly pow(std::uint64_t k) const {
    MPoly result = constant(field_, nvars_, field_.one());
    MPoly base = *this;
    for (; k; k >>= 1) {
      if (k & 1) result = result * base;
      if (k > 1) base = base * base;
    }
    return result;
  }

  int weighted_degree(std::span<const int> weights) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, weight_of(m, weights));
    return d;
  }
  int total_degree() const {
    const std::array<int, 4> ones{1, 1, 1, 1};
    return weighted_degree(std::span<const int>(ones.data(), static_cast<std::size_t>(nvars_)));
  }
  bool is_homogeneous(std::span<const int> weights) const {
    const int d = weighted_degree(weights);
    for (const auto& [m, c] : terms_)
      if (weight_of(m, weights) != d) return false;
    return true;
  }
  /// Largest power of variable i dividing every term.
  int min_degree_in(int i) const {
    int d = kInfiniteOrder;
    for (const auto& [m, c] : terms_) d = std::min<int>(d, m[static_cast<std::size_t>(i)]);
    return d;
  }

  MPoly partial(int i) const {
    MPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_) {
      const auto e = m[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      Monomial mm = m;
      --mm[static_cast<std::size_t>(i)];
      r.add_term(mm, c * field_.from_int(e));
    }
    return r;
  }

  Elem evaluate(std::span<const Elem> x) const {
    if (static_cast<int>(x.size()) != nvars_) throw Error(Errc::ArityMismatch, "evaluate: wrong point arity");
    Elem r = field_.zero();
    for (const auto& [m, c] : terms_) {
      Elem t = c;
      for (int i = 0; i < nvars_; ++i) t *= x[static_cast<std::size_t>(i)].pow(m[static_cast<std::size_t>(i)]);
      r += t;
    }
    return r;
  }

  /// Substitution of univariate polynomials: F(subs_1, ..., subs_n).
  UniPoly compose(const std::vector<UniPoly>& subs) const {
    return compose_generic<UniPoly>(subs, UniPoly::constant(field_, field_.one()), UniPoly(field_));
  }

  /// Substitution of multivariate polynomials (any common arity).
  MPoly compose(const std::vector<MPoly>& subs) const {
    if (subs.empty()) throw Error(Errc::ArityMismatch, "compose: no substitutions");
    const int n = subs.front().nvars();
    return compose_generic<MPoly>(subs, constant(field_, n, field_.one()), MPoly(field_, n));
  }

  /// Substitution of binary forms; subs[i] must have degree weights[i] * k.
  BinaryForm compose(const std::vector<BinaryForm>& subs, std::span<const int> weights) const {
    if (static_cast<int>(subs.size()) != nvars_ || static_cast<int>(weights.size()) != nvars_)
      throw Error(Errc::ArityMismatch, "compose: arity mismatch");
    if (!is_homogeneous(weights)) throw Error(Errc::InvalidArgument, "compose: form is not weighted-homogeneous");
    int k = -1;
    for (int i = 0; i < nvars_; ++i) {
      const auto w = weights[static_cast<std::size_t>(i)];
      const auto sd = subs[static_cast<std::size_t>(i)].degree();
      if (sd % w != 0 || (k >= 0 && sd / w != k))
        throw Error(Errc::InvalidArgument, "compose: substitution degrees do not respect weights");
      k = sd / w;
    }
    std::vector<UniPoly> polys;
    for (const auto& s : subs) polys.push_back(s.poly());
    const int d = std::max(weighted_degree(weights), 0);
    return BinaryForm(d * k, compose(polys));
  }

  /// Canonical text: graded-lex descending, coefficients in canonical element syntax.
  std::string to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Elem>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      const int da = a.first[0] + a.first[1] + a.first[2] + a.first[3];
      const int db = b.first[0] + b.first[1] + b.first[2] + b.first[3];
      if (da != db) return da > db;
      return a.first > b.first;
    });
    std::string out;
    for (const auto& [m, c] : v) {
      std::string mono;
      for (int i = 0; i < nvars_; ++i) {
        const auto e = m[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[static_cast<std::size_t>(i)];
        if (e > 1) mono += "^" + std::to_string(e);
      }
      const std::string cs = c.to_string();
      const bool compound = cs.find('+') != std::string::npos;
      if (!out.empty()) out += "+";
      if (mono.empty()) {
        out += cs;
      } else {
        if (!c.is_one()) out += (compound ? "(" + cs + ")" : cs) + "*";
        out += mono;
      }
    }
    return out;
  }
  std::string to_string() const {
    std::vector<std::string> names;
    for (int i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i));
    return to_string(names);
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

 private:
  static std::uint64_t pack(const Monomial& m) {
    return (std::uint64_t(m[0]) << 48) | (std::uint64_t(m[1]) << 32) | (std::uint64_t(m[2]) << 16) | m[3];
  }
  static Monomial unpack(std::uint64_t k) {
    return {static_cast<std::uint16_t>(k >> 48), static_cast<std::uint16_t>(k >> 32),
            static_cast<std::uint16_t>(k >> 16), static_cast<std::uint16_t>(k)};
  }
  int weight_of(const Monomial& m, std::span<const int> weights) const {
    if (static_cast<int>(weights.size()) != nvars_) throw Error(Errc::ArityMismatch, "weights arity");
    int d = 0;
    for (int i = 0; i < nvars_; ++i) d += weights[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)];
    return d;
  }
  void add_term(const Monomial& m, const Elem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  void check(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw Error(Errc::ArityMismatch, "MPoly arity mismatch");
  }

  template <class P>
  P compose_generic(const std::vector<P>& subs, const P& one, const P& zero) const {
    if (static_cast<int>(subs.size()) != nvars_) throw Error(Errc::ArityMismatch, "compose: arity mismatch");
    std::array<std::vector<P>, 4> powers;
    for (int i = 0; i < nvars_; ++i) {
      int maxe = 0;
      for (const auto& [m, c] : terms_) maxe = std::max<int>(maxe, m[static_cast<std::size_t>(i)]);
      auto& pw = powers[static_cast<std::size_t>(i)];
      pw.push_back(one);
      for (int e = 1; e <= maxe; ++e) pw.push_back(pw.back() * subs[static_cast<std::size_t>(i)]);
    }
    P r = zero;
    for (const auto& [m, c] : terms_) {
      P t = powers[0][m[0]].scale(c);
      for (int i = 1; i < nvars_; ++i) t = t * powers[static_cast<std::size_t>(i)][m[static_cast<std::size_t>(i)]];
      r = r + t;
    }
    return r;
  }

  Field field_;
  int nvars_ = 1;
  std::map<Monomial, Elem> terms_;
};

/// A weighted-homogeneous form; all variable weights 1 for straight
/// projective space.
class HomogForm {
 public:
  HomogForm() = default;
  HomogForm(MPoly poly, std::vector<int> weights) : poly_(std::move(poly)), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != poly_.nvars()) throw Error(Errc::ArityMismatch, "weights arity");
    for (int w : weights_)
      if (w < 1) throw Error(Errc::InvalidArgument, "weights must be positive");
    if (!poly_.is_homogeneous(weights_)) throw Error(Errc::InvalidArgument, "form is not weighted-homogeneous");
    degree_ = poly_.weighted_degree(weights_);
  }
  explicit HomogForm(MPoly poly) : HomogForm(poly, std::vector<int>(static_cast<std::size_t>(poly.nvars()), 1)) {}

  const MPoly& poly() const { return poly_; }
  const std::vector<int>& weights() const { return weights_; }
  int degree() const { return degree_; }
  int nvars() const { return poly_.nvars(); }
  const Field& field() const { return poly_.field(); }
  bool is_zero() const { return poly_.is_zero(); }

  Elem evaluate(std::span<const Elem> x) const { return poly_.evaluate(x); }
  MPoly partial(int i) const { return poly_.partial(i); }
  std::string to_string(std::span<const std::string> names) const { return poly_.to_string(names); }
  std::string to_string() const { return poly_.to_string(); }

  friend bool operator==(const HomogForm& a, const HomogForm& b) {
    return a.weights_ == b.weights_ && a.poly_ == b.poly_;
  }

 private:
  MPoly poly_;
  std::vector<int> weights_;
  int degree_ = -1;
};

/// F(subs_1, ..., subs_n) expanded exactly.
inline UniPoly compose(const HomogForm& f, const std::vector<UniPoly>& subs) {
  if (static_cast<int>(subs.size()) != f.nvars())
    throw Error(Errc::ArityMismatch, "expected " + std::to_string(f.nvars()) + " substitutions, got " +
                                         std::to_string(subs.size()));
  return f.poly().compose(subs);
}

inline BinaryForm compose(const HomogForm& f, const std::vector<BinaryForm>& subs) {
  if (static_cast<int>(subs.size()) != f.nvars())
    throw Error(Errc::ArityMismatch, "expected " + std::to_string(f.nvars()) + " substitutions");
  return f.poly().compose(subs, f.weights());
}

/// Quotient of two multivariate polynomials; never reduced.
class RationalExpr {
 public:
  RationalExpr(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(Errc::ZeroDenominator, "denominator is identically zero");
  }
  explicit RationalExpr(MPoly num)
      : RationalExpr(num, MPoly::constant(num.field(), num.nvars(), num.field().one())) {}

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  RationalExpr operator+(const RationalExpr& o) const {
    if (den_ == o.den_) return {num_ + o.num_, den_};
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
  }
  RationalExpr operator-() const { return {-num_, den_}; }
  RationalExpr operator-(const RationalExpr& o) const { return *this + (-o); }
  RationalExpr operator*(const RationalExpr& o) const { return {num_ * o.num_, den_ * o.den_}; }
  RationalExpr operator/(const RationalExpr& o) const {
    if (o.num_.is_zero()) throw Error(Errc::ZeroDenominator, "division by the zero function");
    return {num_ * o.den_, den_ * o.num_};
  }
  RationalExpr pow(std::uint64_t k) const { return {num_.pow(k), den_.pow(k)}; }

 private:
  MPoly num_;
  MPoly den_;
};

/// lhs == rhs as rational functions, by cross-multiplication.
inline bool rational_identity(const RationalExpr& lhs, const RationalExpr& rhs) {
  return (lhs.num() * rhs.den() - rhs.num() * lhs.den()).is_zero();
}

}  // namespace bh
