#pragma once

// Exact arithmetic in F_p and F_{p^n}.
//
// Elements are stored by their coordinate vector in the power basis of the
// modulus root, packed as the integer sum c_i p^i. That packing is the
// canonical form: two elements are equal iff their packed values are equal.
// Multiplication and addition run through discrete-log and Zech-log tables
// built once per field.

#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bh/error.hpp"

namespace bh {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// q = p^nu with p prime.
struct PrimePower {
  std::uint32_t p = 2;
  std::uint32_t nu = 1;
  std::uint32_t q = 2;

  static PrimePower of(std::uint64_t q) {
    if (q < 2) throw Error(Errc::NotPrime, "q must be >= 2, got " + std::to_string(q));
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint64_t v = q;
    std::uint32_t nu = 0;
    while (v % p == 0) {
      v /= p;
      ++nu;
    }
    if (v != 1) throw Error(Errc::NotPrime, std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(p), nu, static_cast<std::uint32_t>(q)};
  }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

namespace detail {

using FpPoly = std::vector<std::uint32_t>;  // low-to-high, trimmed

inline void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return static_cast<std::uint32_t>(r);
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  trim(r);
  return r;
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& f, std::uint32_t p) {
  trim(a);
  const std::size_t n = f.size() - 1;
  const std::uint32_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > n) {
    const std::size_t shift = a.size() - 1 - n;
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= n; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
    trim(a);
  }
  return a;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^(p^k) mod f.
inline FpPoly frobenius_power_of_x(const FpPoly& f, std::uint32_t p, std::uint32_t k) {
  FpPoly cur = fp_mod({0, 1}, f, p);
  for (std::uint32_t step = 0; step < k; ++step) {
    FpPoly r{1};
    FpPoly base = cur;
    for (std::uint32_t e = p; e; e >>= 1) {
      if (e & 1) r = fp_mod(fp_mul(r, base, p), f, p);
      base = fp_mod(fp_mul(base, base, p), f, p);
    }
    cur = r;
  }
  return cur;
}

/// Rabin's test: f monic of degree n is irreducible iff x^(p^n) = x mod f and
/// gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n.
inline bool is_irreducible(const FpPoly& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  if (n == 0) return false;
  if (n == 1) return true;
  const FpPoly x = fp_mod({0, 1}, f, p);
  if (fp_sub(frobenius_power_of_x(f, p, n), x, p).size() != 0) return false;
  for (std::uint32_t r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    FpPoly g = fp_gcd(f, fp_sub(frobenius_power_of_x(f, p, n / r), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

/// Lexicographically least monic irreducible of degree n, comparing the
/// coefficient tuple (c_0, ..., c_{n-1}) with c_0 most significant.
inline FpPoly least_irreducible(std::uint32_t p, std::uint32_t n) {
  FpPoly f(n + 1, 0);
  f[n] = 1;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t v = idx;
    for (std::uint32_t i = n; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw Error(Errc::ReducibleModulus, "no irreducible polynomial found");
}

/// Parses an integer-coefficient polynomial in one letter, reducing mod p.
/// Grammar: [+-] term {(+|-) term}, term = int | [int [*]] var [^ int].
inline FpPoly parse_fp_poly(std::string_view text, std::uint32_t p, std::string_view letters) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.empty()) throw Error(Errc::Parse, "empty polynomial");
  FpPoly out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error(Errc::Parse, "'" + std::string(text) + "': " + why);
  };
  auto read_uint = [&](std::uint64_t& v) {
    const std::size_t start = i;
    v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
      if (v > (1ull << 40)) throw fail("number too large");
      ++i;
    }
    return i > start;
  };
  bool first = true;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    std::uint64_t coef = 1;
    std::uint64_t expo = 0;
    const bool has_coef = read_uint(coef);
    if (!has_coef) coef = 1;
    if (has_coef && i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && letters.find(s[i]) != std::string_view::npos) {
      ++i;
      expo = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!read_uint(expo)) throw fail("missing exponent");
      }
    } else if (!has_coef) {
      throw fail("unexpected character");
    } else if (i > 0 && s[i - 1] == '*') {
      throw fail("dangling '*'");
    }
    if (expo > 4096) throw fail("exponent too large");
    if (out.size() <= expo) out.resize(expo + 1, 0);
    const std::uint32_t c = static_cast<std::uint32_t>(coef % p);
    out[expo] = negative ? (out[expo] + p - c) % p : (out[expo] + c) % p;
  }
  trim(out);
  return out;
}

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t order = 0;
  FpPoly modulus;
  std::vector<std::uint32_t> pow_p;
  std::vector<std::uint32_t> exp_table;  // g^i, i in [0, order-1)
  std::vector<std::int32_t> log_table;   // log_table[0] = -1
  std::vector<std::int32_t> zech;        // log(1 + g^k), -1 if zero
  std::uint32_t half = 0;                // log(-1)

  std::uint32_t cycle() const { return order - 1; }

  FpPoly decode(std::uint32_t v) const {
    FpPoly c(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      c[i] = v % p;
      v /= p;
    }
    return c;
  }

  std::uint32_t encode(const FpPoly& c) const {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
  }

  std::uint32_t slow_add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      r += ((a % p + b % p) % p) * pow_p[i];
      a /= p;
      b /= p;
    }
    return r;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    FpPoly pa = decode(a), pb = decode(b);
    trim(pa);
    trim(pb);
    FpPoly r = fp_mod(fp_mul(pa, pb, p), modulus, p);
    r.resize(n, 0);
    return encode(r);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    if (p == 2 && n <= 31) return a ^ b;
    const std::uint32_t la = static_cast<std::uint32_t>(log_table[a]);
    const std::uint32_t lb = static_cast<std::uint32_t>(log_table[b]);
    const std::int32_t z = zech[(lb + cycle() - la) % cycle()];
    if (z < 0) return 0;
    return exp_table[(la + static_cast<std::uint32_t>(z)) % cycle()];
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (a == 0 || p == 2) return a;
    return exp_table[(static_cast<std::uint32_t>(log_table[a]) + half) % cycle()];
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_table[(static_cast<std::uint32_t>(log_table[a]) + static_cast<std::uint32_t>(log_table[b])) %
                     cycle()];
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw Error(Errc::ZeroDenominator, "inverse of zero");
    return exp_table[(cycle() - static_cast<std::uint32_t>(log_table[a])) % cycle()];
  }
};

}  // namespace detail

class Field;

/// An element of a finite field. Holds a non-owning pointer to the field
/// tables; the originating Field must outlive it.
class Elem {
 public:
  Elem() = default;
  Elem(const detail::FieldData* f, std::uint32_t v) : f_(f), v_(v) {}

  std::uint32_t value() const { return v_; }
  const detail::FieldData* data() const { return f_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::vector<std::uint32_t> coords() const { return f_->decode(v_); }

  Elem operator+(const Elem& o) const { return {f_, f_->add(v_, o.v_)}; }
  Elem operator-(const Elem& o) const { return {f_, f_->add(v_, f_->neg(o.v_))}; }
  Elem operator-() const { return {f_, f_->neg(v_)}; }
  Elem operator*(const Elem& o) const { return {f_, f_->mul(v_, o.v_)}; }
  Elem operator/(const Elem& o) const { return {f_, f_->mul(v_, f_->inv(o.v_))}; }
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator-=(const Elem& o) { return *this = *this - o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }

  Elem inverse() const { return {f_, f_->inv(v_)}; }

  /// Square-and-multiply; 0^0 = 1.
  Elem pow(std::uint64_t k) const {
    Elem result{f_, 1};
    Elem base = *this;
    for (; k; k >>= 1) {
      if (k & 1) result *= base;
      base *= base;
    }
    return result;
  }

  /// Canonical text form, e.g. "2*a+1", "a^2", "0".
  std::string to_string() const {
    const auto c = coords();
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += '+';
      if (i == 0) {
        out += std::to_string(c[i]);
      } else {
        if (c[i] != 1) out += std::to_string(c[i]) + "*";
        out += 'a';
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const Elem& a, const Elem& b) { return a.v_ == b.v_ && a.f_ == b.f_; }
  friend bool operator<(const Elem& a, const Elem& b) { return a.v_ < b.v_; }

 private:
  const detail::FieldData* f_ = nullptr;
  std::uint32_t v_ = 0;
};

class Field {
 public:
  Field() = default;

  /// F_{p^n}. Without a modulus, uses the lexicographically least monic
  /// irreducible of degree n.
  static Field make(std::uint32_t p, std::uint32_t n, std::optional<detail::FpPoly> modulus = std::nullopt) {
    if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (n < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      order *= p;
      if (order > (1u << 20)) throw Error(Errc::InvalidArgument, "field too large for table arithmetic");
    }
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->n = n;
    d->order = static_cast<std::uint32_t>(order);
    if (modulus) {
      detail::FpPoly f = *modulus;
      for (auto& c : f) c %= p;
      detail::trim(f);
      if (f.size() != n + 1 || f.back() != 1)
        throw Error(Errc::InvalidArgument, "modulus must be monic of degree " + std::to_string(n));
      if (!detail::is_irreducible(f, p)) throw Error(Errc::ReducibleModulus, "modulus is reducible over F_p");
      d->modulus = std::move(f);
    } else {
      d->modulus = detail::least_irreducible(p, n);
    }
    d->pow_p.resize(n + 1);
    d->pow_p[0] = 1;
    for (std::uint32_t i = 1; i <= n; ++i) d->pow_p[i] = d->pow_p[i - 1] * p;
    build_tables(*d);
    Field f;
    f.d_ = std::move(d);
    return f;
  }

  std::uint32_t characteristic() const { return d_->p; }
  std::uint32_t degree() const { return d_->n; }
  std::uint32_t order() const { return d_->order; }
  const detail::FpPoly& modulus() const { return d_->modulus; }
  const detail::FieldData* data() const { return d_.get(); }

  Elem zero() const { return {d_.get(), 0}; }
  Elem one() const { return {d_.get(), 1}; }
  /// The class of x modulo the modulus ("a" in text syntax).
  Elem gen() const { return from_coords({0, 1}); }
  Elem from_int(std::int64_t v) const {
    const std::int64_t p = d_->p;
    return {d_.get(), static_cast<std::uint32_t>(((v % p) + p) % p)};
  }
  Elem element(std::uint32_t packed) const {
    if (packed >= d_->order) throw Error(Errc::InvalidArgument, "packed value out of range");
    return {d_.get(), packed};
  }
  Elem from_coords(const detail::FpPoly& c) const {
    detail::FpPoly r = c;
    for (auto& x : r) x %= d_->p;
    detail::trim(r);
    if (r.size() > d_->n) r = detail::fp_mod(r, d_->modulus, d_->p);
    r.resize(d_->n, 0);
    return {d_.get(), d_->encode(r)};
  }

  /// All elements in ascending packed order; deterministic for a given modulus.
  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(d_->order);
    for (std::uint32_t v = 0; v < d_->order; ++v) out.emplace_back(d_.get(), v);
    return out;
  }

  /// Field element text, polynomial in the generator letter `a`.
  Elem parse(std::string_view text) const { return from_coords(detail::parse_fp_poly(text, d_->p, "a")); }

  std::string modulus_string() const {
    std::string out;
    const auto& f = d_->modulus;
    for (std::size_t i = f.size(); i-- > 0;) {
      if (f[i] == 0) continue;
      if (!out.empty()) out += '+';
      if (i == 0) {
        out += std::to_string(f[i]);
      } else {
        if (f[i] != 1) out += std::to_string(f[i]) + "*";
        out += 'x';
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  bool contains_subfield_of_order(std::uint64_t sub_order) const {
    std::uint64_t v = 1;
    for (std::uint32_t dd = 1; dd <= d_->n; ++dd) {
      v *= d_->p;
      if (v == sub_order) return d_->n % dd == 0;
    }
    return false;
  }

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

 private:
  static void build_tables(detail::FieldData& d) {
    const std::uint32_t N = d.order - 1;
    d.log_table.assign(d.order, -1);
    d.exp_table.assign(N, 0);
    for (std::uint32_t g = 1; g < d.order; ++g) {
      std::uint32_t x = 1;
      std::uint32_t period = 0;
      do {
        x = d.slow_mul(x, g);
        ++period;
      } while (x != 1 && period <= N);
      if (period != N) continue;
      x = 1;
      for (std::uint32_t i = 0; i < N; ++i) {
        d.exp_table[i] = x;
        d.log_table[x] = static_cast<std::int32_t>(i);
        x = d.slow_mul(x, g);
      }
      break;
    }
    d.half = (d.p == 2) ? 0 : N / 2;
    d.zech.assign(N, -1);
    for (std::uint32_t k = 0; k < N; ++k) d.zech[k] = d.log_table[d.slow_add(1, d.exp_table[k])];
  }

  std::shared_ptr<const detail::FieldData> d_;
};

/// F_{p^n}; `modulus` (monic, low-to-high) defaults to the least irreducible.
inline Field make_field(std::uint32_t p, std::uint32_t n, std::optional<detail::FpPoly> modulus = std::nullopt) {
  return Field::make(p, n, std::move(modulus));
}

/// Parses a modulus like "x^2+1" over F_p.
inline detail::FpPoly parse_modulus(std::string_view text, std::uint32_t p) {
  return detail::parse_fp_poly(text, p, "xa");
}

inline Elem power(const Elem& e, std::uint64_t k) { return e.pow(k); }

inline std::vector<Elem> enumerate(const Field& f) { return f.elements(); }

/// e lies in the subfield of order sub_order = p^d (d | n) iff e^(p^d) = e.
inline bool subfield_test(const Elem& e, std::uint64_t sub_order) {
  const auto* d = e.data();
  std::uint64_t v = 1;
  bool ok = false;
  for (std::uint32_t dd = 1; dd <= d->n; ++dd) {
    v *= d->p;
    if (v == sub_order) {
      ok = d->n % dd == 0;
      break;
    }
  }
  if (!ok) throw Error(Errc::NotASubfieldOrder, std::to_string(sub_order) + " is not a subfield order");
  return e.pow(sub_order) == e;
}

/// All square roots of `x` present in the field, ascending packed order.
inline std::vector<Elem> square_roots(const Field& f, const Elem& x) {
  std::vector<Elem> out;
  for (const auto& e : f.elements())
    if (e * e == x) out.push_back(e);
  return out;
}

}  // namespace bh
