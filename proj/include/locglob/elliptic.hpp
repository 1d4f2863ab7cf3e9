#pragma once

// Curves y^2 = (x - e1)(x - e2)(x - e3) over Q, Q_p and R, with point
// halving and 2-power divisibility tests.
//
// Field contexts share one templated group law. Local contexts carry their
// own precision bookkeeping: every square-root decision and every equality
// test records how many digits it actually relied on, and a verdict that
// leaned on fewer than kHorizonMargin digits is recomputed at doubled
// precision.

#include "locglob/number.hpp"
#include "locglob/padic.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace locglob {

constexpr std::int64_t kHorizonMargin = 8;
constexpr int kMaxPrecisionDoublings = 6;

/// Exact rational arithmetic.
struct RationalField {
  using T = Rational;

  T embed(const Rational& r) const { return r; }
  std::optional<T> sqrt_exact(const Rational& r) const {
    if (r == 0) return Rational(0);
    return num::exact_root(r, 2);
  }
  std::optional<T> sqrt(const T& x) const { return sqrt_exact(x); }
  bool eq(const T& a, const T& b) const { return a == b; }
  T inverse(const T& a) const {
    if (a == 0) throw InvalidInput("division by zero");
    return Rational(1) / a;
  }
  std::string describe(const T& a) const { return num::to_string(a); }
};

/// Q_p at a working precision; exact zeros get an unbounded absolute precision.
struct PadicField {
  using T = PadicNumber;
  static constexpr std::int64_t kExactZero = std::int64_t{1} << 40;

  std::uint64_t p;
  std::int64_t precision;
  mutable std::int64_t min_margin = std::numeric_limits<std::int64_t>::max();

  T embed(const Rational& r) const {
    if (r == 0) return PadicNumber::zero(p, kExactZero);
    return PadicNumber::from_rational(r, p, precision);
  }

  std::optional<T> sqrt_exact(const Rational& r) const {
    if (r == 0) return PadicNumber::zero(p, kExactZero);
    const auto root = nth_root(r, 2, Place::prime(p), precision);
    if (!root) return std::nullopt;
    return *root->padic;
  }

  std::optional<T> sqrt(const T& x) const {
    if (x.is_zero()) {
      if (x.absolute_precision() >= kExactZero / 2) return x;
      throw PrecisionExhausted("square root of a value indistinguishable from zero at p=" + std::to_string(p));
    }
    note(x.precision() - (p == 2 ? 3 : 1));
    return locglob::sqrt(x);
  }

  bool eq(const T& a, const T& b) const {
    const PadicNumber d = a - b;
    if (!d.is_zero()) return false;
    if (d.absolute_precision() < kExactZero / 2) note(d.absolute_precision() - std::min(a.valuation(), b.valuation()));
    return true;
  }

  T inverse(const T& a) const { return a.inverse(); }
  std::string describe(const T& a) const { return a.describe(); }

  void note(std::int64_t margin) const { min_margin = std::min(min_margin, margin); }
};

/// R with 100 significant digits; rational inputs are sign-tested exactly.
struct RealField {
  using T = Real;

  T embed(const Rational& r) const { return to_real(r); }

  std::optional<T> sqrt_exact(const Rational& r) const {
    if (r < 0) return std::nullopt;
    return boost::multiprecision::sqrt(to_real(r));
  }

  std::optional<T> sqrt(const T& x) const {
    if (boost::multiprecision::abs(x) < tolerance()) {
      throw PrecisionExhausted("real square root of a value within 1e-60 of zero");
    }
    if (x < 0) return std::nullopt;
    return boost::multiprecision::sqrt(x);
  }

  bool eq(const T& a, const T& b) const {
    const Real scale = std::max({Real(1), boost::multiprecision::abs(a), boost::multiprecision::abs(b)});
    return boost::multiprecision::abs(a - b) <= scale * Real("1e-50");
  }

  T inverse(const T& a) const {
    if (boost::multiprecision::abs(a) < tolerance()) throw PrecisionExhausted("real division by a value near zero");
    return Real(1) / a;
  }

  std::string describe(const T& a) const { return a.str(20); }

  static Real tolerance() { return Real("1e-60"); }
};

/// y^2 = (x - e1)(x - e2)(x - e3) with distinct rational e_i.
class Curve {
 public:
  Curve(Rational e1, Rational e2, Rational e3) : e_{std::move(e1), std::move(e2), std::move(e3)} {
    if (e_[0] == e_[1] || e_[0] == e_[2] || e_[1] == e_[2]) {
      throw InvalidInput("curve: roots e1, e2, e3 must be distinct");
    }
    a2_ = -(e_[0] + e_[1] + e_[2]);
    a4_ = e_[0] * e_[1] + e_[0] * e_[2] + e_[1] * e_[2];
    a6_ = -(e_[0] * e_[1] * e_[2]);
  }

  const std::array<Rational, 3>& roots() const { return e_; }
  const Rational& a2() const { return a2_; }
  const Rational& a4() const { return a4_; }
  const Rational& a6() const { return a6_; }

  Rational rhs(const Rational& x) const { return (x - e_[0]) * (x - e_[1]) * (x - e_[2]); }

  std::string describe() const {
    auto term = [](const Rational& e) {
      if (e == 0) return std::string("x");
      return e > 0 ? "(x - " + num::to_string(e) + ")" : "(x + " + num::to_string(-e) + ")";
    };
    return "y^2 = " + term(e_[0]) + term(e_[1]) + term(e_[2]);
  }

 private:
  std::array<Rational, 3> e_;
  Rational a2_, a4_, a6_;
};

/// A point over a field context. Points that came from exact rationals keep
/// them, so differences such as x - e_i can be formed exactly.
template <class F>
struct Point {
  bool infinity = true;
  typename F::T x{};
  typename F::T y{};
  std::optional<Rational> exact_x;
  std::optional<Rational> exact_y;

  static Point at_infinity() { return Point{}; }
};

using RationalPoint = Point<RationalField>;
using PadicPoint = Point<PadicField>;
using RealPoint = Point<RealField>;

inline RationalPoint rational_point(const Curve& curve, const Rational& x, const Rational& y) {
  if (y * y != curve.rhs(x)) throw InvalidInput("point (" + num::to_string(x) + ", " + num::to_string(y) + ") is not on " + curve.describe());
  return RationalPoint{false, x, y, x, y};
}

template <class F>
Point<F> embed_point(const F& field, const RationalPoint& p) {
  if (p.infinity) return Point<F>::at_infinity();
  return Point<F>{false, field.embed(p.x), field.embed(p.y), p.x, p.y};
}

template <class F>
std::string describe(const F& field, const Point<F>& p) {
  if (p.infinity) return "O";
  if (p.exact_x && p.exact_y) return "(" + num::to_string(*p.exact_x) + ", " + num::to_string(*p.exact_y) + ")";
  return "(" + field.describe(p.x) + ", " + field.describe(p.y) + ")";
}

template <class F>
bool same_point(const F& field, const Point<F>& a, const Point<F>& b) {
  if (a.infinity || b.infinity) return a.infinity == b.infinity;
  if (a.exact_x && a.exact_y && b.exact_x && b.exact_y) return *a.exact_x == *b.exact_x && *a.exact_y == *b.exact_y;
  return field.eq(a.x, b.x) && field.eq(a.y, b.y);
}

template <class F>
Point<F> negate(const Point<F>& p) {
  if (p.infinity) return p;
  Point<F> out = p;
  out.y = -p.y;
  if (p.exact_y) out.exact_y = -*p.exact_y;
  return out;
}

/// Chord-tangent addition.
template <class F>
Point<F> add(const F& field, const Curve& curve, const Point<F>& p, const Point<F>& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  using T = typename F::T;
  const T a2 = field.embed(curve.a2());
  T lambda;
  if (field.eq(p.x, q.x)) {
    if (field.eq(p.y, -q.y)) return Point<F>::at_infinity();
    const T numer = field.embed(3) * p.x * p.x + field.embed(2) * a2 * p.x + field.embed(curve.a4());
    lambda = numer * field.inverse(field.embed(2) * p.y);
  } else {
    lambda = (q.y - p.y) * field.inverse(q.x - p.x);
  }
  Point<F> r;
  r.infinity = false;
  r.x = lambda * lambda - a2 - p.x - q.x;
  r.y = lambda * (p.x - r.x) - p.y;
  if constexpr (std::is_same_v<F, RationalField>) {
    r.exact_x = r.x;
    r.exact_y = r.y;
  }
  return r;
}

template <class F>
Point<F> multiply(const F& field, const Curve& curve, Point<F> p, std::uint64_t k) {
  Point<F> acc = Point<F>::at_infinity();
  while (k > 0) {
    if (k & 1U) acc = add(field, curve, acc, p);
    p = add(field, curve, p, p);
    k >>= 1U;
  }
  return acc;
}

/// The 2-torsion points, exact in every field.
template <class F>
std::vector<Point<F>> two_torsion(const F& field, const Curve& curve) {
  std::vector<Point<F>> out{Point<F>::at_infinity()};
  for (const Rational& e : curve.roots()) out.push_back(Point<F>{false, field.embed(e), field.embed(0), e, Rational(0)});
  return out;
}

/// Every Q with 2Q = P over the field. For P != O, P is halvable iff each
/// x(P) - e_i is a square; with alpha_i^2 = x(P) - e_i the candidates are
/// x = x(P) + a1 a2 + a1 a3 + a2 a3, y = +-(a1 + a2)(a1 + a3)(a2 + a3) over
/// all sign choices a_i = +-alpha_i, each kept only if it doubles to P.
template <class F>
std::vector<Point<F>> halve(const F& field, const Curve& curve, const Point<F>& p) {
  if (p.infinity) return two_torsion(field, curve);
  using T = typename F::T;
  std::array<T, 3> alpha;
  for (std::size_t i = 0; i < 3; ++i) {
    std::optional<T> root = p.exact_x ? field.sqrt_exact(*p.exact_x - curve.roots()[i])
                                      : field.sqrt(p.x - field.embed(curve.roots()[i]));
    if (!root) return {};
    alpha[i] = *root;
  }
  std::vector<Point<F>> out;
  for (int mask = 0; mask < 8; ++mask) {
    std::array<T, 3> a;
    for (std::size_t i = 0; i < 3; ++i) a[i] = (mask >> i) & 1 ? T(-alpha[i]) : alpha[i];
    const T x = p.x + a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
    const T y = (a[0] + a[1]) * (a[0] + a[2]) * (a[1] + a[2]);
    for (const T& yy : {y, T(-y)}) {
      Point<F> q{false, x, yy, std::nullopt, std::nullopt};
      if constexpr (std::is_same_v<F, RationalField>) {
        q.exact_x = x;
        q.exact_y = yy;
      }
      if (!same_point(field, add(field, curve, q, q), p)) continue;
      bool seen = false;
      for (const Point<F>& o : out) seen = seen || same_point(field, o, q);
      if (!seen) out.push_back(q);
    }
  }
  if (out.size() != 4) {
    throw ConsistencyError("halve: expected 4 halves once the square tests pass, found " + std::to_string(out.size()));
  }
  return out;
}

/// P in 2^k E(F): some half of P is 2^(k-1)-divisible (depth-first).
template <class F>
bool divisible(const F& field, const Curve& curve, const Point<F>& p, int k) {
  if (k == 0 || p.infinity) return true;
  for (const Point<F>& q : halve(field, curve, p)) {
    if (divisible(field, curve, q, k - 1)) return true;
  }
  return false;
}

struct DivisibilityVerdict {
  bool divisible = false;
  std::int64_t precision = 0;  // working precision used (0 for exact contexts)
  int retries = 0;
  // Real place only: is P on the identity component? For curves with three
  // real roots this is the component-group reading of divisibility.
  std::optional<bool> identity_component;
};

/// Runs a p-adic computation, doubling the precision while the verdict
/// leaned on fewer than kHorizonMargin digits or ran out of digits.
template <class Fn>
auto with_padic_retry(std::uint64_t p, std::int64_t precision, int& retries, std::int64_t& used, Fn&& fn) {
  for (int attempt = 0;; ++attempt) {
    PadicField field{p, precision};
    try {
      auto result = fn(field);
      if (field.min_margin >= kHorizonMargin) {
        retries = attempt;
        used = precision;
        return result;
      }
    } catch (const PrecisionExhausted&) {
      if (attempt >= kMaxPrecisionDoublings) throw;
    }
    if (attempt >= kMaxPrecisionDoublings) {
      throw PrecisionExhausted("p=" + std::to_string(p) + ": verdict still within " + std::to_string(kHorizonMargin) +
                               " digits of the horizon at precision " + std::to_string(precision));
    }
    precision *= 2;
  }
}

/// Is the point on the identity component of E(R)? With real roots
/// e_1 < e_2 < e_3 that component is x >= e_3.
inline bool on_identity_component(const Curve& curve, const RationalPoint& p) {
  if (p.infinity) return true;
  return p.x >= std::max({curve.roots()[0], curve.roots()[1], curve.roots()[2]});
}

/// P in 2^k E(Q_v), or in 2^k E(Q) when v is absent.
inline DivisibilityVerdict divisible_by_2k(const Curve& curve, const RationalPoint& p, int k,
                                           const std::optional<Place>& v,
                                           std::int64_t precision = kDefaultPrecision) {
  if (k < 1) throw InvalidInput("divisible_by_2k: k must be >= 1");
  DivisibilityVerdict out;
  if (!v) {
    out.divisible = divisible(RationalField{}, curve, p, k);
    return out;
  }
  if (v->is_real()) {
    const RealField field;
    out.divisible = divisible(field, curve, embed_point(field, p), k);
    out.identity_component = on_identity_component(curve, p);
    return out;
  }
  out.divisible = with_padic_retry(v->p(), precision, out.retries, out.precision, [&](const PadicField& field) {
    return divisible(field, curve, embed_point(field, p), k);
  });
  return out;
}

/// Halves of a rational point, described as strings, over Q or Q_v.
inline std::vector<std::string> halve_point(const Curve& curve, const RationalPoint& p, const std::optional<Place>& v,
                                            std::int64_t precision = kDefaultPrecision) {
  std::vector<std::string> out;
  if (!v) {
    for (const auto& q : halve(RationalField{}, curve, p)) out.push_back(describe(RationalField{}, q));
  } else if (v->is_real()) {
    const RealField field;
    for (const auto& q : halve(field, curve, embed_point(field, p))) out.push_back(describe(field, q));
  } else {
    int retries = 0;
    std::int64_t used = 0;
    out = with_padic_retry(v->p(), precision, retries, used, [&](const PadicField& field) {
      std::vector<std::string> d;
      for (const auto& q : halve(field, curve, embed_point(field, p))) d.push_back(describe(field, q));
      return d;
    });
  }
  return out;
}

/// Monic quadratic x^2 + b x + c.
struct Quadratic {
  Rational b;
  Rational c;

  Rational discriminant() const { return b * b - 4 * c; }
};

/// Does at least one quadratic have a root in Q_v? A monic quadratic has a
/// root iff its discriminant is a square (zero counts).
inline bool quad_local_roots(const std::vector<Quadratic>& polys, const Place& v) {
  for (const Quadratic& q : polys) {
    const Rational d = q.discriminant();
    if (d == 0 || is_nth_power(d, 2, v)) return true;
  }
  return false;
}

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

/// m P in (m n) E(Q_v), i.e. divisible_by_2k(E, mP, log2(mn), v).
inline DivisibilityVerdict propagation_check(const Curve& curve, const RationalPoint& p, std::uint64_t n,
                                             std::uint64_t m, const Place& v,
                                             std::int64_t precision = kDefaultPrecision) {
  if (!is_power_of_two(n) || !is_power_of_two(m)) throw InvalidInput("propagation_check: n and m must be powers of 2");
  const RationalPoint mp = multiply(RationalField{}, curve, p, m);
  const int k = log2_exact(m * n);
  if (k == 0) return DivisibilityVerdict{true, 0, 0, std::nullopt};
  return divisible_by_2k(curve, mp, k, v, precision);
}

/// The criterion behind propagation_check, computed along a different route:
/// m P in m n E(Q_p) iff P + T in n E(Q_p) for some T in E(Q_p)[m]. The
/// m-torsion is found by iterated halving of O.
inline bool propagation_by_translates(const Curve& curve, const RationalPoint& p, std::uint64_t n, std::uint64_t m,
                                      const Place& v, std::int64_t precision = kDefaultPrecision) {
  if (!is_power_of_two(n) || !is_power_of_two(m)) throw InvalidInput("propagation_by_translates: n and m must be powers of 2");
  const int kn = log2_exact(n);
  const int km = log2_exact(m);
  auto run = [&](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    std::vector<Point<F>> torsion{Point<F>::at_infinity()};
    for (int i = 0; i < km; ++i) {
      std::vector<Point<F>> next;
      for (const auto& t : torsion) {
        for (const auto& h : halve(field, curve, t)) {
          bool seen = false;
          for (const auto& o : next) seen = seen || same_point(field, o, h);
          if (!seen) next.push_back(h);
        }
      }
      torsion = std::move(next);
    }
    const Point<F> base = embed_point(field, p);
    for (const auto& t : torsion) {
      if (divisible(field, curve, add(field, curve, base, t), kn)) return true;
    }
    return false;
  };
  if (v.is_real()) return run(RealField{});
  int retries = 0;
  std::int64_t used = 0;
  return with_padic_retry(v.p(), precision, retries, used, run);
}

}  // namespace locglob
