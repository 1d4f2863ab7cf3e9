#pragma once

// Places of Q, p-adic numbers at finite precision, and n-th power tests.
//
// Rationals are held exactly; truncation to p^N happens only when a value is
// embedded into Q_p. A p-adic number is p^v * u + O(p^(v + N)) with u a unit
// known modulo p^N.

#include "locglob/number.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace locglob {

using Real = boost::multiprecision::cpp_bin_float_100;

/// Not enough p-adic digits to decide; callers retry at higher precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultPrecision = 64;

/// A place of Q: a prime p or the real place.
class Place {
 public:
  static Place real() { return Place(0); }

  static Place prime(std::uint64_t p) {
    if (!num::is_prime(p)) throw InvalidInput("place: " + std::to_string(p) + " is not prime");
    return Place(p);
  }

  /// "inf" or a decimal prime.
  static Place parse(std::string_view text) {
    if (text == "inf") return real();
    if (text.empty() || text.size() > 19) throw InvalidInput("place: expected \"inf\" or a prime");
    std::uint64_t p = 0;
    for (char c : text) {
      if (c < '0' || c > '9') throw InvalidInput("place: expected \"inf\" or a prime, got \"" + std::string(text) + "\"");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return prime(p);
  }

  bool is_real() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }

  std::uint64_t p() const {
    if (is_real()) throw InvalidInput("place: the real place has no prime");
    return p_;
  }

  std::string str() const { return is_real() ? "inf" : std::to_string(p_); }

  /// Finite places by prime, the real place last.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    const std::uint64_t ka = a.is_real() ? UINT64_MAX : a.p_;
    const std::uint64_t kb = b.is_real() ? UINT64_MAX : b.p_;
    return ka <=> kb;
  }
  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }

 private:
  explicit Place(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

namespace padic {

inline BigInt ppow(std::uint64_t p, std::int64_t k) {
  if (k < 0) throw InvalidInput("negative p-adic exponent");
  return num::pow(BigInt(p), static_cast<std::uint64_t>(k));
}

/// a = p^v * (n / d) with n, d prime to p.
struct Split {
  std::int64_t valuation = 0;
  BigInt numerator;
  BigInt denominator;
};

inline Split split(const Rational& a, std::uint64_t p) {
  if (a == 0) throw InvalidInput("split: zero has no valuation");
  Split s;
  s.numerator = boost::multiprecision::numerator(a);
  s.denominator = boost::multiprecision::denominator(a);
  s.valuation = num::strip_valuation(s.numerator, p) - num::strip_valuation(s.denominator, p);
  return s;
}

/// Unit part of a nonzero rational modulo p^k.
inline BigInt unit_residue(const Rational& a, std::uint64_t p, std::int64_t k) {
  const Split s = split(a, p);
  const BigInt m = ppow(p, k);
  return num::mod(s.numerator * num::inverse_mod(s.denominator, m), m);
}

namespace detail {

inline std::uint64_t find_generator(std::uint64_t p, const std::map<std::uint64_t, int>& factors) {
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& [q, e] : factors) {
      if (num::powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

/// Discrete log of h to base g in a subgroup of prime order q (baby-step giant-step).
inline std::uint64_t bsgs(std::uint64_t g, std::uint64_t h, std::uint64_t q, std::uint64_t p) {
  std::uint64_t m = 1;
  while (m * m < q) ++m;
  std::unordered_map<std::uint64_t, std::uint64_t> table;
  std::uint64_t cur = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    table.emplace(cur, j);
    cur = num::mulmod(cur, g, p);
  }
  const std::uint64_t step = num::powmod(num::powmod(g, m, p), p - 2, p);
  cur = h;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = table.find(cur);
    if (it != table.end()) return (i * m + it->second) % q;
    cur = num::mulmod(cur, step, p);
  }
  throw ConsistencyError("bsgs: logarithm not found");
}

/// Discrete log of h to the generator g modulo p (Pohlig-Hellman).
inline std::uint64_t discrete_log(std::uint64_t g, std::uint64_t h, std::uint64_t p,
                                  const std::map<std::uint64_t, int>& factors) {
  const std::uint64_t order = p - 1;
  BigInt x = 0, modulus = 1;
  for (const auto& [q, e] : factors) {
    std::uint64_t qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    const std::uint64_t gq = num::powmod(g, order / qe, p);
    const std::uint64_t hq = num::powmod(h, order / qe, p);
    const std::uint64_t gamma = num::powmod(gq, qe / q, p);  // order q
    std::uint64_t xk = 0, qk = 1;
    for (int k = 0; k < e; ++k) {
      const std::uint64_t inv = num::powmod(num::powmod(gq, xk, p), p - 2, p);
      const std::uint64_t hk = num::powmod(num::mulmod(inv, hq, p), qe / qk / q, p);
      xk += bsgs(gamma, hk, q, p) * qk;
      qk *= q;
    }
    // CRT: x = xk mod qe.
    x += modulus * num::mod((BigInt(xk) - x) * num::inverse_mod(num::mod(modulus, BigInt(qe)), BigInt(qe)), BigInt(qe));
    modulus *= qe;
  }
  return static_cast<std::uint64_t>(x);
}

}  // namespace detail

/// Smallest-found x with x^n = u mod p for a unit u, if any.
inline std::optional<std::uint64_t> root_mod_p(std::uint64_t u, std::uint64_t n, std::uint64_t p) {
  u %= p;
  if (u == 0) throw InvalidInput("root_mod_p: not a unit");
  if (p == 2) return 1;
  const std::uint64_t g = std::gcd(n, p - 1);
  if (num::powmod(u, (p - 1) / g, p) != 1) return std::nullopt;
  if (p < (1U << 20)) {
    for (std::uint64_t x = 1; x < p; ++x) {
      if (num::powmod(x, n, p) == u) return x;
    }
    throw ConsistencyError("root_mod_p: Euler criterion and search disagree");
  }
  const auto factors = num::factor(p - 1);
  const std::uint64_t gen = detail::find_generator(p, factors);
  const std::uint64_t l = detail::discrete_log(gen, u, p, factors);
  const std::uint64_t m = (p - 1) / g;
  const std::uint64_t k = static_cast<std::uint64_t>(
      num::mulmod(l / g, static_cast<std::uint64_t>(num::inverse_mod(static_cast<std::int64_t>((n / g) % m), static_cast<std::int64_t>(m))), m));
  const std::uint64_t x = num::powmod(gen, k, p);
  if (num::powmod(x, n, p) != u) throw ConsistencyError("root_mod_p: discrete-log root does not verify");
  return x;
}

/// Digits needed to decide whether a unit is an n-th power: 2 v_p(n) + 1.
inline std::int64_t decision_digits(std::uint64_t n, std::uint64_t p) {
  std::uint64_t m = n;
  std::int64_t s = 0;
  while (m % p == 0) {
    m /= p;
    ++s;
  }
  return 2 * s + 1;
}

inline std::int64_t vp(std::uint64_t n, std::uint64_t p) { return (decision_digits(n, p) - 1) / 2; }

/// A root of x^n = u modulo p^(2s+1), s = v_p(n), by digit-wise search.
inline std::optional<BigInt> seed_root(const BigInt& u, std::uint64_t n, std::uint64_t p) {
  const std::int64_t depth = decision_digits(n, p);
  if (depth == 1) {
    const auto r = root_mod_p(static_cast<std::uint64_t>(num::mod(u, BigInt(p))), n, p);
    if (!r) return std::nullopt;
    return BigInt(*r);
  }
  // p divides n, so p <= n and each digit has few choices.
  const BigInt top = ppow(p, depth);
  const BigInt target = num::mod(u, top);
  std::optional<BigInt> found;
  auto dfs = [&](auto&& self, const BigInt& y, std::int64_t k, const BigInt& pk) -> void {
    if (found) return;
    if (k == depth) {
      found = y;
      return;
    }
    const BigInt next = pk * p;
    for (std::uint64_t t = 0; t < p && !found; ++t) {
      const BigInt z = y + pk * t;
      if (num::powm(z, BigInt(n), next) == num::mod(target, next)) self(self, z, k + 1, next);
    }
  };
  for (std::uint64_t t = 1; t < p && !found; ++t) {
    if (num::powmod(t, n, p) == static_cast<std::uint64_t>(num::mod(target, BigInt(p)))) dfs(dfs, BigInt(t), 1, BigInt(p));
  }
  return found;
}

/// Given a unit u known modulo p^known, decides whether it is an n-th power
/// and if so returns y with y^n = u mod p^(known) and y accurate to
/// min(target, known - s) digits. Throws PrecisionExhausted if known < 2s+1.
struct UnitRoot {
  BigInt root;
  std::int64_t precision = 0;
};

inline std::optional<UnitRoot> unit_root(const BigInt& u, std::uint64_t n, std::uint64_t p, std::int64_t known,
                                         std::int64_t target) {
  const std::int64_t s = vp(n, p);
  if (known < 2 * s + 1) {
    throw PrecisionExhausted("unit_root: " + std::to_string(known) + " digits cannot decide an n-th power at p=" +
                             std::to_string(p));
  }
  const auto seed = seed_root(u, n, p);
  if (!seed) return std::nullopt;
  const std::int64_t precision = std::min(target, known - s);
  // Newton: f(y) = 0 mod p^k with k >= 2s+1 gives f(y') = 0 mod p^(2k-2s).
  const BigInt work = ppow(p, known);
  const BigInt ps = ppow(p, s);
  const BigInt un = num::mod(u, work);
  BigInt y = *seed;
  std::int64_t k = 2 * s + 1;
  while (k < known) {
    const BigInt fy = num::mod(num::powm(y, BigInt(n), work) - un, work);
    if (fy == 0) break;
    const BigInt deriv_unit = num::mod(BigInt(n / static_cast<std::uint64_t>(ps)) *
                                           num::powm(y, BigInt(n - 1), work),
                                       work);
    const BigInt step = num::mod((fy / ps) * num::inverse_mod(deriv_unit, work), work);
    y = num::mod(y - step, work);
    k = 2 * k - 2 * s;
  }
  if (num::powm(y, BigInt(n), work) != un) throw ConsistencyError("unit_root: Newton lift failed");
  return UnitRoot{num::mod(y, ppow(p, precision)), precision};
}

}  // namespace padic

/// p^v * u + O(p^(v + N)); a zero value carries only its absolute precision.
class PadicNumber {
 public:
  PadicNumber(std::uint64_t p, std::int64_t valuation, BigInt unit, std::int64_t precision)
      : p_(p), valuation_(valuation), precision_(precision) {
    if (precision_ < 1) throw InvalidInput("PadicNumber: precision must be positive");
    unit_ = num::mod(unit, padic::ppow(p_, precision_));
    if (unit_ % p_ == 0) throw InvalidInput("PadicNumber: unit part divisible by p");
  }

  PadicNumber() = default;

  static PadicNumber zero(std::uint64_t p, std::int64_t absolute_precision) {
    PadicNumber z;
    z.p_ = p;
    z.valuation_ = absolute_precision;
    z.precision_ = 0;
    z.unit_ = 0;
    return z;
  }

  /// Embedding of a rational with N digits of relative precision.
  static PadicNumber from_rational(const Rational& a, std::uint64_t p, std::int64_t precision) {
    if (a == 0) throw InvalidInput("PadicNumber::from_rational: use zero() for 0");
    const padic::Split s = padic::split(a, p);
    return PadicNumber(p, s.valuation, padic::unit_residue(a, p, precision), precision);
  }

  std::uint64_t prime() const { return p_; }
  bool is_zero() const { return precision_ == 0; }
  std::int64_t valuation() const { return valuation_; }
  const BigInt& unit() const { return unit_; }
  std::int64_t precision() const { return precision_; }
  std::int64_t absolute_precision() const { return valuation_ + precision_; }

  PadicNumber operator-() const {
    if (is_zero()) return *this;
    return PadicNumber(p_, valuation_, -unit_, precision_);
  }

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    a.check_prime(b);
    const std::int64_t absolute = std::min(a.absolute_precision(), b.absolute_precision());
    if (a.is_zero() || b.is_zero()) {
      const PadicNumber& other = a.is_zero() ? b : a;
      if (other.is_zero() || other.valuation_ >= absolute) return zero(a.p_, absolute);
      return PadicNumber(a.p_, other.valuation_, other.unit_, absolute - other.valuation_);
    }
    const std::int64_t v = std::min(a.valuation_, b.valuation_);
    if (v >= absolute) return zero(a.p_, absolute);
    const BigInt m = padic::ppow(a.p_, absolute - v);
    BigInt sum = num::mod(a.unit_ * padic::ppow(a.p_, a.valuation_ - v) + b.unit_ * padic::ppow(a.p_, b.valuation_ - v), m);
    if (sum == 0) return zero(a.p_, absolute);
    const std::int64_t carry = num::strip_valuation(sum, a.p_);
    return PadicNumber(a.p_, v + carry, sum, absolute - v - carry);
  }

  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    a.check_prime(b);
    if (a.is_zero() || b.is_zero()) {
      // (O(p^k)) * (p^w u + ...) = O(p^(k + w)).
      return zero(a.p_, a.valuation_ + b.valuation_);
    }
    const std::int64_t n = std::min(a.precision_, b.precision_);
    return PadicNumber(a.p_, a.valuation_ + b.valuation_, a.unit_ * b.unit_, n);
  }

  PadicNumber inverse() const {
    if (is_zero()) throw PrecisionExhausted("PadicNumber: division by a value indistinguishable from zero");
    return PadicNumber(p_, -valuation_, num::inverse_mod(unit_, padic::ppow(p_, precision_)), precision_);
  }

  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

  PadicNumber pow(std::uint64_t e) const {
    if (e == 0) return PadicNumber(p_, 0, 1, is_zero() ? 1 : precision_);
    PadicNumber out = *this;
    for (std::uint64_t i = 1; i < e; ++i) out = out * *this;
    return out;
  }

  /// Agreement up to the smaller absolute precision.
  bool agrees_with(const PadicNumber& other) const { return (*this - other).is_zero(); }

  /// Does the exact rational lie in this ball?
  bool contains(const Rational& r) const {
    if (r == 0) return is_zero();
    return agrees_with(from_rational(r, p_, std::max<std::int64_t>(1, absolute_precision() - padic::split(r, p_).valuation + 1)));
  }

  std::string describe() const {
    if (is_zero()) return "O(" + std::to_string(p_) + "^" + std::to_string(valuation_) + ")";
    std::string out = unit_.str();
    if (valuation_ != 0) out += "*" + std::to_string(p_) + "^" + std::to_string(valuation_);
    return out + " + O(" + std::to_string(p_) + "^" + std::to_string(absolute_precision()) + ")";
  }

 private:
  void check_prime(const PadicNumber& other) const {
    if (p_ != other.p_) throw InvalidInput("PadicNumber: primes differ");
  }

  std::uint64_t p_ = 2;
  std::int64_t valuation_ = 0;
  BigInt unit_ = 0;
  std::int64_t precision_ = 0;
};

/// Square root in Q_p when the value is a square; absence otherwise.
inline std::optional<PadicNumber> sqrt(const PadicNumber& x) {
  if (x.is_zero()) throw PrecisionExhausted("sqrt: value indistinguishable from zero");
  if (x.valuation() % 2 != 0) return std::nullopt;
  const auto r = padic::unit_root(x.unit(), 2, x.prime(), x.precision(), x.precision());
  if (!r) return std::nullopt;
  return PadicNumber(x.prime(), x.valuation() / 2, r->root, r->precision);
}

struct PowerDecision {
  bool holds = false;
  std::int64_t precision = kDefaultPrecision;  // working precision finally used
  int retries = 0;
};

/// Decides a in (Q_v^x)^n. At a finite place: n | v_p(a) and the unit part
/// has an n-th root modulo p^(2 v_p(n) + 1), which Hensel-lifts. At the real
/// place: a > 0 or n odd. A working precision within 2 v_p(n) + 2 digits of
/// the decision depth is doubled until it is not.
inline PowerDecision decide_nth_power(const Rational& a, std::int64_t n, const Place& v,
                                      std::int64_t precision = kDefaultPrecision) {
  if (a == 0) throw InvalidInput("is_nth_power: a must be nonzero");
  if (n < 1) throw InvalidInput("is_nth_power: n must be >= 1");
  if (precision < 1) throw InvalidInput("is_nth_power: precision must be positive");
  PowerDecision d;
  d.precision = precision;
  if (v.is_real()) {
    d.holds = a > 0 || n % 2 == 1;
    return d;
  }
  const std::uint64_t p = v.p();
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  if (padic::split(a, p).valuation % n != 0) return d;
  const std::int64_t depth = padic::decision_digits(un, p);
  while (d.precision < depth + depth + 1) {
    d.precision *= 2;
    ++d.retries;
  }
  d.holds = padic::unit_root(padic::unit_residue(a, p, d.precision), un, p, d.precision, depth).has_value();
  return d;
}

inline bool is_nth_power(const Rational& a, std::int64_t n, const Place& v,
                         std::int64_t precision = kDefaultPrecision) {
  return decide_nth_power(a, n, v, precision).holds;
}

/// Witness for an n-th power: a p-adic root or a real approximation.
struct LocalRoot {
  Place place = Place::real();
  std::optional<PadicNumber> padic;
  Real real = 0;

  std::string describe() const {
    if (padic) return padic->describe();
    return real.str(30);
  }
};

inline Real to_real(const Rational& a) {
  return Real(BigInt(boost::multiprecision::numerator(a))) / Real(BigInt(boost::multiprecision::denominator(a)));
}

/// x with x^n = a in Q_v to the given precision, verified by re-powering.
inline std::optional<LocalRoot> nth_root(const Rational& a, std::int64_t n, const Place& v,
                                         std::int64_t precision = kDefaultPrecision) {
  const PowerDecision d = decide_nth_power(a, n, v, precision);
  if (!d.holds) return std::nullopt;
  LocalRoot out;
  out.place = v;
  if (v.is_real()) {
    const Real mag = boost::multiprecision::pow(boost::multiprecision::abs(to_real(a)), Real(1) / Real(n));
    out.real = a < 0 ? Real(-mag) : mag;
    const Real back = boost::multiprecision::pow(out.real, n);
    if (boost::multiprecision::abs(back - to_real(a)) > boost::multiprecision::abs(to_real(a)) * Real("1e-80")) {
      throw ConsistencyError("nth_root: real root does not re-power to the input");
    }
    return out;
  }
  const std::uint64_t p = v.p();
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const padic::Split s = padic::split(a, p);
  const std::int64_t extra = padic::vp(un, p);
  // Know the unit to N + s digits so the root is good to N digits.
  const std::int64_t known = std::max(d.precision, precision + extra);
  const auto r = padic::unit_root(padic::unit_residue(a, p, known), un, p, known, precision);
  if (!r) throw ConsistencyError("nth_root: decision and lift disagree");
  out.padic = PadicNumber(p, s.valuation / n, r->root, r->precision);
  const PadicNumber back = out.padic->pow(un);
  if (!back.contains(a)) throw ConsistencyError("nth_root: root does not re-power to the input");
  return out;
}

}  // namespace locglob
