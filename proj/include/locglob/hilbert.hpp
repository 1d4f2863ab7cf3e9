#pragma once

// Quadratic Hilbert symbols over Q_v, the product formula, and a
// constructive square-class approximation (weak approximation for mu_2).

#include "locglob/number.hpp"
#include "locglob/oracle.hpp"
#include "locglob/padic.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace locglob {

namespace detail {

/// Integer in the same square class as a nonzero rational.
inline BigInt square_class_integer(const Rational& a) {
  return BigInt(boost::multiprecision::numerator(a)) * BigInt(boost::multiprecision::denominator(a));
}

inline int hilbert_formula(const BigInt& a, const BigInt& b, const Place& v) {
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const std::uint64_t p = v.p();
  BigInt u = a, w = b;
  const std::int64_t alpha = num::strip_valuation(u, p);
  const std::int64_t beta = num::strip_valuation(w, p);
  if (p != 2) {
    int sign = 1;
    if ((alpha * beta) % 2 != 0 && p % 4 == 3) sign = -sign;
    if (beta % 2 != 0) sign *= num::legendre(u, p);
    if (alpha % 2 != 0) sign *= num::legendre(w, p);
    return sign;
  }
  const std::int64_t u8 = static_cast<std::int64_t>(num::mod(u, BigInt(8)));
  const std::int64_t w8 = static_cast<std::int64_t>(num::mod(w, BigInt(8)));
  auto eps = [](std::int64_t x) { return ((x - 1) / 2) % 2; };
  auto omega = [](std::int64_t x) { return ((x * x - 1) / 8) % 2; };
  const std::int64_t e = eps(u8) * eps(w8) + (alpha % 2) * omega(w8) + (beta % 2) * omega(u8);
  return e % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/// (a, b)_v = +1 iff z^2 = a x^2 + b y^2 has a nonzero solution over Q_v.
/// Residue-symbol formulas; for p <= 13 the result is cross-checked against
/// an exhaustive solvability search.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v, bool cross_check = true) {
  if (a == 0 || b == 0) throw InvalidInput("hilbert_symbol: arguments must be nonzero");
  const BigInt ai = detail::square_class_integer(a);
  const BigInt bi = detail::square_class_integer(b);
  const int symbol = detail::hilbert_formula(ai, bi, v);
  if (cross_check && v.is_finite() && v.p() <= 13) {
    const int searched = oracle::hilbert_by_search(ai, bi, v.p());
    if (searched != symbol) {
      throw ConsistencyError("hilbert_symbol: formula gives " + std::to_string(symbol) + " but search gives " +
                             std::to_string(searched) + " at p=" + v.str());
    }
  }
  return symbol;
}

struct ProductFormulaReport {
  std::vector<std::pair<Place, int>> symbols;
  int product = 1;
};

/// Hilbert symbols at every place where (a, b)_v can be -1: primes dividing
/// 2ab and the real place. Raises ConsistencyError if the product is not +1.
inline ProductFormulaReport product_formula_check(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw InvalidInput("product_formula_check: arguments must be nonzero");
  const BigInt ai = detail::square_class_integer(a);
  const BigInt bi = detail::square_class_integer(b);
  std::vector<std::uint64_t> primes = num::prime_divisors(2 * ai * bi);
  ProductFormulaReport report;
  for (std::uint64_t p : primes) report.symbols.emplace_back(Place::prime(p), 0);
  report.symbols.emplace_back(Place::real(), 0);
  for (auto& [place, symbol] : report.symbols) {
    symbol = hilbert_symbol(a, b, place);
    report.product *= symbol;
  }
  if (report.product != 1) {
    throw ConsistencyError("product formula violated for (" + num::to_string(a) + ", " + num::to_string(b) + ")");
  }
  return report;
}

/// A rational x with x * t a square in Q_v for every (v, t) in targets.
/// Sign first, then a CRT solution matching valuation parity and the unit
/// square class (mod p, or mod 8 at p = 2) at each finite place; the result
/// is verified with is_nth_power.
inline Rational square_class_approximate(const std::map<Place, Rational>& targets) {
  if (targets.empty()) throw InvalidInput("square_class_approximate: no targets");
  BigInt sign = 1;
  BigInt parity_part = 1;  // product of p with odd v_p(t)
  std::vector<std::pair<std::uint64_t, Rational>> finite;
  for (const auto& [place, t] : targets) {
    if (t == 0) throw InvalidInput("square_class_approximate: target must be nonzero");
    if (place.is_real()) {
      sign = t > 0 ? 1 : -1;
      continue;
    }
    finite.emplace_back(place.p(), t);
    if (padic::split(t, place.p()).valuation % 2 != 0) parity_part *= place.p();
  }
  // r must be a unit at every listed prime with sign * parity_part * r in the
  // class of t; modulus p (odd) or 8 (p = 2).
  BigInt r = 0, modulus = 1;
  for (const auto& [p, t] : finite) {
    const BigInt m = p == 2 ? BigInt(8) : BigInt(p);
    BigInt rest = sign * parity_part;
    num::strip_valuation(rest, p);
    const BigInt want = num::mod(padic::unit_residue(t, p, p == 2 ? 3 : 1) * num::inverse_mod(rest, m), m);
    // CRT step: r = want mod m, keeping previous congruences.
    const BigInt step = num::mod((want - r) * num::inverse_mod(num::mod(modulus, m), m), m);
    r += modulus * step;
    modulus *= m;
  }
  if (r == 0) r = modulus;
  const Rational x(sign * parity_part * r);
  for (const auto& [place, t] : targets) {
    if (!is_nth_power(x * t, 2, place)) {
      throw ConsistencyError("square_class_approximate: " + num::to_string(x) + " misses the class of " +
                             num::to_string(t) + " at " + place.str());
    }
  }
  return x;
}

}  // namespace locglob
