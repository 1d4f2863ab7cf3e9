#pragma once

// Exact integer and rational helpers shared by every module: modular
// arithmetic on 64-bit words, arbitrary-precision rationals, primality,
// factorization and exact integer roots.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace locglob {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal cross-check disagrees with the main computation.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace num {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
inline std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

/// Inverse of a modulo m; a must be a unit.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t s = 0, t = 0;
  if (xgcd(mod(a, m), m, s, t) != 1) throw InvalidInput("inverse_mod: not a unit");
  return mod(s, m);
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<bool> sieve(bound + 1, true);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of a positive 64-bit integer.
inline std::map<std::uint64_t, int> factor(std::uint64_t n) {
  std::map<std::uint64_t, int> out;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  detail::factor_into(n, out);
  return out;
}

/// Prime factors of a nonzero big integer. Only the part left after trial
/// division must fit in 64 bits.
inline std::vector<std::uint64_t> prime_divisors(BigInt n) {
  if (n == 0) throw InvalidInput("prime_divisors: zero");
  if (n < 0) n = -n;
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < 100000 && BigInt(p) * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) {
    if (n > std::numeric_limits<std::uint64_t>::max()) {
      throw InvalidInput("prime_divisors: cofactor exceeds 64 bits");
    }
    for (const auto& [p, e] : factor(static_cast<std::uint64_t>(n))) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline BigInt pow(BigInt base, std::uint64_t exp) {
  BigInt result = 1;
  while (exp > 0) {
    if (exp & 1U) result *= base;
    base *= base;
    exp >>= 1U;
  }
  return result;
}

inline Rational pow(const Rational& base, std::int64_t exp) {
  if (exp < 0) {
    if (base == 0) throw InvalidInput("pow: zero to a negative power");
    return Rational(1) / pow(base, -exp);
  }
  const BigInt n = pow(BigInt(boost::multiprecision::numerator(base)), static_cast<std::uint64_t>(exp));
  const BigInt d = pow(BigInt(boost::multiprecision::denominator(base)), static_cast<std::uint64_t>(exp));
  return Rational(n, d);
}

/// Powers of p dividing a nonzero integer; strips them from n.
inline std::int64_t strip_valuation(BigInt& n, std::uint64_t p) {
  std::int64_t v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::int64_t valuation(BigInt n, std::uint64_t p) {
  if (n == 0) throw InvalidInput("valuation of zero");
  return strip_valuation(n, p);
}

inline std::int64_t valuation(const Rational& r, std::uint64_t p) {
  return valuation(BigInt(boost::multiprecision::numerator(r)), p) -
         valuation(BigInt(boost::multiprecision::denominator(r)), p);
}

/// Floor of the k-th root of a nonnegative integer.
inline BigInt iroot(const BigInt& n, std::uint64_t k) {
  if (n < 0) throw InvalidInput("iroot: negative radicand");
  if (n < 2 || k == 1) return n;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << (static_cast<unsigned>(boost::multiprecision::msb(n) / k) + 1);
  while (lo < hi) {
    const BigInt mid = (lo + hi + 1) / 2;
    if (pow(mid, k) <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

/// Exact k-th root of a rational, if one exists in Q.
inline std::optional<Rational> exact_root(const Rational& a, std::uint64_t k) {
  if (k == 0) throw InvalidInput("exact_root: k = 0");
  BigInt n = boost::multiprecision::numerator(a);
  const BigInt d = boost::multiprecision::denominator(a);
  const bool negative = n < 0;
  if (negative && k % 2 == 0) return std::nullopt;
  if (negative) n = -n;
  const BigInt rn = iroot(n, k);
  const BigInt rd = iroot(d, k);
  if (pow(rn, k) != n || pow(rd, k) != d) return std::nullopt;
  return Rational(negative ? BigInt(-rn) : rn, rd);
}

/// Parses "a", "-a" or "a/b" with decimal integers.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw InvalidInput("empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw InvalidInput("malformed integer");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw InvalidInput("malformed integer: " + std::string(s));
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

inline std::string to_string(const Rational& r) {
  const BigInt d = boost::multiprecision::denominator(r);
  std::string out = BigInt(boost::multiprecision::numerator(r)).str();
  if (d != 1) out += "/" + d.str();
  return out;
}

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre(const BigInt& a, std::uint64_t p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  const std::uint64_t x = powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
  return x == 1 ? 1 : -1;
}

inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& m) {
  return BigInt(boost::multiprecision::powm(base, exp, m));
}

inline BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw InvalidInput("inverse_mod: not a unit");
  return mod(old_s, m);
}

}  // namespace num
}  // namespace locglob
