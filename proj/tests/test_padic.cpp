#include "locglob/hilbert.hpp"
#include "locglob/oracle.hpp"
#include "locglob/padic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace locglob;

namespace {

Rational random_rational(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> d(-bound, bound), e(1, bound);
  std::int64_t n = 0;
  while (n == 0) n = d(rng);
  return Rational(n, e(rng));
}

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> ps = num::primes_up_to(100);
  return ps;
}

}  // namespace

TEST(Place, ParseAndValidate) {
  EXPECT_TRUE(Place::parse("inf").is_real());
  EXPECT_EQ(Place::parse("7").p(), 7U);
  EXPECT_THROW(Place::parse("4"), InvalidInput);
  EXPECT_THROW(Place::parse("1"), InvalidInput);
  EXPECT_THROW(Place::parse("x"), InvalidInput);
  EXPECT_THROW(Place::parse(""), InvalidInput);
  EXPECT_LT(Place::prime(7), Place::real());
  EXPECT_LT(Place::prime(2), Place::prime(3));
}

TEST(NthPower, WangExamples) {
  EXPECT_TRUE(is_nth_power(16, 8, Place::prime(7)));
  EXPECT_FALSE(is_nth_power(16, 8, Place::prime(2)));
  EXPECT_TRUE(is_nth_power(16, 8, Place::real()));
  for (std::uint64_t p : small_primes()) EXPECT_TRUE(is_nth_power(1, 5, Place::prime(p)));
  EXPECT_THROW(is_nth_power(0, 2, Place::prime(3)), InvalidInput);
  EXPECT_THROW(is_nth_power(2, 0, Place::prime(3)), InvalidInput);
}

TEST(NthPower, RealPlaceBySign) {
  EXPECT_TRUE(is_nth_power(-8, 3, Place::real()));
  EXPECT_FALSE(is_nth_power(-4, 2, Place::real()));
  EXPECT_TRUE(is_nth_power(Rational(1, 3), 2, Place::real()));
}

TEST(NthPower, AgreesWithUnitGroupStructure) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 3000; ++trial) {
    const Rational a = random_rational(rng, 2000);
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 16)(rng);
    const std::uint64_t p = small_primes()[std::uniform_int_distribution<std::size_t>(0, 9)(rng)];
    ASSERT_EQ(is_nth_power(a, n, Place::prime(p)), oracle::nth_power_by_structure(a, n, p))
        << num::to_string(a) << " n=" << n << " p=" << p;
  }
}

TEST(NthPower, PowersArePowers) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 1500; ++trial) {
    const Rational a = random_rational(rng, 50);
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 12)(rng);
    const std::uint64_t p = small_primes()[std::uniform_int_distribution<std::size_t>(0, small_primes().size() - 1)(rng)];
    EXPECT_TRUE(is_nth_power(num::pow(a, n), n, Place::prime(p)));
  }
}

TEST(NthPower, DivisorsInheritPowers) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 1500; ++trial) {
    const Rational a = random_rational(rng, 300);
    const std::int64_t n1 = std::uniform_int_distribution<std::int64_t>(1, 6)(rng);
    const std::int64_t n2 = std::uniform_int_distribution<std::int64_t>(1, 6)(rng);
    const Place v = Place::prime(small_primes()[std::uniform_int_distribution<std::size_t>(0, 7)(rng)]);
    if (is_nth_power(a, n1 * n2, v)) EXPECT_TRUE(is_nth_power(a, n1, v));
  }
}

TEST(NthPower, LowPrecisionIsRetried) {
  const PowerDecision d = decide_nth_power(33, 8, Place::prime(2), 2);
  EXPECT_TRUE(d.holds);  // 33 = 1 mod 32
  EXPECT_GT(d.retries, 0);
  EXPECT_GE(d.precision, 15);
  EXPECT_FALSE(decide_nth_power(17, 8, Place::prime(2), 2).holds);
}

TEST(NthRoot, WangWitnessRepowers) {
  const auto r = nth_root(16, 8, Place::prime(7), 32);
  ASSERT_TRUE(r.has_value());
  ASSERT_TRUE(r->padic.has_value());
  const BigInt m = num::pow(BigInt(7), 32);
  EXPECT_EQ(r->padic->valuation(), 0);
  EXPECT_EQ(r->padic->precision(), 32);
  EXPECT_EQ(num::powm(r->padic->unit(), BigInt(8), m), BigInt(16));
  EXPECT_FALSE(nth_root(16, 8, Place::prime(2), 32).has_value());
}

TEST(NthRoot, TrivialAndReal) {
  const auto one = nth_root(1, 6, Place::prime(3), 10);
  ASSERT_TRUE(one && one->padic);
  EXPECT_EQ(one->padic->unit(), 1);
  const auto cube = nth_root(-8, 3, Place::real());
  ASSERT_TRUE(cube.has_value());
  EXPECT_LT(boost::multiprecision::abs(cube->real + 2), Real("1e-90"));
  EXPECT_FALSE(nth_root(-8, 2, Place::real()).has_value());
}

TEST(NthRoot, RandomRootsRepower) {
  std::mt19937_64 rng(34);
  int found = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const Rational a = random_rational(rng, 500);
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 9)(rng);
    const std::uint64_t p = small_primes()[std::uniform_int_distribution<std::size_t>(0, 6)(rng)];
    const std::int64_t precision = std::uniform_int_distribution<std::int64_t>(1, 40)(rng);
    const auto r = nth_root(a, n, Place::prime(p), precision);
    EXPECT_EQ(r.has_value(), is_nth_power(a, n, Place::prime(p)));
    if (!r) continue;
    ++found;
    EXPECT_TRUE(r->padic->pow(static_cast<std::uint64_t>(n)).contains(a));
    EXPECT_EQ(r->padic->precision(), precision);
  }
  EXPECT_GT(found, 100);
}

TEST(NthRoot, LargePrimeUsesDiscreteLog) {
  const std::uint64_t p = 1000003;  // p - 1 = 2 * 3 * 166667
  const auto r = nth_root(5 * 5 * 5, 3, Place::prime(p), 8);
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->padic->pow(3).contains(125));
  const auto s = padic::root_mod_p(4, 2, 2147483647);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(num::mulmod(*s, *s, 2147483647), 4U);
}

TEST(PadicNumber, ArithmeticTracksPrecision) {
  const PadicNumber a = PadicNumber::from_rational(1 + 7 * 7 * 7 * 7 * 7, 7, 10);
  const PadicNumber one = PadicNumber::from_rational(1, 7, 10);
  const PadicNumber d = a - one;
  EXPECT_EQ(d.valuation(), 5);
  EXPECT_EQ(d.precision(), 5);
  EXPECT_TRUE((one - one).is_zero());
  EXPECT_EQ((one - one).absolute_precision(), 10);
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational x = random_rational(rng, 1000), y = random_rational(rng, 1000);
    const std::uint64_t p = small_primes()[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
    const PadicNumber px = PadicNumber::from_rational(x, p, 20), py = PadicNumber::from_rational(y, p, 20);
    EXPECT_TRUE((px * py).contains(x * y));
    EXPECT_TRUE((px / py).contains(x / y));
    if (x + y != 0) EXPECT_TRUE((px + py).contains(x + y));
    EXPECT_LE((px + py).precision(), 20);
  }
}

TEST(PadicNumber, SquareRoots) {
  const auto r = sqrt(PadicNumber::from_rational(Rational(-7), 2, 30));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->precision(), 29);
  EXPECT_TRUE(r->pow(2).agrees_with(PadicNumber::from_rational(-7, 2, 30)));
  EXPECT_FALSE(sqrt(PadicNumber::from_rational(3, 2, 30)).has_value());
  EXPECT_FALSE(sqrt(PadicNumber::from_rational(2, 5, 30)).has_value());
  EXPECT_THROW(sqrt(PadicNumber::from_rational(5, 2, 2)), PrecisionExhausted);
}

TEST(Hilbert, Examples) {
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::prime(2)), -1);
  EXPECT_EQ(hilbert_symbol(3, 5, Place::prime(5)), -1);
  EXPECT_EQ(oracle::legendre_by_squares(3, 5), -1);
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::real()), -1);
  for (std::uint64_t p : small_primes()) EXPECT_EQ(hilbert_symbol(1, 7, Place::prime(p)), 1);
  EXPECT_THROW(hilbert_symbol(0, 1, Place::prime(3)), InvalidInput);
}

TEST(Hilbert, FormulaMatchesSearch) {
  for (std::uint64_t p : {2U, 3U, 5U, 7U, 11U, 13U}) {
    for (std::int64_t a = -40; a <= 40; ++a) {
      for (std::int64_t b = -40; b <= 40; ++b) {
        if (a == 0 || b == 0) continue;
        ASSERT_EQ(detail::hilbert_formula(a, b, Place::prime(p)), oracle::hilbert_by_search(a, b, p))
            << a << " " << b << " p=" << p;
      }
    }
  }
}

TEST(Hilbert, SymmetricBimultiplicativeAndNormForm) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 2000; ++trial) {
    const Rational a = random_rational(rng, 300), a2 = random_rational(rng, 300), b = random_rational(rng, 300);
    const Place v = std::uniform_int_distribution<int>(0, 9)(rng) == 0
                        ? Place::real()
                        : Place::prime(small_primes()[std::uniform_int_distribution<std::size_t>(0, 9)(rng)]);
    EXPECT_EQ(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
    EXPECT_EQ(hilbert_symbol(a * a2, b, v), hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v));
    EXPECT_EQ(hilbert_symbol(a, -a, v), 1);
  }
}

TEST(Hilbert, ProductFormula) {
  const ProductFormulaReport r = product_formula_check(3, 5);
  ASSERT_EQ(r.symbols.size(), 4U);
  EXPECT_EQ(r.symbols[0].first, Place::prime(2));
  EXPECT_EQ(r.symbols[3].first, Place::real());
  EXPECT_EQ(r.product, 1);
  // (3,5): -1 at 3 and 5, +1 at 2 and infinity.
  EXPECT_EQ(r.symbols[1].second, -1);
  EXPECT_EQ(r.symbols[2].second, -1);
  for (const auto& [v, s] : product_formula_check(1, 11).symbols) EXPECT_EQ(s, 1);
}

TEST(SquareClass, Examples) {
  EXPECT_EQ(square_class_approximate({{Place::real(), Rational(1)}}), 1);
  const Rational x = square_class_approximate({{Place::prime(3), Rational(2)}});
  EXPECT_TRUE(is_nth_power(x * 2, 2, Place::prime(3)));
  const Rational y = square_class_approximate({{Place::prime(3), 2}, {Place::prime(7), 5}, {Place::real(), 1}});
  EXPECT_TRUE(is_nth_power(y * 2, 2, Place::prime(3)));
  EXPECT_TRUE(is_nth_power(y * 5, 2, Place::prime(7)));
  EXPECT_GT(y, 0);
  EXPECT_THROW(square_class_approximate({}), InvalidInput);
}

TEST(SquareClass, RandomTargets) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    std::map<Place, Rational> targets;
    const int k = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < k; ++i) {
      const Place v = std::uniform_int_distribution<int>(0, 4)(rng) == 0
                          ? Place::real()
                          : Place::prime(small_primes()[std::uniform_int_distribution<std::size_t>(0, 12)(rng)]);
      targets[v] = random_rational(rng, 200);
    }
    const Rational x = square_class_approximate(targets);
    for (const auto& [v, t] : targets) EXPECT_TRUE(oracle::nth_power_by_structure(x * t, 2, v.is_real() ? 2 : v.p()) || v.is_real());
  }
}
