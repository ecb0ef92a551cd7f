#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mtc/cyclo.hpp"

using namespace mtc;

namespace {

Cyclo z(int64_t n, int64_t k) { return Cyclo::root_of_unity(n, k); }

Cyclo random_cyclo(std::mt19937& rng, int64_t n) {
  std::uniform_int_distribution<int64_t> e(0, n - 1), c(-5, 5), d(1, 4);
  std::vector<Cyclo::Term> t;
  for (int i = 0; i < 6; ++i) t.emplace_back(e(rng), Rational(c(rng), d(rng)));
  return Cyclo::from_terms(n, t);
}

}  // namespace

TEST_CASE("roots of unity") {
  CHECK((z(4, 1) + z(4, 3)).is_zero());
  CHECK(z(6, 2) * z(6, 5) == z(6, 1));
  Cyclo r = z(5, 1) + z(5, 4);
  CHECK(r.conj() == r);
  CHECK(z(3, 1) + z(3, 2) == Cyclo(-1));
  CHECK(z(12, 3) == z(4, 1));
  CHECK((z(5, 0) + z(5, 1) + z(5, 2) + z(5, 3) + z(5, 4)).is_zero());
  CHECK(z(15, 5) * z(15, 3) == z(15, 8));
}

TEST_CASE("sum of all n-th roots vanishes") {
  for (int64_t n : {2, 6, 8, 9, 12, 30, 36, 120}) {
    Cyclo s;
    for (int64_t k = 0; k < n; ++k) s += z(n, k);
    CHECK(s.is_zero());
    // primitive roots sum to mu(n); check against n with small mu
  }
  // Ramanujan: sum of primitive 12th roots = mu(12) = 0, of 30th = mu(30) = -1
  Cyclo s12, s30;
  for (int64_t k : {1, 5, 7, 11}) s12 += z(12, k);
  for (int64_t k = 1; k < 30; ++k)
    if (std::gcd(k, int64_t{30}) == 1) s30 += z(30, k);
  CHECK(s12.is_zero());
  CHECK(s30 == Cyclo(-1));
}

TEST_CASE("canonical form matches numerics and is idempotent") {
  std::mt19937 rng(11);
  for (int64_t n : {120, 2184, 45, 8}) {
    for (int i = 0; i < 30; ++i) {
      Cyclo a = random_cyclo(rng, n);
      Cyclo c = a.canonical();
      CHECK(std::abs(a.to_complex() - c.to_complex()) < 1e-9);
      CHECK(c.canonical().terms() == c.terms());
      for (const auto& t : c.terms()) CHECK(CycloBasis::get(n).is_basis_exponent(t.first));
      CHECK((a + (-a)).is_zero());
    }
  }
}

TEST_CASE("real combinations canonicalize to rational symmetric coefficients") {
  std::mt19937 rng(5);
  Cyclo a = random_cyclo(rng, 60);
  Cyclo r = a + a.conj();
  Cyclo c = r.canonical();
  CHECK(c == c.conj());
  CHECK(std::abs(r.to_complex().imag()) < 1e-9);
}

TEST_CASE("gauss sums and square roots") {
  Cyclo g5 = gauss_sum(5);
  CHECK(g5 == z(5, 1) - z(5, 2) - z(5, 3) + z(5, 4));
  CHECK(g5 * g5 == Cyclo(5));
  CHECK(g5.to_complex().real() > 0);
  CHECK(sqrt_prime_power(3, 2) == Cyclo(3));
  for (auto [p, n] : std::vector<std::pair<int, int>>{{5, 1}, {13, 1}, {17, 1}, {5, 3}, {3, 4}, {5, 2}}) {
    Cyclo s = sqrt_prime_power(p, n);
    int64_t q = 1;
    for (int i = 0; i < n; ++i) q *= p;
    CHECK(s * s == Cyclo(q));
    CHECK(s.to_complex().real() > 0);
  }
}

TEST_CASE("integer extraction") {
  CHECK((z(7, 0) * Rational(3)).as_integer() == 3);
  CHECK_THROWS_AS(z(4, 1).as_integer(), NonInteger);
  CHECK_THROWS_AS(Cyclo(Rational(1, 2)).as_integer(), NonInteger);
  CHECK((z(3, 1) + z(3, 2)).as_integer() == -1);
}

TEST_CASE("dense accumulator agrees with sparse arithmetic") {
  std::mt19937 rng(3);
  const int64_t n = 120;
  DenseCyclo acc(n, 144 * 7);
  Cyclo ref;
  for (int i = 0; i < 20; ++i) {
    Cyclo a = random_cyclo(rng, n), b = random_cyclo(rng, 24);
    acc.add_product_conj(a, b, Rational(1, 7));
    ref += a * b.conj() * Rational(1, 7);
  }
  CHECK(acc.to_cyclo() == ref);
  DenseCyclo one(12, 1);
  one.add(z(12, 4));
  one.add(z(12, 8));
  CHECK(one.as_rational() == Rational(-1));
  DenseCyclo coarse(12, 1);
  CHECK_THROWS(coarse.add(Cyclo(Rational(1, 2))));
}
