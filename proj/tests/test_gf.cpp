#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "mtc/gf.hpp"

using namespace mtc;

namespace {

// Multiplicative order by repeated multiplication.
template <class F, class E>
int64_t naive_order(const F& field, E x) {
  E cur = x;
  int64_t k = 1;
  while (cur != field.one()) {
    cur = field.mul(cur, x);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("make_field validates q") {
  CHECK_THROWS_AS(make_field(7), DomainError);
  CHECK_THROWS_AS(make_field(3), DomainError);
  CHECK_THROWS_AS(make_field(1), DomainError);
  CHECK_THROWS_AS(make_field(15), DomainError);
  CHECK_THROWS_AS(make_field(8), DomainError);
  CHECK_THROWS_AS(make_field(11), DomainError);
  CHECK_NOTHROW(make_field(9));
  CHECK_NOTHROW(make_field(25));
}

TEST_CASE("q=5 basic parameters") {
  auto F = make_field(5);
  CHECK(F->p == 5);
  CHECK(F->n == 1);
  CHECK(F->h == 1);
  CHECK(naive_order(F->base, F->e) == 4);
  CHECK(F->dlog(F->e) == 1);
  CHECK_FALSE(F->is_square(F->e));
  CHECK(F->M == Poly{1, 1, 1});
}

TEST_CASE("generator and derived elements") {
  for (int q : {5, 9, 13, 17, 25}) {
    auto F = make_field(q);
    CAPTURE(q);
    const auto& X = F->ext;
    int64_t q2 = static_cast<int64_t>(q) * q;
    CHECK(naive_order(X, F->check_gen) == q2 - 1);
    CHECK(X.pow(F->check_gen, (q2 - 1) / 2) == X.neg(X.one()));
    CHECK(naive_order(X, F->f) == q + 1);
    CHECK(naive_order(F->base, F->e) == q - 1);
    CHECK(F->norm(F->f) == F->base.one());
    CHECK(F->conj(F->e_tilde) == X.neg(F->e_tilde));
    CHECK(F->embed(F->e) == F->e_ext);
    // smallest generator: no lexicographically earlier element generates
    for (uint32_t r = 0;; ++r) {
      auto x = X.lex_element(r);
      if (x == F->check_gen) break;
      if (x.code != 0) CHECK(naive_order(X, x) < q2 - 1);
    }
    int squares = 0;
    for (uint32_t c = 1; c < static_cast<uint32_t>(q); ++c) squares += F->is_square(FieldElement{c});
    CHECK(squares == (q - 1) / 2);
  }
}

TEST_CASE("smallest irreducible moduli") {
  for (int q : {9, 25, 27 * 3}) {
    auto [p, n] = prime_power(q);
    Poly m = poly::smallest_irreducible(p, n);
    CHECK(m.size() == n + 1);
    CHECK(poly::is_irreducible(m, p));
  }
  // brute force: x^2 + a x + b irreducible over F_3 iff no root
  auto m = poly::smallest_irreducible(3, 2);
  CHECK(m == Poly{1, 0, 1});
}

TEST_CASE("field axioms on samples") {
  std::mt19937 rng(7);
  for (int q : {5, 13, 9}) {
    auto F = make_field(q);
    const auto& X = F->ext;
    std::uniform_int_distribution<uint32_t> d(0, X.size() - 1);
    for (int i = 0; i < 300; ++i) {
      ExtFieldElement a{d(rng)}, b{d(rng)}, c{d(rng)};
      CHECK(X.mul(X.mul(a, b), c) == X.mul(a, X.mul(b, c)));
      CHECK(X.mul(a, X.add(b, c)) == X.add(X.mul(a, b), X.mul(a, c)));
      CHECK(X.add(a, X.neg(a)) == X.zero());
      if (a.code != 0) CHECK(X.mul(a, X.inv(a)) == X.one());
      CHECK(F->norm(X.mul(a, b)) == F->mul(F->norm(a), F->norm(b)));
    }
  }
}

TEST_CASE("norm fibers and trace") {
  for (int q : {5, 13}) {
    auto F = make_field(q);
    std::map<uint32_t, int> fiber;
    for (uint32_t c = 1; c < F->ext.size(); ++c) fiber[F->norm(ExtFieldElement{c}).code]++;
    CHECK(fiber.size() == static_cast<size_t>(q - 1));
    for (auto [k, v] : fiber) CHECK(v == q + 1);
    CHECK(F->norm(F->ext.zero()) == F->base.zero());
    std::set<uint32_t> image;
    for (uint32_t a = 0; a < F->q; ++a) {
      image.insert(F->trace_to_prime(FieldElement{a}));
      for (uint32_t b = 0; b < F->q; ++b)
        CHECK(F->trace_to_prime(F->add(FieldElement{a}, FieldElement{b})) ==
              (F->trace_to_prime(FieldElement{a}) + F->trace_to_prime(FieldElement{b})) % F->p);
    }
    CHECK(image.size() == F->p);
  }
}

TEST_CASE("dlog and square class") {
  auto F = make_field(13);
  for (int64_t k = 0; k < 12; ++k) CHECK(F->dlog(F->e_pow(k)) == k);
  CHECK_THROWS_AS(F->dlog(F->base.zero()), DomainError);
  CHECK_THROWS_AS(F->is_square(F->base.zero()), DomainError);
  for (uint32_t c = 1; c < 13; ++c) {
    FieldElement y{c};
    bool sq = false;
    for (uint32_t z = 1; z < 13; ++z) sq |= F->mul(FieldElement{z}, FieldElement{z}) == y;
    CHECK(F->is_square(y) == sq);
  }
}

TEST_CASE("parse and format round trip") {
  auto F = make_field(25);
  for (uint32_t c = 0; c < 25; ++c) {
    FieldElement x{c};
    CHECK(F->base.parse(F->base.format(x)) == x);
  }
  CHECK(F->base.format(F->base.parse("1+2t")) == "1+2t");
  CHECK_THROWS_AS(F->base.parse("7"), DomainError);
  CHECK_THROWS_AS(F->base.parse("t^2"), DomainError);
  CHECK_THROWS_AS(F->base.parse("1+"), DomainError);
  CHECK_THROWS_AS(F->base.parse(""), DomainError);
}
