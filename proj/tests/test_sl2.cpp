#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "mtc/sl2.hpp"

using namespace mtc;

namespace {

// 2x2 matrices over F_{q^2} for checks that leave SL(2,q).
struct M2 {
  ExtFieldElement a, b, c, d;
};

M2 mul(const FiniteField<ExtFieldElement>& X, const M2& x, const M2& y) {
  return {X.add(X.mul(x.a, y.a), X.mul(x.b, y.c)), X.add(X.mul(x.a, y.b), X.mul(x.b, y.d)),
          X.add(X.mul(x.c, y.a), X.mul(x.d, y.c)), X.add(X.mul(x.c, y.b), X.mul(x.d, y.d))};
}

}  // namespace

TEST_CASE("group basics at q=5") {
  SL2 G(make_field(5));
  CHECK(G.order() == 120);
  CHECK(G.classes().size() == 9);
  auto x = G.b(G.field().from_int(3));
  CHECK(G.inv(x) == G.b(G.field().from_int(-3)));
  CHECK(G.conj_by(x, G.identity()) == G.identity());
  auto cl = G.class_of(G.a(G.field().e));
  CHECK(cl.label == ClassLabel::split(1));
  CHECK(cl.witness == G.identity());
  CHECK(G.class_of(G.j()).label == ClassLabel::split(1));
}

TEST_CASE("c is the conjugate of a(f) by k") {
  for (int q : {5, 9, 13}) {
    SL2 G(make_field(q));
    const auto& F = G.field();
    const auto& X = F.ext;
    auto one = X.one();
    auto et = F.e_tilde;
    M2 k{one, X.neg(X.inv(et)), et, one};
    auto detk = X.sub(X.mul(k.a, k.d), X.mul(k.b, k.c));
    auto di = X.inv(detk);
    M2 kinv{X.mul(k.d, di), X.neg(X.mul(k.b, di)), X.neg(X.mul(k.c, di)), X.mul(k.a, di)};
    M2 af{F.f, X.zero(), X.zero(), X.inv(F.f)};
    M2 r = mul(X, mul(X, k, af), kinv);
    auto c = G.c();
    CHECK(r.a == F.embed(c.a));
    CHECK(r.b == F.embed(c.b));
    CHECK(r.c == F.embed(c.c));
    CHECK(r.d == F.embed(c.d));
    // order of c is q+1
    auto p = G.identity();
    int ord = 0;
    do {
      p = G.mul(p, c);
      ++ord;
    } while (p != G.identity());
    CHECK(ord == q + 1);
  }
}

TEST_CASE("classification, witnesses and class sizes by enumeration") {
  for (int q : {5, 9}) {
    SL2 G(make_field(q));
    const auto& T = G.tables();
    CHECK(T.elements.size() == G.order());
    std::map<ClassLabel, uint64_t> sizes;
    for (size_t i = 0; i < T.elements.size(); ++i) {
      const auto& g = T.elements[i];
      const auto& lab = G.classes()[T.class_idx[i]];
      sizes[lab]++;
      CHECK(G.conj_by(T.witness[i], G.rep(lab)) == g);
      CHECK(G.det(T.witness[i]) == G.field().base.one());
      CHECK(T.class_idx[G.index_of(G.inv(g))] == T.class_idx[i]);
    }
    uint64_t total = 0;
    for (const auto& lab : G.classes()) {
      CHECK(sizes[lab] == G.class_size(lab));
      total += G.class_size(lab);
      CHECK(G.class_of(G.rep(lab)).label == lab);
      auto cen = G.centralizer_elements(lab);
      CHECK(cen.size() * G.class_size(lab) == G.order());
      CHECK(cen.size() == G.centralizer(lab).order);
      for (const auto& z : cen) CHECK(G.mul(z, G.rep(lab)) == G.mul(G.rep(lab), z));
      for (const auto& z : G.centralizer(lab).generators)
        CHECK(G.mul(z, G.rep(lab)) == G.mul(G.rep(lab), z));
    }
    CHECK(total == G.order());
    CHECK(sizes.size() == G.classes().size());
  }
}

TEST_CASE("unipotent square-class criterion") {
  SL2 G(make_field(13));
  const auto& F = G.field();
  for (uint32_t x = 1; x < 13; ++x) {
    FieldElement y{x};
    int eps = F.is_square(y) ? 1 : -1;
    CHECK(G.class_of(G.b(y)).label == ClassLabel::unipotent(1, eps));
    CHECK(G.class_of(G.neg(G.b(y))).label == ClassLabel::unipotent(-1, eps));
  }
}

TEST_CASE("class_of is conjugation invariant on samples at q=13") {
  SL2 G(make_field(13));
  const auto& T = G.tables();
  std::mt19937 rng(17);
  std::uniform_int_distribution<size_t> pick(0, T.elements.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    auto g = T.elements[pick(rng)], x = T.elements[pick(rng)];
    auto cx = G.class_of(x);
    auto cy = G.class_of(G.conj_by(g, x));
    CHECK(cx.label == cy.label);
    CHECK(G.conj_by(cx.witness, G.rep(cx.label)) == x);
  }
  CHECK(G.classes().size() == static_cast<size_t>(2 + 5 + 4 + 6));
}

TEST_CASE("element text format") {
  SL2 G(make_field(25));
  auto c = G.c();
  CHECK(G.parse(G.format(c)) == c);
  CHECK_THROWS_AS(G.parse("[[1,1],[1,1]]"), DomainError);
  CHECK_THROWS_AS(G.parse("[[1,0],[0]]"), DomainError);
}
