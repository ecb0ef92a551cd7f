#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtc/catalog.hpp"

using namespace mtc;

namespace {

std::shared_ptr<Catalog> build(int q) {
  return std::make_shared<Catalog>(std::make_shared<SL2>(make_field(q)));
}

// Multiplicative order of a root of unity given as a Cyclo.
int64_t root_order(const Cyclo& z, int64_t bound) {
  Cyclo p = z;
  for (int64_t k = 1; k <= bound; ++k) {
    if (p == Cyclo(1)) return k;
    p = p * z;
  }
  return -1;
}

}  // namespace

TEST_CASE("catalogue size and dimension sum") {
  for (int q : {5, 9, 13}) {
    auto cat = build(q);
    int64_t h = (q - 1) / 4;
    CAPTURE(q);
    CHECK(static_cast<int64_t>(cat->size()) == 2 * (q + 4) + (2 * h - 1) * (q - 1) + 8 * q + 2 * h * (q + 1));
    int64_t sum = 0;
    for (const auto& s : cat->simples()) sum += s.qdim * s.qdim;
    int64_t order = static_cast<int64_t>(q) * (static_cast<int64_t>(q) * q - 1);
    CHECK(sum == order * order);
  }
  CHECK(build(5)->size() == 74);
  CHECK(build(13)->size() == 282);
}

TEST_CASE("catalogue size equals the number of commuting-pair orbits at q=5") {
  // Burnside: #orbits of commuting pairs = #commuting triples / |G|.
  auto cat = build(5);
  const auto& G = cat->group();
  const auto& T = G.tables();
  uint64_t pairs = 0, triples = 0;
  for (const auto& x : T.elements)
    for (const auto& y : T.elements) {
      if (G.mul(x, y) != G.mul(y, x)) continue;
      ++pairs;
      for (const auto& z : T.elements) triples += G.mul(x, z) == G.mul(z, x) && G.mul(y, z) == G.mul(z, y);
    }
  CHECK(triples % G.order() == 0);
  CHECK(triples / G.order() == cat->size());
  // pairs / |G| counts conjugacy classes instead
  CHECK(pairs / G.order() == G.classes().size());
}

TEST_CASE("table data at q=5") {
  auto cat = build(5);
  const auto& a = cat->data(SimpleLabel::split(1, 2));
  CHECK(a.twist == Cyclo(-1));
  CHECK(a.qdim == 30);
  CHECK(a.parity == 1);
  const auto& one = cat->data(SimpleLabel::central(1, {IrrepKind::One, 0}));
  CHECK(one.parity == 1);
  CHECK(one.twist == Cyclo(1));
  CHECK(cat->unit() == cat->index(SimpleLabel::central(1, {IrrepKind::One, 0})));
}

TEST_CASE("twists, parities and dimensions by family") {
  for (int q : {5, 13}) {
    auto cat = build(q);
    const auto& F = cat->field();
    for (const auto& s : cat->simples()) {
      const auto& l = s.label;
      CHECK(s.qdim == s.rho_dim * static_cast<int64_t>(cat->group().class_size(s.support)));
      switch (l.family) {
        case Family::A:
          CHECK(s.twist == Cyclo::root_of_unity(q - 1, static_cast<int64_t>(l.k) * l.u));
          CHECK(s.parity == (l.u % 2 == 0 ? 1 : -1));
          CHECK((q - 1) % root_order(s.twist, q - 1) == 0);
          CHECK(s.qdim == q * (q + 1));
          break;
        case Family::C:
          CHECK(s.twist == Cyclo::root_of_unity(q + 1, static_cast<int64_t>(l.k) * l.u));
          CHECK(s.parity == (l.u % 2 == 0 ? 1 : -1));
          CHECK((q + 1) % root_order(s.twist, q + 1) == 0);
          CHECK(s.qdim == q * (q - 1));
          break;
        case Family::B: {
          Cyclo z = Cyclo::root_of_unity(F.p, F.trace_to_prime(F.mul(F.e_pow(l.eps > 0 ? 0 : 1), l.v)));
          CHECK(s.twist == (l.mu < 0 && l.nu < 0 ? -z : z));
          CHECK(s.parity == l.nu);
          CHECK((2 * F.p) % root_order(s.twist, 2 * F.p) == 0);
          CHECK(s.qdim == (q * q - 1) / 2);
          break;
        }
        case Family::E:
          CHECK((s.twist == Cyclo(1) || s.twist == Cyclo(-1)));
          CHECK(s.twist == (l.mu > 0 ? Cyclo(1) : Cyclo(s.parity)));
          break;
      }
    }
  }
}

TEST_CASE("label grammar round trip") {
  auto cat = build(25);
  for (const auto& s : cat->simples()) CHECK(cat->parse(cat->format(s.label)) == s.label);
  CHECK(cat->format(cat->parse("B:-:+:-:1+2t")) == "B:-:+:-:1+2t");
  CHECK(cat->format(cat->parse("E:+:W''")) == "E:+:W''");
  for (const char* bad : {"A:0:1", "A:1:25", "C:13:1", "E:+:W12", "E:*:V", "B:+:+:+:t^2", "Q:1:1", "A:1", ""})
    CHECK_THROWS_AS(cat->parse(bad), DomainError);
}
