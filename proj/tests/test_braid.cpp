#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>
#include <random>

#include "mtc/braid.hpp"

using namespace mtc;

namespace {

std::shared_ptr<BraidEngine> build(int q) {
  auto cat = std::make_shared<Catalog>(std::make_shared<SL2>(make_field(q)));
  auto fr = std::make_shared<FusionRules>(std::make_shared<CharacterEngine>(cat));
  return std::make_shared<BraidEngine>(fr);
}

std::vector<size_t> noncentral(const Catalog& cat) {
  std::vector<size_t> out;
  for (size_t i = 0; i < cat.size(); ++i)
    if (cat.simples()[i].label.family != Family::E) out.push_back(i);
  return out;
}

std::string name(const Catalog& cat, size_t s) { return cat.format(cat.simples()[s].label); }

// Every piece scalar with the balancing eigenvalue, multiplicities as fused.
bool pair_ok(const BraidEngine& B, size_t s1, size_t s2) {
  bool ok = true;
  for (const auto& r : B.pair_report(s1, s2)) {
    if (r.grading_ok && r.balanced && r.multiplicities_match) continue;
    const auto& cat = B.catalog();
    std::cout << name(cat, s1) << " x " << name(cat, s2) << " @ " << cat.group().classes()[r.cls].str() << " grading "
              << r.grading_ok << " balanced " << r.balanced << " mult " << r.multiplicities_match << "\n";
    ok = false;
  }
  return ok;
}

}  // namespace

TEST_CASE("explicit modules reproduce the catalogue characters at q=5") {
  auto B = build(5);
  const auto& cat = B->catalog();
  const auto& G = cat.group();
  const auto& T = G.tables();
  const auto& chars = B->fusion().engine();
  for (size_t s : noncentral(cat)) {
    auto m = B->module(s);
    CHECK(m->dim() == G.class_size(cat.simples()[s].support));
    for (size_t i = 0; i < m->dim(); ++i) {
      uint32_t x = m->degree(i);
      for (uint32_t h = 0; h < T.elements.size(); ++h) {
        if (G.mul(T.elements[x], T.elements[h]) != G.mul(T.elements[h], T.elements[x])) continue;
        CHECK(m->trace_on_line(x, h) == chars.chi(s, T.elements[x], T.elements[h]));
      }
    }
  }
}

TEST_CASE("-e acts on every line by the parity") {
  auto B = build(9);
  const auto& cat = B->catalog();
  const auto& G = cat.group();
  uint32_t me = G.index_of(G.scalar(-1));
  for (size_t s : noncentral(cat)) {
    auto m = B->module(s);
    int64_t want = cat.simples()[s].parity > 0 ? 0 : cat.conductor() / 2;
    for (size_t i = 0; i < m->dim(); ++i) {
      auto im = m->act(me, i);
      CHECK(im.line == i);
      CHECK(mod_floor(im.exp, cat.conductor()) == want);
    }
  }
}

TEST_CASE("A(1,1) at q=5: 30 lines, a acts on its own line by zeta_4") {
  auto B = build(5);
  const auto& cat = B->catalog();
  const auto& G = cat.group();
  auto m = B->module(cat.index(cat.parse("A:1:1")));
  CHECK(m->dim() == 30);
  uint32_t a = G.index_of(G.a(cat.field().e_pow(1)));
  int32_t line = m->line_of(a);
  REQUIRE(line >= 0);
  auto im = m->act(a, static_cast<size_t>(line));
  CHECK(im.line == static_cast<uint32_t>(line));
  CHECK(Cyclo::root_of_unity(cat.conductor(), im.exp) == Cyclo::root_of_unity(4, 1));
}

TEST_CASE("braiding commutes with the generators") {
  auto B = build(5);
  const auto& cat = B->catalog();
  auto nc = noncentral(cat);
  for (size_t i = 0; i < nc.size(); i += 7)
    for (size_t j = 0; j < nc.size(); j += 11) CHECK(B->naturality(nc[i], nc[j]));
  auto B13 = build(13);
  auto nc13 = noncentral(B13->catalog());
  CHECK(B13->naturality(nc13[0], nc13[nc13.size() / 2]));
  CHECK(B13->naturality(nc13.back(), nc13.back()));
}

TEST_CASE("balancing on every non-central pair at q=5") {
  auto B = build(5);
  auto nc = noncentral(B->catalog());
  REQUIRE(nc.size() == 56);  // 74 simples, 18 over the centre
  size_t bad = 0;
  for (size_t s1 : nc)
    for (size_t s2 : nc) bad += !pair_ok(*B, s1, s2);
  CHECK(bad == 0);
}

TEST_CASE("balancing on sampled pairs at q=13") {
  auto B = build(13);
  auto nc = noncentral(B->catalog());
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<size_t> pick(0, nc.size() - 1);
  size_t bad = 0;
  for (int n = 0; n < 40; ++n) bad += !pair_ok(*B, nc[pick(rng)], nc[pick(rng)]);
  CHECK(bad == 0);
}

TEST_CASE("double braiding on the unit line of X (x) X is theta_X^-2") {
  auto B = build(5);
  const auto& cat = B->catalog();
  size_t seen = 0;
  for (size_t s : noncentral(cat)) {
    Cyclo want = cat.simples()[s].twist.conj() * cat.simples()[s].twist.conj();
    for (const auto& r : B->pair_report(s, s))
      for (const auto& p : r.pieces)
        if (p.simple == cat.unit()) {
          ++seen;
          CHECK(p.multiplicity == 1);
          CHECK(p.double_braid == want);
        }
  }
  CHECK(seen > 0);
}

TEST_CASE("single-braiding traces agree with the block formulas") {
  for (int q : {5, 9}) {
    auto B = build(q);
    const auto& cat = B->catalog();
    size_t compared = 0;
    for (size_t s : noncentral(cat))
      for (const auto& r : B->pair_report(s, s)) {
        REQUIRE(r.trace_match.has_value());
        if (!*r.trace_match) std::cout << "q=" << q << " " << name(cat, s) << " @ " << cat.group().classes()[r.cls].str() << "\n";
        CHECK(*r.trace_match);
        CHECK(r.block_trace.has_value());
        ++compared;
      }
    CHECK(compared > 0);
  }
}

TEST_CASE("A(1,2) (x) A(1,2) at q=5 over [a^1]") {
  auto B = build(5);
  const auto& cat = B->catalog();
  size_t x = cat.index(cat.parse("A:1:2"));
  size_t cls = cat.group().class_index(ClassLabel::split(1));
  auto r = B->block_report(x, x, cls);
  REQUIRE(r.block_trace.has_value());
  REQUIRE(r.predicted_block.has_value());
  CHECK(*r.block_trace == *r.predicted_block);
  CHECK(r.balanced);
}

TEST_CASE("C(1,1) (x) C(1,1) at q=5 over +e: eigenvalues theta_W / theta_C^2") {
  auto B = build(5);
  const auto& cat = B->catalog();
  size_t x = cat.index(cat.parse("C:1:1"));
  auto r = B->block_report(x, x, cat.group().class_index(ClassLabel::central(1)));
  Cyclo t2 = cat.simples()[x].twist.conj() * cat.simples()[x].twist.conj();
  REQUIRE(!r.pieces.empty());
  for (const auto& p : r.pieces) {
    CHECK(p.scalar);
    CHECK(p.double_braid == cat.simples()[p.simple].twist * t2);
  }
}

TEST_CASE("absent blocks are reported as such") {
  auto B = build(5);
  const auto& cat = B->catalog();
  size_t x = cat.index(cat.parse("A:1:2"));
  size_t n = 0;
  for (size_t c = 0; c < cat.group().classes().size(); ++c) {
    try {
      B->block_report(x, x, c);
    } catch (const BlockAbsent&) {
      ++n;
    }
  }
  CHECK(n + B->pair_report(x, x).size() == cat.group().classes().size());
}
