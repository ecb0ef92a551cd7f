#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mtc/chars.hpp"

using namespace mtc;

namespace {

struct Ctx {
  std::shared_ptr<Catalog> cat;
  std::shared_ptr<CharacterEngine> eng;
};

Ctx build(int q) {
  auto cat = std::make_shared<Catalog>(std::make_shared<SL2>(make_field(q)));
  return {cat, std::make_shared<CharacterEngine>(cat)};
}

const Sl2CharTable& tab(const Ctx& c) { return c.cat->table(); }

// SL(2,q) character value at an arbitrary element.
Cyclo chi_at(const Ctx& c, size_t irrep, const GroupElement& g) {
  const auto& G = c.cat->group();
  return tab(c).value(irrep, G.class_index(G.class_of(g).label));
}

// Restriction multiplicities expected from the decomposition tables.
int64_t expect_a(const Irrep& r, int64_t u, int64_t q) {
  const int64_t n = q - 1, h = (q - 1) / 4;
  u = mod_floor(u, n);
  bool even = u % 2 == 0;
  switch (r.kind) {
    case IrrepKind::One: return u == 0;
    case IrrepKind::V: return u == 0 ? 3 : (even ? 2 : 0);
    case IrrepKind::W:
      return (u == mod_floor(r.param, n)) + (u == mod_floor(-r.param, n)) + 2 * ((u - r.param) % 2 == 0);
    case IrrepKind::X: return 2 * ((u - r.param) % 2 == 0);
    case IrrepKind::Wp:
    case IrrepKind::Wpp: return (u == 2 * h) + even;
    case IrrepKind::Xp:
    case IrrepKind::Xpp: return !even;
  }
  return -1;
}

int64_t expect_b(const Irrep& r, const FieldParams& F, FieldElement v) {
  bool zero = v.code == 0;
  switch (r.kind) {
    case IrrepKind::One: return zero;
    case IrrepKind::V: return 1;
    case IrrepKind::W: return zero ? 2 : 1;
    case IrrepKind::X: return zero ? 0 : 1;
    case IrrepKind::Wp: return zero || F.is_square(v);
    case IrrepKind::Wpp: return zero || !F.is_square(v);
    case IrrepKind::Xp: return !zero && F.is_square(v);
    case IrrepKind::Xpp: return !zero && !F.is_square(v);
  }
  return -1;
}

int64_t expect_c(const Irrep& r, int64_t w, int64_t q) {
  const int64_t n = q + 1, h = (q - 1) / 4;
  w = mod_floor(w, n);
  bool even = w % 2 == 0;
  switch (r.kind) {
    case IrrepKind::One: return w == 0;
    case IrrepKind::V: return w == 0 ? 1 : (even ? 2 : 0);
    case IrrepKind::W: return 2 * ((w - r.param) % 2 == 0);
    case IrrepKind::X: {
      bool pm = w == mod_floor(r.param, n) || w == mod_floor(-r.param, n);
      return pm ? 1 : 2 * ((w - r.param) % 2 == 0);
    }
    case IrrepKind::Wp:
    case IrrepKind::Wpp: return even;
    case IrrepKind::Xp:
    case IrrepKind::Xpp: return !even && w != 2 * h + 1;
  }
  return -1;
}

}  // namespace

TEST_CASE("SL(2,q) character table orthogonality and degrees") {
  for (int q : {5, 9, 13, 25}) {
    auto c = build(q);
    const auto& G = c.cat->group();
    const auto& t = tab(c);
    const auto& cls = G.classes();
    const int64_t order = static_cast<int64_t>(G.order());
    CAPTURE(q);
    int64_t dsum = 0;
    for (size_t i = 0; i < t.irreps().size(); ++i) {
      dsum += t.dim(i) * t.dim(i);
      for (size_t j = 0; j < t.irreps().size(); ++j) {
        Cyclo s;
        for (size_t k = 0; k < cls.size(); ++k)
          s += t.value(i, k) * t.value(j, k).conj() * Rational(static_cast<int64_t>(G.class_size(cls[k])), order);
        CHECK(s == Cyclo(i == j ? 1 : 0));
      }
    }
    CHECK(dsum == order);
    for (size_t k = 0; k < cls.size(); ++k)
      for (size_t l = 0; l < cls.size(); ++l) {
        Cyclo s;
        for (size_t i = 0; i < t.irreps().size(); ++i) s += t.value(i, k) * t.value(i, l).conj();
        int64_t expect = k == l ? order / static_cast<int64_t>(G.class_size(cls[k])) : 0;
        CHECK(s == Cyclo(expect));
      }
    const int64_t h = (q - 1) / 4;
    CHECK(t.dim(t.index({IrrepKind::V, 0})) == q);
    CHECK(t.dim(t.index({IrrepKind::W, 1})) == q + 1);
    CHECK(t.dim(t.index({IrrepKind::X, 1})) == q - 1);
    CHECK(t.dim(t.index({IrrepKind::Wp, 0})) == 2 * h + 1);
    CHECK(t.dim(t.index({IrrepKind::Xpp, 0})) == 2 * h);
  }
}

TEST_CASE("restriction decompositions") {
  for (int q : {5, 13}) {
    auto c = build(q);
    const auto& G = c.cat->group();
    const auto& F = G.field();
    const auto& t = tab(c);
    for (size_t i = 0; i < t.irreps().size(); ++i) {
      const Irrep& r = t.irreps()[i];
      CAPTURE(r.str());
      std::vector<Cyclo> va, vb, vc;
      for (int64_t j = 0; j < q - 1; ++j) va.push_back(chi_at(c, i, G.a(F.e_pow(j))));
      for (uint32_t y = 0; y < F.q; ++y) vb.push_back(chi_at(c, i, G.b(FieldElement{y})));
      for (int64_t j = 0; j <= q; ++j) vc.push_back(chi_at(c, i, G.pow(G.c(), j)));
      for (int64_t u = 0; u < q - 1; ++u) {
        Cyclo m;
        for (int64_t j = 0; j < q - 1; ++j) m += va[j] * Cyclo::root_of_unity(q - 1, -j * u);
        CHECK((m * Rational(1, q - 1)).as_integer() == expect_a(r, u, q));
      }
      for (uint32_t v = 0; v < F.q; ++v) {
        Cyclo m;
        for (uint32_t y = 0; y < F.q; ++y)
          m += vb[y] * Cyclo::root_of_unity(F.p, -static_cast<int64_t>(
                                                     F.trace_to_prime(F.mul(FieldElement{v}, FieldElement{y}))));
        CHECK((m * Rational(1, q)).as_integer() == expect_b(r, F, FieldElement{v}));
      }
      for (int64_t w = 0; w <= q; ++w) {
        Cyclo m;
        for (int64_t j = 0; j <= q; ++j) m += vc[j] * Cyclo::root_of_unity(q + 1, -j * w);
        CHECK((m * Rational(1, q + 1)).as_integer() == expect_c(r, w, q));
      }
    }
  }
}

TEST_CASE("commuting pair index") {
  auto c = build(5);
  const auto& G = c.cat->group();
  const auto& T = G.tables();
  uint64_t brute = 0;
  for (const auto& x : T.elements)
    for (const auto& y : T.elements) brute += G.mul(x, y) == G.mul(y, x);
  CHECK(c.eng->pairs().total_pairs() == brute);
  CommutingPairIndex again(G);
  CHECK(again.orbits().size() == c.eng->pairs().orbits().size());
  for (size_t i = 0; i < again.orbits().size(); ++i) {
    CHECK(again.orbits()[i].x == c.eng->pairs().orbits()[i].x);
    CHECK(again.orbits()[i].h == c.eng->pairs().orbits()[i].h);
  }
}

TEST_CASE("D(G) character values") {
  auto c = build(5);
  const auto& G = c.cat->group();
  const auto& F = G.field();
  size_t V = c.cat->index(SimpleLabel::central(1, {IrrepKind::V, 0}));
  CHECK(c.eng->chi(V, G.identity(), G.a(F.e)) == Cyclo(1));
  size_t a12 = c.cat->index(SimpleLabel::split(1, 2));
  auto a = G.a(F.e);
  CHECK(c.eng->chi(a12, a, a) == Cyclo::root_of_unity(4, 2));
  CHECK(c.eng->chi(a12, a, G.c()).is_zero());
  // invariance under simultaneous conjugation and dimension sums
  std::mt19937 rng(1);
  const auto& T = G.tables();
  std::uniform_int_distribution<size_t> pick(0, T.elements.size() - 1);
  for (size_t s = 0; s < c.cat->size(); ++s) {
    for (int i = 0; i < 10; ++i) {
      auto x = T.elements[pick(rng)], g = T.elements[pick(rng)];
      for (uint32_t hi : c.eng->pairs().centralizer_of(G.index_of(x))) {
        auto h = T.elements[hi];
        CHECK(c.eng->chi(s, G.conj_by(g, x), G.conj_by(g, h)) == c.eng->chi(s, x, h));
        break;
      }
    }
    Cyclo d;
    for (const auto& x : T.elements) d += c.eng->chi(s, x, G.identity());
    CHECK(d == Cyclo(c.cat->simples()[s].qdim));
  }
}

TEST_CASE("orthonormality and self-duality at q=5") {
  auto c = build(5);
  const size_t n = c.cat->size();
  std::vector<CharacterEngine::OrbitFunction> f;
  for (size_t s = 0; s < n; ++s) f.push_back(c.eng->character(s));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      if (c.cat->simples()[i].support_idx != c.cat->simples()[j].support_idx) continue;
      CHECK(c.eng->inner(f[i], f[j]) == Cyclo(i == j ? 1 : 0));
    }
    CHECK(c.eng->dual(i) == i);
  }
}

TEST_CASE("orthonormality on sampled pairs at q=13") {
  auto c = build(13);
  std::mt19937 rng(4);
  const size_t n = c.cat->size();
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  for (int i = 0; i < 200; ++i) {
    size_t a = pick(rng), b = i % 3 == 0 ? a : pick(rng);
    CHECK(c.eng->inner(a, b) == Cyclo(a == b ? 1 : 0));
  }
  for (int i = 0; i < 30; ++i) {
    size_t a = pick(rng);
    CHECK(c.eng->dual(a) == a);
  }
}

TEST_CASE("tensor characters") {
  auto c = build(5);
  const auto& G = c.cat->group();
  const auto& F = G.field();
  const auto& orbits = c.eng->pairs().orbits();
  size_t u1 = 1, u2 = 3;
  size_t s1 = c.cat->index(SimpleLabel::split(1, static_cast<int>(u1)));
  size_t s2 = c.cat->index(SimpleLabel::split(1, static_cast<int>(u2)));
  auto t = c.eng->tensor_char(s1, s2);
  size_t o = c.eng->pairs().orbit_of(G.index_of(G.identity()), G.index_of(G.a(F.e)));
  CHECK(t[o] == Cyclo::root_of_unity(4, 2) + Cyclo::root_of_unity(4, -2));
  auto unit = c.eng->tensor_char(c.cat->unit(), s1);
  auto ch = c.eng->character(s1);
  for (size_t i = 0; i < orbits.size(); ++i) CHECK(unit[i] == ch[i]);
}

TEST_CASE("oracle fusion at q=5") {
  auto c = build(5);
  auto& cat = *c.cat;
  auto lab = [&](const char* s) { return cat.index(cat.parse(s)); };
  auto aa = c.eng->oracle_fuse(lab("A:1:2"), lab("A:1:2"));
  CHECK(aa[lab("E:+:1")] == 1);
  CHECK(aa[lab("E:+:V")] == 3);
  CHECK(aa[lab("E:+:X2")] == 2);
  CHECK(aa[lab("E:+:W'")] == 1);
  CHECK(aa[lab("E:+:W''")] == 1);
  auto cc = c.eng->oracle_fuse(lab("C:1:1"), lab("C:1:1"));
  CHECK(cc[lab("A:1:2")] == 2);
  CHECK(cc[lab("A:1:4")] == 2);
  std::mt19937 rng(9);
  std::uniform_int_distribution<size_t> pick(0, cat.size() - 1);
  for (int i = 0; i < 40; ++i) {
    size_t a = pick(rng), b = pick(rng);
    auto ab = c.eng->oracle_fuse(a, b);
    CHECK(ab == c.eng->oracle_fuse(b, a));
    int64_t d = 0;
    for (auto [w, m] : ab) d += m * cat.simples()[w].qdim;
    CHECK(d == cat.simples()[a].qdim * cat.simples()[b].qdim);
    auto ua = c.eng->oracle_fuse(cat.unit(), a);
    CHECK(ua == FusionVector{{a, 1}});
  }
}
