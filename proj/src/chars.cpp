#include "mtc/chars.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtc {

CommutingPairIndex::CommutingPairIndex(const SL2& G) : G_(G) {
  const auto& T = G.tables();
  const auto& classes = G.classes();
  cen_.resize(classes.size());
  offset_.push_back(0);
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& cl = classes[ci];
    uint32_t x = G.index_of(G.rep(cl));
    if (cl.kind == ClassKind::Central) {
      for (size_t cj = 0; cj < classes.size(); ++cj)
        orbits_.push_back({x, G.index_of(G.rep(classes[cj])), ci, G.class_size(classes[cj])});
    } else {
      for (const auto& z : G.centralizer_elements(cl)) cen_[ci].push_back(G.index_of(z));
      std::sort(cen_[ci].begin(), cen_[ci].end());
      for (uint32_t hz : cen_[ci]) orbits_.push_back({x, hz, ci, G.class_size(cl)});
    }
    offset_.push_back(orbits_.size());
  }
  (void)T;
}

size_t CommutingPairIndex::orbit_of(uint32_t x, uint32_t h) const {
  const auto& T = G_.tables();
  size_t ci = T.class_idx[x];
  if (G_.classes()[ci].kind == ClassKind::Central) return offset_[ci] + T.class_idx[h];
  const GroupElement& w = T.witness[x];
  GroupElement hp = G_.mul(G_.mul(G_.inv(w), T.elements[h]), w);
  uint32_t hi = G_.index_of(hp);
  const auto& cen = cen_[ci];
  auto it = std::lower_bound(cen.begin(), cen.end(), hi);
  if (it == cen.end() || *it != hi) throw std::logic_error("pair does not commute");
  return offset_[ci] + static_cast<size_t>(it - cen.begin());
}

std::vector<uint32_t> CommutingPairIndex::centralizer_of(uint32_t g) const {
  const auto& T = G_.tables();
  size_t ci = T.class_idx[g];
  std::vector<uint32_t> out;
  if (G_.classes()[ci].kind == ClassKind::Central) {
    out.resize(T.elements.size());
    for (uint32_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }
  const GroupElement& w = T.witness[g];
  GroupElement wi = G_.inv(w);
  out.reserve(cen_[ci].size());
  for (uint32_t z : cen_[ci]) out.push_back(G_.index_of(G_.mul(G_.mul(w, T.elements[z]), wi)));
  return out;
}

uint64_t CommutingPairIndex::total_pairs() const {
  uint64_t n = 0;
  for (const auto& o : orbits_) n += o.size;
  return n;
}

CharacterEngine::CharacterEngine(std::shared_ptr<const Catalog> cat)
    : cat_(std::move(cat)), pairs_(cat_->group()) {
  const auto& T = group().tables();
  values_.resize(cat_->size());
  for (size_t s = 0; s < cat_->size(); ++s) {
    size_t ci = cat_->simples()[s].support_idx;
    for (size_t o = pairs_.block_begin(ci); o < pairs_.block_end(ci); ++o)
      values_[s].push_back(cat_->rho(s, T.elements[pairs_.orbits()[o].h]));
  }
}

Cyclo CharacterEngine::value_at(size_t simple, uint32_t x, uint32_t h) const {
  size_t ci = cat_->simples()[simple].support_idx;
  if (group().tables().class_idx[x] != ci) return Cyclo();
  return values_[simple][pairs_.orbit_of(x, h) - pairs_.block_begin(ci)];
}

Cyclo CharacterEngine::chi(size_t simple, const GroupElement& x, const GroupElement& h) const {
  const auto& G = group();
  if (G.mul(x, h) != G.mul(h, x)) return Cyclo();
  return value_at(simple, G.index_of(x), G.index_of(h));
}

CharacterEngine::OrbitFunction CharacterEngine::character(size_t simple) const {
  OrbitFunction f(pairs_.orbits().size());
  size_t ci = cat_->simples()[simple].support_idx;
  for (size_t o = pairs_.block_begin(ci); o < pairs_.block_end(ci); ++o)
    f[o] = values_[simple][o - pairs_.block_begin(ci)];
  return f;
}

Cyclo CharacterEngine::inner(const OrbitFunction& f1, const OrbitFunction& f2) const {
  const int64_t order = static_cast<int64_t>(group().order());
  DenseCyclo acc(cat_->conductor(), 16 * order);
  const auto& orbits = pairs_.orbits();
  for (size_t o = 0; o < orbits.size(); ++o)
    acc.add_product_conj(f1[o], f2[o], Rational(static_cast<int64_t>(orbits[o].size), order));
  return acc.to_cyclo();
}

Cyclo CharacterEngine::inner(size_t s1, size_t s2) const { return inner(character(s1), character(s2)); }

Cyclo CharacterEngine::tensor_at(size_t s1, size_t s2, const PairOrbit& o) const {
  const auto& G = group();
  const auto& T = G.tables();
  const size_t c1 = cat_->simples()[s1].support_idx, c2 = cat_->simples()[s2].support_idx;
  const GroupElement& x = T.elements[o.x];
  const int64_t L = cat_->conductor();
  std::vector<Cyclo::Term> terms;
  auto visit = [&](uint32_t x1) {
    if (T.class_idx[x1] != c1) return;
    uint32_t x2 = G.index_of(G.mul(G.inv(T.elements[x1]), x));
    if (T.class_idx[x2] != c2) return;
    Cyclo v = (value_at(s1, x1, o.h) * value_at(s2, x2, o.h)).lift(L);
    terms.insert(terms.end(), v.terms().begin(), v.terms().end());
  };
  if (G.classes()[T.class_idx[o.h]].kind == ClassKind::Central) {
    for (uint32_t x1 : T.members[c1]) visit(x1);
  } else {
    for (uint32_t x1 : pairs_.centralizer_of(o.h)) visit(x1);
  }
  return Cyclo::from_terms(L, std::move(terms));
}

CharacterEngine::OrbitFunction CharacterEngine::tensor_char(size_t s1, size_t s2) const {
  const auto& orbits = pairs_.orbits();
  OrbitFunction f(orbits.size());
  for (size_t o = 0; o < orbits.size(); ++o) f[o] = tensor_at(s1, s2, orbits[o]);
  return f;
}

FusionVector CharacterEngine::oracle_fuse_block(size_t s1, size_t s2, size_t cls) const {
  const auto& orbits = pairs_.orbits();
  const size_t b = pairs_.block_begin(cls), e = pairs_.block_end(cls);
  std::vector<Cyclo> t;
  bool nonzero = false;
  for (size_t o = b; o < e; ++o) {
    t.push_back(tensor_at(s1, s2, orbits[o]));
    nonzero |= !t.back().terms().empty();
  }
  FusionVector out;
  if (!nonzero) return out;
  const int64_t order = static_cast<int64_t>(group().order());
  DenseCyclo acc(cat_->conductor(), 16 * order);
  for (size_t w : cat_->by_support(cls)) {
    acc.clear();
    for (size_t o = b; o < e; ++o)
      acc.add_product_conj(t[o - b], values_[w][o - b], Rational(static_cast<int64_t>(orbits[o].size), order));
    auto r = acc.as_rational();
    if (!r || !r->is_integer())
      throw NonInteger("oracle multiplicity is not an integer: " + acc.to_cyclo().str());
    if (r->num() < 0) throw std::logic_error("negative oracle multiplicity");
    if (r->num() != 0) out[w] = r->num();
  }
  return out;
}

FusionVector CharacterEngine::oracle_fuse(size_t s1, size_t s2) const {
  FusionVector out;
  for (size_t ci = 0; ci < group().classes().size(); ++ci)
    for (auto [w, m] : oracle_fuse_block(s1, s2, ci)) out[w] = m;
  return out;
}

CharacterEngine::OrbitFunction CharacterEngine::dual_character(size_t simple) const {
  const auto& G = group();
  const auto& T = G.tables();
  const auto& orbits = pairs_.orbits();
  OrbitFunction f(orbits.size());
  for (size_t o = 0; o < orbits.size(); ++o) {
    uint32_t xi = G.index_of(G.inv(T.elements[orbits[o].x]));
    uint32_t hi = G.index_of(G.inv(T.elements[orbits[o].h]));
    f[o] = value_at(simple, xi, hi);
  }
  return f;
}

size_t CharacterEngine::dual(size_t simple) const {
  OrbitFunction f = dual_character(simple);
  for (size_t ci = 0; ci < group().classes().size(); ++ci)
    for (size_t w : cat_->by_support(ci)) {
      bool same = true;
      for (size_t o = pairs_.block_begin(ci); o < pairs_.block_end(ci) && same; ++o)
        same = f[o] == values_[w][o - pairs_.block_begin(ci)];
      if (same) {
        bool rest_zero = true;
        for (size_t o = 0; o < f.size() && rest_zero; ++o)
          if (o < pairs_.block_begin(ci) || o >= pairs_.block_end(ci)) rest_zero = f[o].is_zero();
        if (rest_zero) return w;
      }
    }
  throw std::logic_error("dual character matches no simple object");
}

}  // namespace mtc
