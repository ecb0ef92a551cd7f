#pragma once

#include <map>
#include <memory>
#include <vector>

#include "mtc/catalog.hpp"

namespace mtc {

// Orbit of a commuting pair (x, h) under simultaneous conjugation.
struct PairOrbit {
  uint32_t x;      // element index of the class representative
  uint32_t h;      // element index
  size_t x_class;
  uint64_t size;
};

// Orbit representatives of commuting pairs, grouped by the class of x.
// Non-central x: (rep, h) for h in Cen(rep), orbit size |class|.
// Central x: (mu e, rep(C)) for each class C, orbit size |C|.
class CommutingPairIndex {
 public:
  explicit CommutingPairIndex(const SL2& G);

  const std::vector<PairOrbit>& orbits() const { return orbits_; }
  size_t block_begin(size_t cls) const { return offset_[cls]; }
  size_t block_end(size_t cls) const { return offset_[cls + 1]; }
  // Orbit position of the commuting pair (x, h), given as element indices.
  size_t orbit_of(uint32_t x, uint32_t h) const;
  // Element indices of Cen(g) for any g.
  std::vector<uint32_t> centralizer_of(uint32_t g) const;
  uint64_t total_pairs() const;

 private:
  const SL2& G_;
  std::vector<PairOrbit> orbits_;
  std::vector<size_t> offset_;
  std::vector<std::vector<uint32_t>> cen_;  // per class: Cen(rep) sorted indices
};

using FusionVector = std::map<size_t, int64_t>;  // simple index -> multiplicity

// D(Gamma)-characters on orbit representatives and the brute-force oracle.
class CharacterEngine {
 public:
  explicit CharacterEngine(std::shared_ptr<const Catalog> cat);

  const Catalog& catalog() const { return *cat_; }
  std::shared_ptr<const Catalog> catalog_ptr() const { return cat_; }
  const SL2& group() const { return cat_->group(); }
  const CommutingPairIndex& pairs() const { return pairs_; }

  // chi_U on the orbits of its support block (position relative to the block).
  const std::vector<Cyclo>& block_values(size_t simple) const { return values_[simple]; }
  // chi_U(x, h) for arbitrary elements; zero unless x, h commute and x in supp.
  Cyclo chi(size_t simple, const GroupElement& x, const GroupElement& h) const;

  // Function on all orbits.
  using OrbitFunction = std::vector<Cyclo>;
  OrbitFunction character(size_t simple) const;
  // (1/|G|) sum over commuting pairs of f1 * conj(f2).
  Cyclo inner(const OrbitFunction& f1, const OrbitFunction& f2) const;
  Cyclo inner(size_t s1, size_t s2) const;

  // Tensor-product character on all orbits.
  OrbitFunction tensor_char(size_t s1, size_t s2) const;
  // Multiplicities of every simple in s1 (x) s2 by character projection.
  FusionVector oracle_fuse(size_t s1, size_t s2) const;
  // Same, restricted to simples supported on one class.
  FusionVector oracle_fuse_block(size_t s1, size_t s2, size_t cls) const;

  // Character of the dual, chi(x^{-1}, h^{-1}), on all orbits.
  OrbitFunction dual_character(size_t simple) const;
  size_t dual(size_t simple) const;

 private:
  Cyclo value_at(size_t simple, uint32_t x, uint32_t h) const;
  Cyclo tensor_at(size_t s1, size_t s2, const PairOrbit& o) const;

  std::shared_ptr<const Catalog> cat_;
  CommutingPairIndex pairs_;
  std::vector<std::vector<Cyclo>> values_;
};

}  // namespace mtc
