#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mtc/chars.hpp"

namespace mtc {

class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data of one tensor factor with non-central support.
struct FactorData {
  Family family = Family::A;
  int k = 0;       // k for A, l for C
  int mu = 1;      // B only
  int eps = 1;     // B only
  int u = 0;       // u for A, w for C
  int nu = 1;      // B only
  FieldElement v;  // B only
  FieldElement t;  // trace a + a^{-1}
  int parity = 1;
};

struct BlockContext {
  FactorData x[2];
  int nu = 1;  // + iff the parities agree
  bool has_b() const { return x[0].family == Family::B || x[1].family == Family::B; }
};

// 4 + t t1 t2 - t^2 - t1^2 - t2^2; zero iff a = a1^{+-1} a2^{+-1}.
FieldElement delta_invariant(const FieldParams& F, FieldElement t, FieldElement t1, FieldElement t2);

// All (y1, y2) in SL(2,q)^2 with traces t1, t2 and y1 y2 = a(a), a != +-1,
// in the parametrization by the off-diagonal pair (y, z) with yz = Delta.
std::vector<std::pair<GroupElement, GroupElement>> solve_pairs_diagonal(const SL2& G, FieldElement t1,
                                                                        FieldElement t2, FieldElement a);
// All (y1, y2) with traces t1, t2 and y1 y2 = mu b(b), b != 0, parametrized by
// (x, y) with x (t2 - x) = (t2 - mu t1) y / b + 1.
std::vector<std::pair<GroupElement, GroupElement>> solve_pairs_unipotent(const SL2& G, FieldElement t1,
                                                                         FieldElement t2, int mu,
                                                                         FieldElement b);

// 2x2 matrix over F_{q^2}.
struct ExtMatrix {
  ExtFieldElement a, b, c, d;
};
// k u k^{-1} lies in SL(2,q) iff d = conj(a) and c = -e conj(b).
bool real_form_filter(const FieldParams& F, const ExtMatrix& u);
// k u k^{-1} computed directly.
ExtMatrix conj_by_k(const FieldParams& F, const ExtMatrix& u);

class FusionRules {
 public:
  explicit FusionRules(std::shared_ptr<const CharacterEngine> engine, bool oracle_fallback = true);

  const Catalog& catalog() const { return engine_->catalog(); }
  const CharacterEngine& engine() const { return *engine_; }

  // True when both factors have non-central support (closed forms apply).
  bool closed_form(size_t s1, size_t s2) const;
  BlockContext context(size_t s1, size_t s2) const;

  FusionVector fuse(size_t s1, size_t s2) const;
  FusionVector fuse_block(size_t s1, size_t s2, size_t cls) const;

  // Index sets of the block analysis.
  std::vector<int> set_G(int nu) const;
  std::vector<int> set_I(int nu) const;
  std::vector<int> set_H(const BlockContext& c, int k) const;
  std::vector<int> set_Hprime(const BlockContext& c, int mu, int eps) const;
  std::vector<int> set_K(const BlockContext& c, int l) const;

  struct Mismatch {
    size_t s1, s2, cls;
    FusionVector closed, oracle;
  };
  struct Report {
    size_t pairs = 0;
    size_t delegated = 0;
    std::vector<Mismatch> mismatches;
  };
  Report compare(const std::vector<std::pair<size_t, size_t>>& pairs, unsigned threads) const;

 private:
  FactorData factor(size_t s) const;
  FusionVector split_block(const BlockContext& c, int k) const;
  FusionVector unipotent_block(const BlockContext& c, int mu, int eps) const;
  FusionVector nonsplit_block(const BlockContext& c, int l) const;
  FusionVector central_block(const BlockContext& c, int mu) const;

  std::shared_ptr<const CharacterEngine> engine_;
  bool oracle_fallback_;
};

// Worker count from MTC_THREADS (default: hardware concurrency, at least 1).
unsigned default_threads();

}  // namespace mtc
