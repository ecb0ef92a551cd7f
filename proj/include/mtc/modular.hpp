#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mtc/chars.hpp"

namespace mtc {

// S and T in catalogue order. S carries the 1/|G| normalization, so it is
// unitary and S(1, V) = d_V / |G|.
struct ModularData {
  std::shared_ptr<const Catalog> catalog;
  size_t n = 0;
  int64_t D = 0;             // total dimension, = |G|
  std::vector<Cyclo> S;      // row-major, canonical
  std::vector<Cyclo> T;      // twists

  const Cyclo& s(size_t u, size_t v) const { return S[u * n + v]; }
};

ModularData build_modular(const CharacterEngine& chars, unsigned threads);

struct ModularChecks {
  bool symmetric = false;
  bool unit_row = false;      // S(1, V) = d_V / D
  bool global_dimension = false;  // sum_V S(1, V)^2 = 1
  bool unitary = false;
  bool s_squared = false;     // S^2 = charge conjugation
  bool charge_identity = false;  // and that permutation is the identity
  bool st_cubed = false;      // (ST)^3 = lambda S^2
  std::optional<Cyclo> lambda;
  bool lambda_root_of_unity = false;
};

// Exact checks. (ST)^3 = lambda S^2 is tested in the equivalent form
// S T S = lambda T^-1 S T^-1, valid once S^2 = 1.
ModularChecks check_modular(const ModularData& md, const CharacterEngine& chars, unsigned threads);

// Anomaly from the Gauss sum: lambda = sum_X d_X^2 theta_X / D.
Cyclo gauss_anomaly(const Catalog& cat);

// N_{UV}^W = sum_X S_UX S_VX conj(S_WX) / S_1X. Throws NonInteger if a
// coefficient is not a non-negative integer.
FusionVector verlinde_fuse(const ModularData& md, size_t u, size_t v);

struct VerlindeReport {
  size_t pairs = 0;
  std::vector<std::pair<size_t, size_t>> mismatches;
};
// Verlinde against the character oracle on the given pairs.
VerlindeReport compare_verlinde(const ModularData& md, const CharacterEngine& chars,
                                const std::vector<std::pair<size_t, size_t>>& pairs, unsigned threads);

}  // namespace mtc
