#pragma once

#include <string>

#include "mtc/modular.hpp"

namespace mtc {

struct ManifoldDesc {
  enum class Kind { S3, S2xS1, T3, Lens, SigmaGxS1 };
  Kind kind = Kind::S3;
  int p = 1;  // Lens(p, 1)
  int g = 0;  // genus of Sigma_g

  // "s3", "s2xs1", "t3", "lens:<p>:1", "sigma:<g>xs1"
  static ManifoldDesc parse(const std::string& s);
  std::string str() const;
};

// #Hom(pi_1(M), G) / |G| by counting in the group.
Rational dw_invariant(const ManifoldDesc& m, const SL2& G);

struct DwCrosscheck {
  ManifoldDesc manifold;
  Rational counting;
  std::optional<Rational> modular;  // empty if the modular sum is not rational
  Cyclo anomaly_factor;             // multiplies the raw modular sum (lens spaces)
  bool equal = false;
};

// Counting value against the value from the unit row of S and T:
// Sigma_g x S^1 -> sum_X S_1X^(2-2g), Lens(p,1) -> conj(lambda) sum_X S_1X^2 theta_X^p.
DwCrosscheck dw_crosscheck(const ManifoldDesc& m, const ModularData& md);

}  // namespace mtc
