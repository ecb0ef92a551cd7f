#pragma once

#include <compare>
#include <string>
#include <vector>

#include "mtc/cyclo.hpp"
#include "mtc/sl2.hpp"

namespace mtc {

enum class IrrepKind { One, V, W, X, Wp, Wpp, Xp, Xpp };

// Irreducible representation of SL(2,q): 1, V, W_sigma, X_phi, W', W'', X', X''.
struct Irrep {
  IrrepKind kind = IrrepKind::One;
  int param = 0;  // sigma for W, phi for X

  std::string str() const;
  friend auto operator<=>(const Irrep&, const Irrep&) = default;
};

// Ordinary character table of SL(2,q), columns indexed by SL2::classes().
//
// The half-dimensional characters use s_pm = (1 pm g)/2 with g the quadratic
// Gauss sum of F_q, which keeps the table consistent with the restriction
// decompositions for every q (g = +sqrt(q) is not true for all q).
// On mu b_eps: W' -> s_eps, W'' -> s_{-eps}, X' -> -mu s_{-eps},
// X'' -> -mu s_eps.
class Sl2CharTable {
 public:
  explicit Sl2CharTable(const SL2& G);

  const std::vector<Irrep>& irreps() const { return irreps_; }
  size_t index(const Irrep& r) const;
  int64_t dim(size_t irrep) const { return dims_[irrep]; }
  const Cyclo& value(size_t irrep, size_t cls) const { return values_[irrep][cls]; }

  const Cyclo& gauss_sum() const { return gauss_; }
  Cyclo s_plus() const;
  Cyclo s_minus() const;

 private:
  std::vector<Irrep> irreps_;
  std::vector<int64_t> dims_;
  std::vector<std::vector<Cyclo>> values_;
  Cyclo gauss_;
};

// Quadratic Gauss sum of F_q: sum over t != 0 of eta(t) zeta_p^{tr t}.
Cyclo field_gauss_sum(const FieldParams& F);
// Exact +sqrt(q).
Cyclo sqrt_q(const FieldParams& F);

}  // namespace mtc
