#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mtc/fusion.hpp"

namespace mtc {

class BlockAbsent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponent r with rho(h) = zeta_L^r, L the catalogue conductor. Only for
// simples with non-central support (one-dimensional rho).
int64_t rho_exponent(const Catalog& cat, size_t simple, const GroupElement& h);

// Induced module of a simple with non-central support. Line i is the graded
// component at the class member x_i = w_i . rep; g maps line i to the line of
// g x_i g^{-1} with phase rho(w_j^{-1} g w_i).
class ExplicitModule {
 public:
  ExplicitModule(std::shared_ptr<const Catalog> cat, size_t simple);

  size_t simple() const { return simple_; }
  const SimpleLabel& label() const { return cat_->simples()[simple_].label; }
  size_t dim() const { return basis_.size(); }
  int64_t conductor() const { return L_; }
  // Element index of the degree of line i.
  uint32_t degree(size_t i) const { return basis_[i]; }
  // Line with the given degree, -1 if off the support.
  int32_t line_of(uint32_t elem) const { return line_of_[elem]; }

  struct Image {
    uint32_t line;
    int32_t exp;  // phase zeta_L^exp
  };
  Image act(uint32_t g, size_t i) const { return table_[static_cast<size_t>(g) * basis_.size() + i]; }

  // Trace of h on the line of x (zero unless h fixes it).
  Cyclo trace_on_line(uint32_t x, uint32_t h) const;

 private:
  std::shared_ptr<const Catalog> cat_;
  size_t simple_;
  int64_t L_;
  std::vector<uint32_t> basis_;
  std::vector<int32_t> line_of_;
  std::vector<Image> table_;
};

struct IsotypicPiece {
  size_t simple = 0;
  int64_t multiplicity = 0;
  Cyclo double_braid;     // eigenvalue of R_{X2,X1} R_{X1,X2} on the component
  Cyclo expected_double;  // theta_W / (theta_1 theta_2)
  bool scalar = false;    // |eigenvalue average| = 1, so the operator is scalar there
  // Present for X1 = X2: trace of R on the multiplicity space of W.
  std::optional<Cyclo> single_trace;
  std::optional<Cyclo> predicted_trace;
  // Eigenvalues of R on the multiplicity space: root s with counts of +s, -s.
  std::optional<Cyclo> single_root;
  int64_t plus = 0, minus = 0;
};

struct BraidBlockReport {
  size_t s1 = 0, s2 = 0, cls = 0;
  size_t fiber_dim = 0;
  std::vector<IsotypicPiece> pieces;
  bool multiplicities_match = false;  // against the fusion rules
  bool balanced = false;              // every piece scalar and equal to the expected value
  bool grading_ok = false;
  std::optional<Cyclo> block_trace;      // fiber trace of R when X1 = X2
  std::optional<Cyclo> predicted_block;  // same from the block formulas, if given
  std::optional<bool> trace_match;       // per-piece traces all agree with the formulas
};

class BraidEngine {
 public:
  explicit BraidEngine(std::shared_ptr<const FusionRules> fusion);

  const Catalog& catalog() const { return fusion_->catalog(); }
  const FusionRules& fusion() const { return *fusion_; }

  // Throws std::invalid_argument for central supports.
  std::shared_ptr<const ExplicitModule> module(size_t simple) const;

  BraidBlockReport block_report(size_t s1, size_t s2, size_t cls) const;
  // Reports for every support block present in X1 (x) X2.
  std::vector<BraidBlockReport> pair_report(size_t s1, size_t s2) const;

  // R(L_g (x) L_g) = (L_g (x) L_g) R on all lines, for the group generators.
  bool naturality(size_t s1, size_t s2) const;

  // Multiplicity-space trace of R on the W component of X (x) X as given by
  // the block braiding formulas; empty when no formula applies.
  std::optional<Cyclo> predicted_trace(size_t x, size_t cls, size_t w) const;

 private:
  std::shared_ptr<const FusionRules> fusion_;
  mutable std::mutex mu_;
  mutable std::map<size_t, std::shared_ptr<const ExplicitModule>> modules_;
};

}  // namespace mtc
