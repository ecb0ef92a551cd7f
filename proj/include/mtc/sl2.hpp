#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mtc/gf.hpp"

namespace mtc {

struct GroupElement {
  FieldElement a, b, c, d;  // [[a, b], [c, d]]
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

enum class ClassKind { Central, A, B, C };

// Canonical conjugacy-class tag. Signs are stored as +1 / -1.
//   Central(mu)    mu e
//   A(k)           a^k, k in [1, 2h-1]
//   B(mu, eps)     mu b_eps
//   C(l)           c^l, l in [1, 2h]
struct ClassLabel {
  ClassKind kind = ClassKind::Central;
  int mu = 1;
  int eps = 1;
  int k = 0;  // k for A, l for C

  static ClassLabel central(int mu) { return {ClassKind::Central, mu, 1, 0}; }
  static ClassLabel split(int k) { return {ClassKind::A, 1, 1, k}; }
  static ClassLabel unipotent(int mu, int eps) { return {ClassKind::B, mu, eps, 0}; }
  static ClassLabel nonsplit(int l) { return {ClassKind::C, 1, 1, l}; }

  std::string str() const;
  friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

enum class CentralizerKind { Full, CyclicSplit, Unipotent, CyclicNonsplit };

struct CentralizerDesc {
  CentralizerKind kind;
  uint64_t order;
  std::vector<GroupElement> generators;
};

// SL(2,q) with canonical class representatives and witness conjugators.
class SL2 {
 public:
  explicit SL2(std::shared_ptr<const FieldParams> field);

  const FieldParams& field() const { return *F_; }
  std::shared_ptr<const FieldParams> field_ptr() const { return F_; }
  uint32_t q() const { return F_->q; }
  uint32_t h() const { return F_->h; }
  uint64_t order() const;

  GroupElement identity() const;
  GroupElement scalar(int mu) const;  // mu e
  GroupElement mul(const GroupElement& x, const GroupElement& y) const;
  GroupElement inv(const GroupElement& x) const;
  GroupElement neg(const GroupElement& x) const;
  GroupElement pow(const GroupElement& x, int64_t e) const;
  // g x g^{-1}
  GroupElement conj_by(const GroupElement& g, const GroupElement& x) const;
  FieldElement trace(const GroupElement& x) const;
  FieldElement det(const GroupElement& x) const;  // 1 for group elements
  bool is_central(const GroupElement& x) const;

  GroupElement a(FieldElement x) const;  // diag(x, x^{-1})
  GroupElement b(FieldElement y) const;  // [[1, y], [0, 1]]
  GroupElement b_eps(int eps) const;     // b(e^{0 or 1})
  GroupElement c() const;
  GroupElement j() const;

  // Classes in fixed order: Central(+), Central(-), A(1..2h-1), B(+,+), B(+,-),
  // B(-,+), B(-,-), C(1..2h).
  const std::vector<ClassLabel>& classes() const { return classes_; }
  size_t class_index(const ClassLabel& l) const;
  GroupElement rep(const ClassLabel& l) const;
  uint64_t class_size(const ClassLabel& l) const;
  CentralizerDesc centralizer(const ClassLabel& l) const;
  // All elements of Cen(rep(l)), sorted by code.
  std::vector<GroupElement> centralizer_elements(const ClassLabel& l) const;
  std::vector<GroupElement> class_members(const ClassLabel& l) const;

  struct Classified {
    ClassLabel label;
    GroupElement witness;  // conj_by(witness, rep(label)) == g
  };
  // Direct computation; does not need the element tables.
  Classified class_of(const GroupElement& g) const;

  // Dense integer encoding ((a q + b) q + c) q + d.
  uint64_t code(const GroupElement& g) const;
  GroupElement decode(uint64_t code) const;

  // Lazily built element tables (all elements sorted by code, with class
  // index and witness). Memory is O(q^4); intended for q up to a few dozen.
  struct Tables {
    std::vector<GroupElement> elements;
    std::vector<uint16_t> class_idx;
    std::vector<GroupElement> witness;
    std::vector<int32_t> index_of_code;  // -1 off the group
    std::vector<std::vector<uint32_t>> members;  // per class, element indices
  };
  const Tables& tables() const;
  uint32_t index_of(const GroupElement& g) const;

  std::string format(const GroupElement& g) const;
  GroupElement parse(const std::string& s) const;

 private:
  GroupElement witness_for(const GroupElement& rep, const GroupElement& g,
                           ClassKind kind) const;

  std::shared_ptr<const FieldParams> F_;
  GroupElement c_;
  std::vector<ClassLabel> classes_;
  std::vector<GroupElement> c_powers_;  // c^0 .. c^q
  // For the non-split class: z_d in F_q[c] with det z_d = d, by code of d.
  std::vector<GroupElement> c_det_fix_;
  mutable std::once_flag tables_once_;
  mutable std::unique_ptr<Tables> tables_;
};

}  // namespace mtc
