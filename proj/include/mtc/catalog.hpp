#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mtc/cyclo.hpp"
#include "mtc/irreps.hpp"
#include "mtc/sl2.hpp"

namespace mtc {

enum class Family { E, A, B, C };

// Simple object of E(SL(2,q)).
//   E(mu, irrep)          support mu e
//   A(k, u)               u in [1, q-1]
//   B(mu, eps, nu, v)     v in F_q
//   C(l, w)               w in [1, q+1]
struct SimpleLabel {
  Family family = Family::E;
  int mu = 1;
  int eps = 1;
  int nu = 1;
  int k = 0;  // k or l
  int u = 0;  // u or w
  Irrep irrep{};
  FieldElement v{};

  static SimpleLabel central(int mu, Irrep r) { return {Family::E, mu, 1, 1, 0, 0, r, {}}; }
  static SimpleLabel split(int k, int u) { return {Family::A, 1, 1, 1, k, u, {}, {}}; }
  static SimpleLabel unipotent(int mu, int eps, int nu, FieldElement v) {
    return {Family::B, mu, eps, nu, 0, 0, {}, v};
  }
  static SimpleLabel nonsplit(int l, int w) { return {Family::C, 1, 1, 1, l, w, {}, {}}; }

  ClassLabel support() const;
  friend auto operator<=>(const SimpleLabel&, const SimpleLabel&) = default;
};

struct SimpleData {
  SimpleLabel label;
  ClassLabel support;
  size_t support_idx = 0;
  int64_t rho_dim = 1;
  int64_t qdim = 0;
  Cyclo twist;
  int parity = 1;
};

class Catalog {
 public:
  explicit Catalog(std::shared_ptr<const SL2> group);

  const SL2& group() const { return *G_; }
  const FieldParams& field() const { return G_->field(); }
  const Sl2CharTable& table() const { return table_; }

  const std::vector<SimpleData>& simples() const { return simples_; }
  size_t size() const { return simples_.size(); }
  size_t index(const SimpleLabel& l) const;
  const SimpleData& data(const SimpleLabel& l) const { return simples_[index(l)]; }
  // Simple indices with the given support class index.
  const std::vector<size_t>& by_support(size_t cls) const { return by_support_[cls]; }
  size_t unit() const { return 0; }

  // Value at h of the centralizer representation of simple i; h must lie in
  // Cen(rep(support)). For central supports this is the SL(2,q) character.
  Cyclo rho(size_t i, const GroupElement& h) const;

  // Working conductor: every character value lives in Q(zeta_L).
  int64_t conductor() const { return conductor_; }

  std::string format(const SimpleLabel& l) const;
  SimpleLabel parse(const std::string& s) const;

  // Exponent m with h = c^m, for h in <c>.
  int64_t c_exponent(const GroupElement& h) const;

 private:
  std::shared_ptr<const SL2> G_;
  Sl2CharTable table_;
  std::vector<SimpleData> simples_;
  std::map<SimpleLabel, size_t> index_;
  std::vector<std::vector<size_t>> by_support_;
  int64_t conductor_;
};

}  // namespace mtc
