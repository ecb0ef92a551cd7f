#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtc {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class Tag>
struct FieldElem {
  uint32_t code = 0;  // sum of coeff_i * p^i
  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

struct BaseFieldTag {};
struct ExtFieldTag {};
using FieldElement = FieldElem<BaseFieldTag>;    // F_q
using ExtFieldElement = FieldElem<ExtFieldTag>;  // F_{q^2}

using Poly = std::vector<uint32_t>;  // coefficients over F_p, low degree first

namespace poly {
bool is_irreducible(const Poly& m, uint32_t p);
// Lexicographically smallest monic irreducible of the given degree; the
// non-leading coefficients are compared low-degree first.
Poly smallest_irreducible(uint32_t p, uint32_t degree);
}  // namespace poly

// F_p[t]/(modulus). Multiplication through discrete-log tables relative to a
// chosen generator of the multiplicative group.
template <class E>
class FiniteField {
 public:
  FiniteField(uint32_t p, Poly modulus);

  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return degree_; }
  uint32_t size() const { return size_; }
  const Poly& modulus() const { return modulus_; }

  E zero() const { return E{0}; }
  E one() const { return E{1}; }
  E from_int(int64_t v) const;
  E from_coeffs(std::span<const uint32_t> c) const;
  std::vector<uint32_t> coeffs(E x) const;

  E add(E x, E y) const;
  E sub(E x, E y) const { return add(x, neg(y)); }
  E neg(E x) const;
  E mul(E x, E y) const;
  E inv(E x) const;
  E div(E x, E y) const { return mul(x, inv(y)); }
  E pow(E x, int64_t e) const;
  E scalar(uint32_t c, E x) const;  // prime-field multiple

  // Elements in lexicographic order of their coefficient vectors (t^0 first).
  E lex_element(uint32_t rank) const;

  E generator() const { return E{exp_[1]}; }
  // Rebuilds the log tables relative to g, which must generate E^x.
  void set_generator(E g);
  int64_t log(E x) const;  // throws DomainError on zero
  E exp(int64_t k) const;
  int64_t order(E x) const;

  std::string format(E x) const;
  E parse(const std::string& s) const;

 private:
  E slow_mul(E x, E y) const;

  uint32_t p_;
  uint32_t degree_;
  uint32_t size_;
  Poly modulus_;
  std::vector<uint32_t> exp_;
  std::vector<int64_t> log_;
  std::vector<uint32_t> add_table_;
};

// Realization of F_q and F_{q^2} for q = p^n = 4h + 1 with the fixed elements
// used throughout: check_gen generates F_{q^2}^x, e_tilde = check_gen^{2h+1},
// e = e_tilde^2 generates F_q^x, f_tilde = check_gen^{2h}, f = f_tilde^2.
class FieldParams {
 public:
  uint32_t p = 0, n = 0, q = 0, h = 0;
  Poly m, M;
  FiniteField<FieldElement> base;
  FiniteField<ExtFieldElement> ext;

  ExtFieldElement check_gen, e_tilde, e_ext, f_tilde, f;
  FieldElement e;

  FieldParams(uint32_t p, uint32_t n, Poly m, Poly M);

  ExtFieldElement embed(FieldElement x) const { return ExtFieldElement{embed_[x.code]}; }
  bool in_base(ExtFieldElement x) const { return restrict_[x.code] >= 0; }
  FieldElement restrict(ExtFieldElement x) const;  // throws unless x in F_q

  FieldElement norm(ExtFieldElement x) const;
  ExtFieldElement conj(ExtFieldElement x) const;
  uint32_t trace_to_prime(FieldElement y) const { return trace_[y.code]; }
  bool is_square(FieldElement y) const;  // nonzero squares only; zero throws
  int64_t dlog(FieldElement y) const;    // base e, in [0, q-2]
  FieldElement e_pow(int64_t k) const { return base.exp(k); }
  FieldElement sqrt(FieldElement y) const;  // y a square; returns e^{dlog(y)/2}

  // Shorthands over F_q.
  FieldElement add(FieldElement x, FieldElement y) const { return base.add(x, y); }
  FieldElement sub(FieldElement x, FieldElement y) const { return base.sub(x, y); }
  FieldElement mul(FieldElement x, FieldElement y) const { return base.mul(x, y); }
  FieldElement neg(FieldElement x) const { return base.neg(x); }
  FieldElement inv(FieldElement x) const { return base.inv(x); }
  FieldElement from_int(int64_t v) const { return base.from_int(v); }

 private:
  std::vector<uint32_t> embed_;
  std::vector<int64_t> restrict_;
  std::vector<uint32_t> trace_;
};

// Returns (p, n) with q = p^n, or throws DomainError.
std::pair<uint32_t, uint32_t> prime_power(int64_t q);

// Validates q (odd prime power, q >= 5, q = 1 mod 4) and builds the fields
// with lexicographically smallest moduli and generator.
std::shared_ptr<const FieldParams> make_field(int64_t q);

}  // namespace mtc
