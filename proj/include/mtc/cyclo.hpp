#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtc/rational.hpp"

namespace mtc {

class NonInteger : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prime-power decomposition of a conductor, used for canonical reduction.
// Q(zeta_n) is the tensor product of Q(zeta_m) over the prime powers m | n,
// and each factor has the power basis 1, w, ..., w^{phi(m)-1}.
struct CycloBasis {
  struct Factor {
    int64_t m;      // p^a
    int64_t p;
    int64_t step;   // p^{a-1}
    int64_t phi;    // (p-1) p^{a-1}
    int64_t idem;   // = 1 mod m, = 0 mod n/m
  };
  int64_t n = 1;
  int64_t phi = 1;
  std::vector<Factor> factors;

  // Cached per conductor; safe to call from several threads.
  static const CycloBasis& get(int64_t n);
  bool is_basis_exponent(int64_t e) const;
};

// Element of Q(zeta_N) kept as a sparse exponent -> coefficient map. Terms
// are sorted and merged but not necessarily in canonical form; canonical()
// reduces against the cyclotomic relations and equality always compares
// canonical forms.
class Cyclo {
 public:
  using Term = std::pair<int64_t, Rational>;

  Cyclo() = default;
  Cyclo(Rational r);  // NOLINT(implicit)
  Cyclo(int64_t v) : Cyclo(Rational(v)) {}  // NOLINT(implicit)
  Cyclo(int v) : Cyclo(Rational(v)) {}      // NOLINT(implicit)

  static Cyclo root_of_unity(int64_t n, int64_t k);
  static Cyclo from_terms(int64_t n, std::vector<Term> terms);

  int64_t conductor() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  // Re-express over Q(zeta_m); m must be a multiple of the conductor.
  Cyclo lift(int64_t m) const;

  Cyclo operator-() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Rational& r);
  friend Cyclo operator*(const Rational& r, const Cyclo& a) { return a * r; }
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  Cyclo conj() const;
  Cyclo abs_square() const { return *this * conj(); }
  Cyclo pow(int64_t e) const;

  Cyclo canonical() const;
  bool is_zero() const;
  friend bool operator==(const Cyclo& a, const Cyclo& b) { return (a - b).is_zero(); }

  std::optional<Rational> as_rational() const;
  // Throws NonInteger unless the value is exactly a rational integer.
  int64_t as_integer() const;

  std::complex<double> to_complex() const;
  std::string str() const;

 private:
  void normalize();

  int64_t n_ = 1;
  std::vector<Term> terms_;
};

// Dense accumulator over Q(zeta_n) with a fixed denominator. Used in hot
// summation loops; every added contribution must be an integer multiple of
// 1/den or the accumulator throws.
class DenseCyclo {
 public:
  DenseCyclo(int64_t n, int64_t den);

  void clear();
  void add(const Cyclo& a, const Rational& weight = Rational(1));
  void add_product(const Cyclo& a, const Cyclo& b, const Rational& weight = Rational(1));
  // Adds weight * a * conj(b).
  void add_product_conj(const Cyclo& a, const Cyclo& b, const Rational& weight = Rational(1));

  // Reduces to canonical form in place.
  void reduce();
  bool is_zero();
  std::optional<Rational> as_rational();
  Cyclo to_cyclo();

 private:
  void add_raw(const Cyclo& a, const Cyclo& b, bool conj_b, const Rational& weight);

  int64_t n_;
  int64_t den_;
  const CycloBasis* basis_;
  std::vector<int64_t> num_;
  bool reduced_ = true;
};

// Quadratic Gauss sum over F_p: sum of legendre(t) zeta_p^t.
Cyclo gauss_sum(int64_t p);
// Exact +sqrt(p^n) for p^n = 1 mod 4, inside Q(zeta_p).
Cyclo sqrt_prime_power(int64_t p, int64_t n);

int64_t lcm64(int64_t a, int64_t b);
int64_t mod_floor(int64_t a, int64_t m);

}  // namespace mtc
