#include "mtc/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace mtc {

int64_t mod_floor(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int64_t lcm64(int64_t a, int64_t b) { return a / std::gcd(a, b) * b; }

namespace {

// Extended Euclid; returns x with a*x = 1 mod m.
int64_t inverse_mod(int64_t a, int64_t m) {
  int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
  while (a1 != 0) {
    int64_t t = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - t * a1);
    std::tie(x, x1) = std::make_pair(x1, x - t * x1);
  }
  return mod_floor(x, m);
}

CycloBasis make_basis(int64_t n) {
  CycloBasis b;
  b.n = n;
  int64_t rest = n;
  for (int64_t p = 2; p * p <= rest || rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p != 0) continue;
    int64_t m = 1;
    while (rest % p == 0) {
      rest /= p;
      m *= p;
    }
    CycloBasis::Factor f;
    f.m = m;
    f.p = p;
    f.step = m / p;
    f.phi = m - f.step;
    int64_t other = n / m;
    f.idem = mod_floor(other * inverse_mod(other, m), n);
    b.factors.push_back(f);
    b.phi *= f.phi;
  }
  return b;
}

}  // namespace

const CycloBasis& CycloBasis::get(int64_t n) {
  static std::mutex mu;
  static std::map<int64_t, std::unique_ptr<CycloBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<CycloBasis>(make_basis(n));
  return *slot;
}

bool CycloBasis::is_basis_exponent(int64_t e) const {
  for (const auto& f : factors)
    if (e % f.m >= f.phi) return false;
  return true;
}

Cyclo::Cyclo(Rational r) {
  if (!r.is_zero()) terms_.emplace_back(0, r);
}

Cyclo Cyclo::root_of_unity(int64_t n, int64_t k) {
  if (n < 1) throw std::invalid_argument("root_of_unity: conductor must be positive");
  Cyclo c;
  c.n_ = n;
  c.terms_.emplace_back(mod_floor(k, n), Rational(1));
  return c;
}

Cyclo Cyclo::from_terms(int64_t n, std::vector<Term> terms) {
  Cyclo c;
  c.n_ = n;
  c.terms_ = std::move(terms);
  c.normalize();
  return c;
}

void Cyclo::normalize() {
  for (auto& t : terms_) t.first = mod_floor(t.first, n_);
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const Term& t) { return t.second.is_zero(); });
  terms_ = std::move(out);
}

Cyclo Cyclo::lift(int64_t m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw std::invalid_argument("Cyclo::lift: target is not a multiple");
  Cyclo c;
  c.n_ = m;
  int64_t f = m / n_;
  c.terms_.reserve(terms_.size());
  for (const auto& [e, r] : terms_) c.terms_.emplace_back(e * f, r);
  return c;
}

Cyclo Cyclo::operator-() const {
  Cyclo c = *this;
  for (auto& t : c.terms_) t.second = -t.second;
  return c;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  if (a.terms_.empty()) return b;
  if (b.terms_.empty()) return a;
  int64_t n = lcm64(a.n_, b.n_);
  Cyclo x = a.lift(n), y = b.lift(n);
  Cyclo c;
  c.n_ = n;
  c.terms_.reserve(x.terms_.size() + y.terms_.size());
  std::merge(x.terms_.begin(), x.terms_.end(), y.terms_.begin(), y.terms_.end(),
             std::back_inserter(c.terms_),
             [](const Cyclo::Term& s, const Cyclo::Term& t) { return s.first < t.first; });
  c.normalize();
  return c;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Rational& r) {
  if (r.is_zero()) return Cyclo();
  Cyclo c = a;
  for (auto& t : c.terms_) t.second *= r;
  return c;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Cyclo();
  int64_t n = lcm64(a.n_, b.n_);
  int64_t fa = n / a.n_, fb = n / b.n_;
  Cyclo c;
  c.n_ = n;
  c.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ra] : a.terms_)
    for (const auto& [eb, rb] : b.terms_) c.terms_.emplace_back((ea * fa + eb * fb) % n, ra * rb);
  c.normalize();
  return c;
}

Cyclo Cyclo::conj() const {
  Cyclo c = *this;
  for (auto& t : c.terms_) t.first = -t.first;
  c.normalize();
  return c;
}

Cyclo Cyclo::pow(int64_t e) const {
  if (e < 0) throw std::invalid_argument("Cyclo::pow: negative exponent");
  Cyclo result(1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Cyclo Cyclo::canonical() const {
  const CycloBasis& basis = CycloBasis::get(n_);
  std::vector<Term> cur = terms_;
  for (const auto& f : basis.factors) {
    std::vector<Term> next;
    next.reserve(cur.size());
    for (const auto& [e, r] : cur) {
      int64_t comp = e % f.m;
      if (comp < f.phi) {
        next.emplace_back(e, r);
        continue;
      }
      int64_t base = comp - f.phi;
      for (int64_t j = 0; j + 1 < f.p; ++j) {
        int64_t target = base + j * f.step;
        next.emplace_back(mod_floor(e + (target - comp) * f.idem, n_), -r);
      }
    }
    Cyclo tmp;
    tmp.n_ = n_;
    tmp.terms_ = std::move(next);
    tmp.normalize();
    cur = std::move(tmp.terms_);
  }
  Cyclo c;
  c.n_ = n_;
  c.terms_ = std::move(cur);
  return c;
}

bool Cyclo::is_zero() const { return terms_.empty() || canonical().terms_.empty(); }

std::optional<Rational> Cyclo::as_rational() const {
  Cyclo c = canonical();
  if (c.terms_.empty()) return Rational(0);
  if (c.terms_.size() == 1 && c.terms_[0].first == 0) return c.terms_[0].second;
  return std::nullopt;
}

int64_t Cyclo::as_integer() const {
  auto r = as_rational();
  if (!r || !r->is_integer()) throw NonInteger("not a rational integer: " + canonical().str());
  return r->num();
}

std::complex<double> Cyclo::to_complex() const {
  std::complex<double> z = 0;
  for (const auto& [e, r] : terms_)
    z += r.to_double() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) /
                                             static_cast<double>(n_));
  return z;
}

std::string Cyclo::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, r] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << r;
    } else {
      if (r != Rational(1)) os << "(" << r << ")*";
      os << "z" << n_ << "^" << e;
    }
  }
  return os.str();
}

// --- DenseCyclo ------------------------------------------------------------

DenseCyclo::DenseCyclo(int64_t n, int64_t den)
    : n_(n), den_(den), basis_(&CycloBasis::get(n)), num_(static_cast<size_t>(n), 0) {}

void DenseCyclo::clear() {
  std::fill(num_.begin(), num_.end(), 0);
  reduced_ = true;
}

namespace {

int64_t common_den(const Cyclo& c) {
  int64_t d = 1;
  for (const auto& t : c.terms()) d = lcm64(d, t.second.den());
  return d;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("DenseCyclo: overflow");
  return r;
}

}  // namespace

void DenseCyclo::add(const Cyclo& a, const Rational& weight) { add_raw(a, Cyclo(1), false, weight); }

void DenseCyclo::add_product(const Cyclo& a, const Cyclo& b, const Rational& weight) {
  add_raw(a, b, false, weight);
}

void DenseCyclo::add_product_conj(const Cyclo& a, const Cyclo& b, const Rational& weight) {
  add_raw(a, b, true, weight);
}

void DenseCyclo::add_raw(const Cyclo& a, const Cyclo& b, bool conj_b, const Rational& weight) {
  if (a.terms().empty() || b.terms().empty() || weight.is_zero()) return;
  if (n_ % a.conductor() != 0 || n_ % b.conductor() != 0)
    throw std::invalid_argument("DenseCyclo: conductor mismatch");
  int64_t da = common_den(a), db = common_den(b);
  // contribution = weight * (A/da) * (B/db); scaled by den_ it must be integral.
  Rational scale = weight * Rational(den_) / Rational(da) / Rational(db);
  if (!scale.is_integer()) throw std::domain_error("DenseCyclo: denominator too small");
  int64_t s = scale.num();
  int64_t fa = n_ / a.conductor(), fb = n_ / b.conductor();
  for (const auto& [ea, ra] : a.terms()) {
    int64_t ca = checked_mul(ra.num(), da / ra.den());
    int64_t cas = checked_mul(ca, s);
    for (const auto& [eb, rb] : b.terms()) {
      int64_t cb = checked_mul(rb.num(), db / rb.den());
      int64_t e = ea * fa + (conj_b ? -eb * fb : eb * fb);
      e %= n_;
      if (e < 0) e += n_;
      int64_t& slot = num_[static_cast<size_t>(e)];
      if (__builtin_add_overflow(slot, checked_mul(cas, cb), &slot))
        throw OverflowError("DenseCyclo: overflow");
    }
  }
  reduced_ = false;
}

void DenseCyclo::reduce() {
  if (reduced_) return;
  for (const auto& f : basis_->factors) {
    for (int64_t e = 0; e < n_; ++e) {
      int64_t v = num_[static_cast<size_t>(e)];
      if (v == 0) continue;
      int64_t comp = e % f.m;
      if (comp < f.phi) continue;
      int64_t base = comp - f.phi;
      for (int64_t j = 0; j + 1 < f.p; ++j) {
        int64_t target = base + j * f.step;
        int64_t e2 = mod_floor(e + (target - comp) * f.idem, n_);
        num_[static_cast<size_t>(e2)] -= v;
      }
      num_[static_cast<size_t>(e)] = 0;
    }
  }
  reduced_ = true;
}

bool DenseCyclo::is_zero() {
  reduce();
  return std::all_of(num_.begin(), num_.end(), [](int64_t v) { return v == 0; });
}

std::optional<Rational> DenseCyclo::as_rational() {
  reduce();
  for (int64_t e = 1; e < n_; ++e)
    if (num_[static_cast<size_t>(e)] != 0) return std::nullopt;
  return Rational(num_[0], den_);
}

Cyclo DenseCyclo::to_cyclo() {
  reduce();
  std::vector<Cyclo::Term> terms;
  for (int64_t e = 0; e < n_; ++e)
    if (num_[static_cast<size_t>(e)] != 0)
      terms.emplace_back(e, Rational(num_[static_cast<size_t>(e)], den_));
  return Cyclo::from_terms(n_, std::move(terms));
}

// --- square roots ------------------------------------------------------------

Cyclo gauss_sum(int64_t p) {
  std::vector<bool> square(static_cast<size_t>(p), false);
  for (int64_t t = 1; t < p; ++t) square[static_cast<size_t>(t * t % p)] = true;
  std::vector<Cyclo::Term> terms;
  for (int64_t t = 1; t < p; ++t) terms.emplace_back(t, Rational(square[static_cast<size_t>(t)] ? 1 : -1));
  return Cyclo::from_terms(p, std::move(terms));
}

Cyclo sqrt_prime_power(int64_t p, int64_t n) {
  int64_t scale = 1;
  for (int64_t i = 0; i < n / 2; ++i) scale *= p;
  if (n % 2 == 0) return Cyclo(scale);
  if (p % 4 != 1) throw std::invalid_argument("sqrt_prime_power: p^n must be 1 mod 4");
  return gauss_sum(p) * Rational(scale);
}

}  // namespace mtc
