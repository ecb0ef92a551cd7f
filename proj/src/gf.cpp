#include "mtc/gf.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mtc {

namespace poly {
namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  uint64_t r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

Poly mod(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  Poly mm = m;
  trim(mm);
  uint32_t lead_inv = inv_mod(mm.back(), p);
  while (a.size() >= mm.size()) {
    uint64_t c = static_cast<uint64_t>(a.back()) * lead_inv % p;
    size_t shift = a.size() - mm.size();
    for (size_t i = 0; i < mm.size(); ++i)
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - c * mm[i] % p) % p);
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint32_t>((r[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
  return mod(std::move(r), m, p);
}

Poly powmod(Poly base, uint64_t e, const Poly& m, uint32_t p) {
  Poly r{1};
  base = mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly gcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible(const Poly& m, uint32_t p) {
  Poly mm = m;
  trim(mm);
  size_t d = mm.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  Poly x{0, 1};
  Poly xp = x;
  uint64_t pk = 1;
  for (size_t i = 1; i <= d / 2; ++i) {
    pk *= p;
    xp = powmod(x, pk, mm, p);
    Poly diff = xp;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    Poly g = gcd(mm, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Poly smallest_irreducible(uint32_t p, uint32_t degree) {
  uint64_t count = 1;
  for (uint32_t i = 0; i < degree; ++i) count *= p;
  for (uint64_t rank = 0; rank < count; ++rank) {
    Poly m(degree + 1, 0);
    m[degree] = 1;
    uint64_t r = rank;
    for (uint32_t i = 0; i < degree; ++i) {  // t^0 is the most significant digit
      m[degree - 1 - i] = static_cast<uint32_t>(r % p);
      r /= p;
    }
    if (is_irreducible(m, p)) return m;
  }
  throw DomainError("no irreducible polynomial found");
}

}  // namespace poly

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> f;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    f.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) f.push_back(n);
  return f;
}

}  // namespace

template <class E>
FiniteField<E>::FiniteField(uint32_t p, Poly modulus)
    : p_(p), degree_(static_cast<uint32_t>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  size_ = 1;
  for (uint32_t i = 0; i < degree_; ++i) size_ *= p_;
  if (static_cast<uint64_t>(size_) * size_ <= (1u << 22)) {
    add_table_.resize(static_cast<size_t>(size_) * size_);
    for (uint32_t x = 0; x < size_; ++x)
      for (uint32_t y = 0; y < size_; ++y) {
        uint32_t r = 0, mul = 1, a = x, b = y;
        for (uint32_t i = 0; i < degree_; ++i) {
          r += ((a % p_ + b % p_) % p_) * mul;
          a /= p_;
          b /= p_;
          mul *= p_;
        }
        add_table_[static_cast<size_t>(x) * size_ + y] = r;
      }
  }
  // lexicographically smallest generator
  auto factors = prime_factors(size_ - 1);
  auto slow_pow = [&](E x, uint64_t e) {
    E r = one();
    while (e > 0) {
      if (e & 1) r = slow_mul(r, x);
      x = slow_mul(x, x);
      e >>= 1;
    }
    return r;
  };
  for (uint32_t rank = 0; rank < size_; ++rank) {
    E x = lex_element(rank);
    if (x.code == 0) continue;
    bool gen = true;
    for (uint64_t r : factors)
      if (slow_pow(x, (size_ - 1) / r) == one()) {
        gen = false;
        break;
      }
    if (!gen) continue;
    exp_.assign(size_ - 1, 0);
    log_.assign(size_, -1);
    E cur = one();
    for (uint32_t i = 0; i + 1 < size_; ++i) {
      exp_[i] = cur.code;
      log_[cur.code] = i;
      cur = slow_mul(cur, x);
    }
    return;
  }
  throw DomainError("no generator found");
}

template <class E>
E FiniteField<E>::slow_mul(E x, E y) const {
  Poly a = coeffs(x), b = coeffs(y);
  Poly r = poly::mulmod(a, b, modulus_, p_);
  r.resize(degree_, 0);
  return from_coeffs(r);
}

template <class E>
E FiniteField<E>::lex_element(uint32_t rank) const {
  std::vector<uint32_t> c(degree_, 0);
  for (uint32_t i = 0; i < degree_; ++i) {
    c[degree_ - 1 - i] = rank % p_;
    rank /= p_;
  }
  return from_coeffs(c);
}

template <class E>
E FiniteField<E>::from_int(int64_t v) const {
  int64_t r = v % static_cast<int64_t>(p_);
  if (r < 0) r += p_;
  return E{static_cast<uint32_t>(r)};
}

template <class E>
E FiniteField<E>::from_coeffs(std::span<const uint32_t> c) const {
  uint32_t code = 0, mul = 1;
  for (uint32_t i = 0; i < degree_; ++i) {
    uint32_t v = i < c.size() ? c[i] % p_ : 0;
    code += v * mul;
    mul *= p_;
  }
  return E{code};
}

template <class E>
std::vector<uint32_t> FiniteField<E>::coeffs(E x) const {
  std::vector<uint32_t> c(degree_);
  uint32_t v = x.code;
  for (uint32_t i = 0; i < degree_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

template <class E>
E FiniteField<E>::add(E x, E y) const {
  if (!add_table_.empty()) return E{add_table_[static_cast<size_t>(x.code) * size_ + y.code]};
  uint32_t r = 0, mul = 1, a = x.code, b = y.code;
  for (uint32_t i = 0; i < degree_; ++i) {
    r += ((a % p_ + b % p_) % p_) * mul;
    a /= p_;
    b /= p_;
    mul *= p_;
  }
  return E{r};
}

template <class E>
E FiniteField<E>::neg(E x) const {
  uint32_t r = 0, mul = 1, a = x.code;
  for (uint32_t i = 0; i < degree_; ++i) {
    r += ((p_ - a % p_) % p_) * mul;
    a /= p_;
    mul *= p_;
  }
  return E{r};
}

template <class E>
E FiniteField<E>::mul(E x, E y) const {
  if (x.code == 0 || y.code == 0) return zero();
  int64_t s = log_[x.code] + log_[y.code];
  if (s >= static_cast<int64_t>(size_ - 1)) s -= size_ - 1;
  return E{exp_[static_cast<size_t>(s)]};
}

template <class E>
E FiniteField<E>::inv(E x) const {
  if (x.code == 0) throw DomainError("inverse of zero");
  int64_t l = log_[x.code];
  return E{exp_[l == 0 ? 0 : static_cast<size_t>(size_ - 1 - l)]};
}

template <class E>
E FiniteField<E>::pow(E x, int64_t e) const {
  if (x.code == 0) {
    if (e == 0) return one();
    if (e < 0) throw DomainError("negative power of zero");
    return zero();
  }
  return exp(log_[x.code] * (e % static_cast<int64_t>(size_ - 1)));
}

template <class E>
E FiniteField<E>::scalar(uint32_t c, E x) const {
  return mul(from_int(c), x);
}

template <class E>
void FiniteField<E>::set_generator(E g) {
  if (order(g) != static_cast<int64_t>(size_) - 1) throw DomainError("not a generator");
  std::vector<uint32_t> ex(size_ - 1);
  std::vector<int64_t> lg(size_, -1);
  E cur = one();
  for (uint32_t i = 0; i + 1 < size_; ++i) {
    ex[i] = cur.code;
    lg[cur.code] = i;
    cur = mul(cur, g);
  }
  exp_ = std::move(ex);
  log_ = std::move(lg);
}

template <class E>
int64_t FiniteField<E>::log(E x) const {
  if (x.code == 0) throw DomainError("discrete log of zero");
  return log_[x.code];
}

template <class E>
E FiniteField<E>::exp(int64_t k) const {
  int64_t m = size_ - 1;
  k %= m;
  if (k < 0) k += m;
  return E{exp_[static_cast<size_t>(k)]};
}

template <class E>
int64_t FiniteField<E>::order(E x) const {
  if (x.code == 0) throw DomainError("order of zero");
  int64_t m = size_ - 1;
  return m / std::gcd(m, log_[x.code]);
}

template <class E>
std::string FiniteField<E>::format(E x) const {
  auto c = coeffs(x);
  if (degree_ == 1) return std::to_string(c[0]);
  std::ostringstream os;
  bool first = true;
  for (uint32_t i = 0; i < degree_; ++i) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c[i];
    } else {
      if (c[i] != 1) os << c[i];
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return first ? "0" : os.str();
}

template <class E>
E FiniteField<E>::parse(const std::string& s) const {
  auto fail = [&]() -> E {
    throw DomainError("bad field element '" + s +
                      "': expected polynomial in t such as 2, t, 1+2t, 3+t^2 with "
                      "coefficients in [0," + std::to_string(p_ - 1) + "]");
  };
  if (s.empty()) fail();
  std::vector<uint32_t> c(degree_, 0);
  size_t i = 0;
  while (i < s.size()) {
    uint64_t coef = 1;
    bool has_coef = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        coef = coef * 10 + static_cast<uint64_t>(s[i] - '0');
        if (coef > 1'000'000) fail();
        ++i;
      }
      has_coef = true;
    }
    uint32_t deg = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail();
        deg = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          deg = deg * 10 + static_cast<uint32_t>(s[i++] - '0');
      }
    } else if (!has_coef) {
      fail();
    }
    if (coef >= p_ || deg >= degree_) fail();
    c[deg] = static_cast<uint32_t>((c[deg] + coef) % p_);
    if (i < s.size()) {
      if (s[i] != '+') fail();
      ++i;
      if (i == s.size()) fail();
    }
  }
  return from_coeffs(c);
}

template class FiniteField<FieldElement>;
template class FiniteField<ExtFieldElement>;

// --- FieldParams -------------------------------------------------------------

FieldParams::FieldParams(uint32_t p_, uint32_t n_, Poly m_, Poly M_)
    : p(p_), n(n_), m(std::move(m_)), M(std::move(M_)), base(p_, m), ext(p_, M) {
  q = base.size();
  h = (q - 1) / 4;
  const uint64_t q2m1 = static_cast<uint64_t>(q) * q - 1;
  check_gen = ext.generator();
  e_tilde = ext.pow(check_gen, 2 * h + 1);
  e_ext = ext.mul(e_tilde, e_tilde);
  f_tilde = ext.pow(check_gen, 2 * h);
  f = ext.mul(f_tilde, f_tilde);
  if (ext.pow(check_gen, static_cast<int64_t>(q2m1 / 2)) != ext.neg(ext.one()))
    throw DomainError("generator check failed");

  // F_q -> F_{q^2}: send t to the lexicographically smallest root of m.
  ExtFieldElement beta{};
  bool found = false;
  for (uint32_t rank = 0; rank < ext.size() && !found; ++rank) {
    ExtFieldElement x = ext.lex_element(rank);
    ExtFieldElement acc = ext.zero(), pw = ext.one();
    for (uint32_t c : m) {
      acc = ext.add(acc, ext.scalar(c, pw));
      pw = ext.mul(pw, x);
    }
    if (acc.code == 0) {
      beta = x;
      found = true;
    }
  }
  if (!found) throw DomainError("no root of m in F_{q^2}");
  embed_.resize(q);
  restrict_.assign(ext.size(), -1);
  for (uint32_t code = 0; code < q; ++code) {
    auto c = base.coeffs(FieldElement{code});
    ExtFieldElement acc = ext.zero(), pw = ext.one();
    for (uint32_t ci : c) {
      acc = ext.add(acc, ext.scalar(ci, pw));
      pw = ext.mul(pw, beta);
    }
    embed_[code] = acc.code;
    restrict_[acc.code] = code;
  }
  e = restrict(e_ext);
  base.set_generator(e);

  trace_.resize(q);
  for (uint32_t code = 0; code < q; ++code) {
    FieldElement y{code}, acc = base.zero(), cur = y;
    for (uint32_t i = 0; i < n; ++i) {
      acc = base.add(acc, cur);
      cur = base.pow(cur, p);
    }
    if (acc.code >= p) throw DomainError("trace not in prime field");
    trace_[code] = acc.code;
  }
}

FieldElement FieldParams::restrict(ExtFieldElement x) const {
  int64_t r = restrict_[x.code];
  if (r < 0) throw DomainError("element not in F_q: " + ext.format(x));
  return FieldElement{static_cast<uint32_t>(r)};
}

FieldElement FieldParams::norm(ExtFieldElement x) const {
  return restrict(ext.pow(x, static_cast<int64_t>(q) + 1));
}

ExtFieldElement FieldParams::conj(ExtFieldElement x) const { return ext.pow(x, q); }

bool FieldParams::is_square(FieldElement y) const {
  if (y.code == 0) throw DomainError("is_square(0) is undefined");
  return base.log(y) % 2 == 0;
}

int64_t FieldParams::dlog(FieldElement y) const { return base.log(y); }

FieldElement FieldParams::sqrt(FieldElement y) const {
  if (y.code == 0) return y;
  int64_t l = base.log(y);
  if (l % 2 != 0) throw DomainError("sqrt of a non-square");
  return base.exp(l / 2);
}

std::pair<uint32_t, uint32_t> prime_power(int64_t q) {
  if (q < 2) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  int64_t p = 0;
  for (int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q;
  int64_t r = q;
  uint32_t n = 0;
  while (r % p == 0) {
    r /= p;
    ++n;
  }
  if (r != 1) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
  return {static_cast<uint32_t>(p), n};
}

std::shared_ptr<const FieldParams> make_field(int64_t q) {
  if (q > 4096) throw DomainError("q = " + std::to_string(q) + " exceeds the supported range");
  auto [p, n] = prime_power(q);
  if (p == 2) throw DomainError("q = " + std::to_string(q) + " must be odd");
  if (q < 5) throw DomainError("q = " + std::to_string(q) + " must be at least 5");
  if (q % 4 != 1) throw DomainError("q = " + std::to_string(q) + " must be 1 mod 4");
  Poly m = poly::smallest_irreducible(p, n);
  Poly M = poly::smallest_irreducible(p, 2 * n);
  return std::make_shared<const FieldParams>(p, n, std::move(m), std::move(M));
}

}  // namespace mtc
