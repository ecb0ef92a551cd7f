#include "mtc/sl2.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace mtc {

std::string ClassLabel::str() const {
  auto sg = [](int s) { return s > 0 ? "+" : "-"; };
  switch (kind) {
    case ClassKind::Central:
      return std::string(sg(mu)) + "e";
    case ClassKind::A:
      return "a^" + std::to_string(k);
    case ClassKind::B:
      return std::string(sg(mu)) + "b" + sg(eps);
    case ClassKind::C:
      return "c^" + std::to_string(k);
  }
  return "?";
}

SL2::SL2(std::shared_ptr<const FieldParams> field) : F_(std::move(field)) {
  const auto& F = *F_;
  const auto& X = F.ext;
  // c = [[s1, s1' e~^{-1}], [s1' e~, s1]] with s1, s1' from f.
  auto half = X.inv(X.from_int(2));
  auto finv = X.inv(F.f);
  auto s1 = X.mul(half, X.add(F.f, finv));
  auto s1p = X.mul(half, X.sub(F.f, finv));
  c_ = GroupElement{F.restrict(s1), F.restrict(X.mul(s1p, X.inv(F.e_tilde))),
                    F.restrict(X.mul(s1p, F.e_tilde)), F.restrict(s1)};

  classes_.push_back(ClassLabel::central(1));
  classes_.push_back(ClassLabel::central(-1));
  for (int k = 1; k <= 2 * static_cast<int>(F.h) - 1; ++k) classes_.push_back(ClassLabel::split(k));
  for (int mu : {1, -1})
    for (int eps : {1, -1}) classes_.push_back(ClassLabel::unipotent(mu, eps));
  for (int l = 1; l <= 2 * static_cast<int>(F.h); ++l) classes_.push_back(ClassLabel::nonsplit(l));

  c_powers_.push_back(identity());
  for (uint32_t i = 1; i <= F.q + 1; ++i) c_powers_.push_back(mul(c_powers_.back(), c_));

  c_det_fix_.assign(F.q, identity());
  std::vector<bool> seen(F.q, false);
  for (uint32_t al = 0; al < F.q; ++al)
    for (uint32_t be = 0; be < F.q; ++be) {
      FieldElement A{al}, B{be};
      GroupElement z{F.add(A, F.mul(B, c_.a)), F.mul(B, c_.b), F.mul(B, c_.c),
                     F.add(A, F.mul(B, c_.d))};
      FieldElement d = det(z);
      if (d.code != 0 && !seen[d.code]) {
        seen[d.code] = true;
        c_det_fix_[d.code] = z;
      }
    }
}

uint64_t SL2::order() const {
  uint64_t q = F_->q;
  return q * (q * q - 1);
}

GroupElement SL2::identity() const { return scalar(1); }

GroupElement SL2::scalar(int mu) const {
  FieldElement s = mu > 0 ? F_->base.one() : F_->neg(F_->base.one());
  return {s, F_->base.zero(), F_->base.zero(), s};
}

GroupElement SL2::mul(const GroupElement& x, const GroupElement& y) const {
  const auto& F = *F_;
  return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
          F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

GroupElement SL2::inv(const GroupElement& x) const {
  return {x.d, F_->neg(x.b), F_->neg(x.c), x.a};
}

GroupElement SL2::neg(const GroupElement& x) const {
  return {F_->neg(x.a), F_->neg(x.b), F_->neg(x.c), F_->neg(x.d)};
}

GroupElement SL2::pow(const GroupElement& x, int64_t e) const {
  GroupElement base = e < 0 ? inv(x) : x;
  uint64_t n = static_cast<uint64_t>(e < 0 ? -e : e);
  GroupElement r = identity();
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

GroupElement SL2::conj_by(const GroupElement& g, const GroupElement& x) const {
  return mul(mul(g, x), inv(g));
}

FieldElement SL2::trace(const GroupElement& x) const { return F_->add(x.a, x.d); }

FieldElement SL2::det(const GroupElement& x) const {
  return F_->sub(F_->mul(x.a, x.d), F_->mul(x.b, x.c));
}

bool SL2::is_central(const GroupElement& x) const {
  return x.b.code == 0 && x.c.code == 0 && x.a == x.d;
}

GroupElement SL2::a(FieldElement x) const {
  return {x, F_->base.zero(), F_->base.zero(), F_->inv(x)};
}

GroupElement SL2::b(FieldElement y) const {
  return {F_->base.one(), y, F_->base.zero(), F_->base.one()};
}

GroupElement SL2::b_eps(int eps) const { return b(F_->e_pow(eps > 0 ? 0 : 1)); }

GroupElement SL2::c() const { return c_; }

GroupElement SL2::j() const {
  return {F_->base.zero(), F_->base.one(), F_->neg(F_->base.one()), F_->base.zero()};
}

size_t SL2::class_index(const ClassLabel& l) const {
  const int h = static_cast<int>(F_->h);
  switch (l.kind) {
    case ClassKind::Central:
      return l.mu > 0 ? 0 : 1;
    case ClassKind::A:
      if (l.k < 1 || l.k > 2 * h - 1) break;
      return 1 + static_cast<size_t>(l.k);
    case ClassKind::B:
      return static_cast<size_t>(2 * h + 1 + (l.mu > 0 ? 0 : 2) + (l.eps > 0 ? 0 : 1));
    case ClassKind::C:
      if (l.k < 1 || l.k > 2 * h) break;
      return static_cast<size_t>(2 * h + 4 + l.k);
  }
  throw std::out_of_range("class label out of range: " + l.str());
}

GroupElement SL2::rep(const ClassLabel& l) const {
  switch (l.kind) {
    case ClassKind::Central:
      return scalar(l.mu);
    case ClassKind::A:
      return a(F_->e_pow(l.k));
    case ClassKind::B: {
      GroupElement g = b_eps(l.eps);
      return l.mu > 0 ? g : neg(g);
    }
    case ClassKind::C:
      return c_powers_.at(static_cast<size_t>(l.k));
  }
  throw std::logic_error("bad class kind");
}

uint64_t SL2::class_size(const ClassLabel& l) const {
  uint64_t q = F_->q;
  switch (l.kind) {
    case ClassKind::Central:
      return 1;
    case ClassKind::A:
      return q * (q + 1);
    case ClassKind::B:
      return (q * q - 1) / 2;
    case ClassKind::C:
      return q * (q - 1);
  }
  return 0;
}

CentralizerDesc SL2::centralizer(const ClassLabel& l) const {
  uint64_t q = F_->q;
  switch (l.kind) {
    case ClassKind::Central:
      return {CentralizerKind::Full, order(), {a(F_->e), b(F_->base.one()), j()}};
    case ClassKind::A:
      return {CentralizerKind::CyclicSplit, q - 1, {a(F_->e)}};
    case ClassKind::B: {
      std::vector<GroupElement> gens{scalar(-1)};
      for (uint32_t i = 0; i < F_->n; ++i) {
        std::vector<uint32_t> coeffs(F_->n, 0);
        coeffs[i] = 1;
        gens.push_back(b(F_->base.from_coeffs(coeffs)));
      }
      return {CentralizerKind::Unipotent, 2 * q, gens};
    }
    case ClassKind::C:
      return {CentralizerKind::CyclicNonsplit, q + 1, {c_}};
  }
  throw std::logic_error("bad class kind");
}

std::vector<GroupElement> SL2::centralizer_elements(const ClassLabel& l) const {
  const auto& F = *F_;
  std::vector<GroupElement> out;
  if (l.kind == ClassKind::Central) {
    if (tables_) return tables_->elements;
    for (uint64_t code = 0, n = static_cast<uint64_t>(F.q) * F.q * F.q * F.q; code < n; ++code) {
      GroupElement g = decode(code);
      if (det(g) == F.base.one()) out.push_back(g);
    }
    return out;
  }
  GroupElement r = rep(l);
  for (uint32_t al = 0; al < F.q; ++al)
    for (uint32_t be = 0; be < F.q; ++be) {
      FieldElement A{al}, B{be};
      GroupElement z{F.add(A, F.mul(B, r.a)), F.mul(B, r.b), F.mul(B, r.c), F.add(A, F.mul(B, r.d))};
      if (det(z) == F.base.one()) out.push_back(z);
    }
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return code(x) < code(y); });
  return out;
}

std::vector<GroupElement> SL2::class_members(const ClassLabel& l) const {
  std::vector<GroupElement> out;
  if (tables_) {
    const auto& T = *tables_;
    for (uint32_t i : T.members[class_index(l)]) out.push_back(T.elements[i]);
    return out;
  }
  GroupElement r = rep(l);
  for (uint64_t c = 0, n = static_cast<uint64_t>(q()) * q() * q() * q(); c < n; ++c) {
    GroupElement g = decode(c);
    if (det(g) != F_->base.one() || trace(g) != trace(r)) continue;
    if (class_of(g).label == l) out.push_back(g);
  }
  return out;
}

namespace {

// Basis of the nullspace of a 4x4 matrix over F_q.
std::vector<std::array<FieldElement, 4>> nullspace4(const FieldParams& F,
                                                   std::array<std::array<FieldElement, 4>, 4> m) {
  std::array<int, 4> pivot_col{-1, -1, -1, -1};
  int row = 0;
  std::array<bool, 4> is_pivot{false, false, false, false};
  for (int col = 0; col < 4 && row < 4; ++col) {
    int sel = -1;
    for (int r = row; r < 4; ++r)
      if (m[r][col].code != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    FieldElement iv = F.inv(m[row][col]);
    for (auto& x : m[row]) x = F.mul(x, iv);
    for (int r = 0; r < 4; ++r) {
      if (r == row || m[r][col].code == 0) continue;
      FieldElement f = m[r][col];
      for (int c = 0; c < 4; ++c) m[r][c] = F.sub(m[r][c], F.mul(f, m[row][c]));
    }
    pivot_col[row] = col;
    is_pivot[col] = true;
    ++row;
  }
  std::vector<std::array<FieldElement, 4>> basis;
  for (int free = 0; free < 4; ++free) {
    if (is_pivot[free]) continue;
    std::array<FieldElement, 4> v{};
    v[free] = F.base.one();
    for (int r = 0; r < row; ++r) v[pivot_col[r]] = F.neg(m[r][free]);
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

GroupElement SL2::witness_for(const GroupElement& R, const GroupElement& G, ClassKind kind) const {
  const auto& F = *F_;
  // Solve W R = G W for W = [[w0, w1], [w2, w3]].
  std::array<std::array<FieldElement, 2>, 2> r{{{R.a, R.b}, {R.c, R.d}}};
  std::array<std::array<FieldElement, 2>, 2> g{{{G.a, G.b}, {G.c, G.d}}};
  std::array<std::array<FieldElement, 4>, 4> m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto& row = m[2 * i + j];
      for (int k = 0; k < 2; ++k) {
        row[2 * i + k] = F.add(row[2 * i + k], r[k][j]);
        row[2 * k + j] = F.sub(row[2 * k + j], g[i][k]);
      }
    }
  auto basis = nullspace4(F, m);
  if (basis.size() != 2) throw std::logic_error("conjugation equation has unexpected rank");
  auto to_elem = [](const std::array<FieldElement, 4>& v) { return GroupElement{v[0], v[1], v[2], v[3]}; };
  GroupElement W{};
  FieldElement d{};
  bool ok = false;
  for (uint32_t lam = 0; lam <= F.q && !ok; ++lam) {
    std::array<FieldElement, 4> v;
    for (int i = 0; i < 4; ++i)
      v[i] = lam == F.q ? basis[1][i] : F.add(basis[0][i], F.mul(FieldElement{lam}, basis[1][i]));
    W = to_elem(v);
    d = det(W);
    ok = d.code != 0;
  }
  if (!ok) throw std::logic_error("no invertible conjugator");
  FieldElement dinv = F.inv(d);
  switch (kind) {
    case ClassKind::A:
      W = mul(W, GroupElement{dinv, F.base.zero(), F.base.zero(), F.base.one()});
      break;
    case ClassKind::B: {
      if (!F.is_square(dinv)) throw std::logic_error("unipotent conjugator has non-square determinant");
      FieldElement s = F.sqrt(dinv);
      W = mul(W, GroupElement{s, F.base.zero(), F.base.zero(), s});
      break;
    }
    case ClassKind::C:
      W = mul(W, c_det_fix_[dinv.code]);
      break;
    case ClassKind::Central:
      break;
  }
  return W;
}

SL2::Classified SL2::class_of(const GroupElement& g) const {
  const auto& F = *F_;
  const auto one = F.base.one();
  if (det(g) != one) throw DomainError("matrix does not have determinant 1");
  if (is_central(g)) return {ClassLabel::central(g.a == one ? 1 : -1), identity()};
  FieldElement t = trace(g);
  FieldElement two = F.from_int(2);
  ClassLabel label;
  if (t == two || t == F.neg(two)) {
    int mu = t == two ? 1 : -1;
    GroupElement n = mu > 0 ? g : neg(g);
    n.a = F.sub(n.a, one);
    n.d = F.sub(n.d, one);
    FieldElement x = n.b.code != 0 ? n.b : F.neg(n.c);
    label = ClassLabel::unipotent(mu, F.is_square(x) ? 1 : -1);
  } else {
    FieldElement disc = F.sub(F.mul(t, t), F.from_int(4));
    const int64_t q1 = F.q - 1;
    if (F.is_square(disc)) {
      FieldElement lam = F.mul(F.inv(two), F.add(t, F.sqrt(disc)));
      int64_t k = F.dlog(lam);
      if (k > q1 / 2) k = q1 - k;
      label = ClassLabel::split(static_cast<int>(k));
    } else {
      const auto& X = F.ext;
      // eigenvalue in F_{q^2}: (t + sqrt(disc)) / 2
      int64_t ld = X.log(F.embed(disc));
      auto root = X.exp(ld / 2);
      auto lam = X.mul(X.inv(X.from_int(2)), X.add(F.embed(t), root));
      int64_t m = X.log(lam) / q1;
      if (m > static_cast<int64_t>(F.q + 1) / 2) m = F.q + 1 - m;
      label = ClassLabel::nonsplit(static_cast<int>(m));
    }
  }
  return {label, witness_for(rep(label), g, label.kind)};
}

uint64_t SL2::code(const GroupElement& g) const {
  uint64_t q = F_->q;
  return ((static_cast<uint64_t>(g.a.code) * q + g.b.code) * q + g.c.code) * q + g.d.code;
}

GroupElement SL2::decode(uint64_t code) const {
  uint32_t q = F_->q;
  GroupElement g;
  g.d.code = static_cast<uint32_t>(code % q);
  code /= q;
  g.c.code = static_cast<uint32_t>(code % q);
  code /= q;
  g.b.code = static_cast<uint32_t>(code % q);
  code /= q;
  g.a.code = static_cast<uint32_t>(code);
  return g;
}

const SL2::Tables& SL2::tables() const {
  std::call_once(tables_once_, [this] {
    auto T = std::make_unique<Tables>();
    const uint64_t n = static_cast<uint64_t>(q()) * q() * q() * q();
    T->index_of_code.assign(n, -1);
    T->elements.reserve(order());
    for (uint64_t c = 0; c < n; ++c) {
      GroupElement g = decode(c);
      if (det(g) != F_->base.one()) continue;
      T->index_of_code[c] = static_cast<int32_t>(T->elements.size());
      T->elements.push_back(g);
    }
    T->members.resize(classes_.size());
    T->class_idx.resize(T->elements.size());
    T->witness.resize(T->elements.size());
    for (uint32_t i = 0; i < T->elements.size(); ++i) {
      auto cl = class_of(T->elements[i]);
      size_t ci = class_index(cl.label);
      T->class_idx[i] = static_cast<uint16_t>(ci);
      T->witness[i] = cl.witness;
      T->members[ci].push_back(i);
    }
    tables_ = std::move(T);
  });
  return *tables_;
}

uint32_t SL2::index_of(const GroupElement& g) const {
  int32_t i = tables().index_of_code[code(g)];
  if (i < 0) throw DomainError("not an element of SL(2,q)");
  return static_cast<uint32_t>(i);
}

std::string SL2::format(const GroupElement& g) const {
  const auto& B = F_->base;
  return "[[" + B.format(g.a) + "," + B.format(g.b) + "],[" + B.format(g.c) + "," + B.format(g.d) + "]]";
}

GroupElement SL2::parse(const std::string& s) const {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  auto fail = [&]() -> GroupElement {
    throw DomainError("bad group element '" + s + "': expected [[a,b],[c,d]] with ad-bc=1");
  };
  if (t.size() < 9 || t.rfind("[[", 0) != 0 || t.substr(t.size() - 2) != "]]") fail();
  std::string body = t.substr(2, t.size() - 4);
  auto mid = body.find("],[");
  if (mid == std::string::npos) fail();
  auto split = [&](const std::string& part) {
    auto comma = part.find(',');
    if (comma == std::string::npos) fail();
    return std::make_pair(F_->base.parse(part.substr(0, comma)), F_->base.parse(part.substr(comma + 1)));
  };
  auto [a0, b0] = split(body.substr(0, mid));
  auto [c0, d0] = split(body.substr(mid + 3));
  GroupElement g{a0, b0, c0, d0};
  if (det(g) != F_->base.one()) fail();
  return g;
}

}  // namespace mtc
