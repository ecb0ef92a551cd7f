#include "mtc/fusion.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace mtc {

namespace {

int acute(int s) { return s > 0 ? 0 : 1; }

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("MTC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

FieldElement delta_invariant(const FieldParams& F, FieldElement t, FieldElement t1, FieldElement t2) {
  FieldElement r = F.add(F.from_int(4), F.mul(t, F.mul(t1, t2)));
  r = F.sub(r, F.mul(t, t));
  r = F.sub(r, F.mul(t1, t1));
  return F.sub(r, F.mul(t2, t2));
}

std::vector<std::pair<GroupElement, GroupElement>> solve_pairs_diagonal(const SL2& G, FieldElement t1,
                                                                        FieldElement t2, FieldElement a) {
  const auto& F = G.field();
  FieldElement ai = F.inv(a);
  FieldElement s = F.inv(F.sub(a, ai));
  FieldElement delta = delta_invariant(F, F.add(a, ai), t1, t2);
  std::vector<std::pair<GroupElement, GroupElement>> out;
  auto emit = [&](FieldElement y, FieldElement z) {
    GroupElement y1{F.mul(s, F.sub(F.mul(a, t1), t2)), F.mul(s, F.neg(F.mul(a, y))),
                    F.mul(s, F.neg(F.mul(ai, z))), F.mul(s, F.sub(t2, F.mul(ai, t1)))};
    GroupElement y2{F.mul(s, F.sub(F.mul(a, t2), t1)), F.mul(s, y), F.mul(s, z),
                    F.mul(s, F.sub(t1, F.mul(ai, t2)))};
    out.emplace_back(y1, y2);
  };
  for (uint32_t yc = 0; yc < F.q; ++yc) {
    FieldElement y{yc};
    if (yc != 0) {
      emit(y, F.mul(delta, F.inv(y)));
    } else if (delta.code == 0) {
      for (uint32_t zc = 0; zc < F.q; ++zc) emit(y, FieldElement{zc});
    }
  }
  return out;
}

std::vector<std::pair<GroupElement, GroupElement>> solve_pairs_unipotent(const SL2& G, FieldElement t1,
                                                                         FieldElement t2, int mu,
                                                                         FieldElement b) {
  const auto& F = G.field();
  FieldElement bi = F.inv(b);
  FieldElement m = mu > 0 ? F.base.one() : F.neg(F.base.one());
  FieldElement d21 = F.sub(t2, F.mul(m, t1));
  FieldElement d12 = F.sub(t1, F.mul(m, t2));
  std::vector<std::pair<GroupElement, GroupElement>> out;
  for (uint32_t xc = 0; xc < F.q; ++xc)
    for (uint32_t yc = 0; yc < F.q; ++yc) {
      FieldElement x{xc}, y{yc};
      FieldElement lhs = F.mul(x, F.sub(t2, x));
      FieldElement rhs = F.add(F.mul(d21, F.mul(y, bi)), F.base.one());
      if (lhs != rhs) continue;
      GroupElement y1{F.sub(t1, F.mul(m, x)), F.mul(m, F.sub(F.mul(b, x), y)), F.mul(d12, bi), F.mul(m, x)};
      GroupElement y2{x, y, F.mul(d21, bi), F.sub(t2, x)};
      out.emplace_back(y1, y2);
    }
  return out;
}

bool real_form_filter(const FieldParams& F, const ExtMatrix& u) {
  const auto& X = F.ext;
  return u.d == F.conj(u.a) && u.c == X.neg(X.mul(F.e_ext, F.conj(u.b)));
}

ExtMatrix conj_by_k(const FieldParams& F, const ExtMatrix& u) {
  const auto& X = F.ext;
  auto one = X.one();
  auto et = F.e_tilde;
  ExtMatrix k{one, X.neg(X.inv(et)), et, one};
  auto mul = [&](const ExtMatrix& x, const ExtMatrix& y) {
    return ExtMatrix{X.add(X.mul(x.a, y.a), X.mul(x.b, y.c)), X.add(X.mul(x.a, y.b), X.mul(x.b, y.d)),
                     X.add(X.mul(x.c, y.a), X.mul(x.d, y.c)), X.add(X.mul(x.c, y.b), X.mul(x.d, y.d))};
  };
  auto di = X.inv(X.sub(X.mul(k.a, k.d), X.mul(k.b, k.c)));
  ExtMatrix ki{X.mul(k.d, di), X.neg(X.mul(k.b, di)), X.neg(X.mul(k.c, di)), X.mul(k.a, di)};
  return mul(mul(k, u), ki);
}

FusionRules::FusionRules(std::shared_ptr<const CharacterEngine> engine, bool oracle_fallback)
    : engine_(std::move(engine)), oracle_fallback_(oracle_fallback) {}

bool FusionRules::closed_form(size_t s1, size_t s2) const {
  const auto& S = catalog().simples();
  return S[s1].label.family != Family::E && S[s2].label.family != Family::E;
}

FactorData FusionRules::factor(size_t s) const {
  const auto& F = catalog().field();
  const auto& d = catalog().simples()[s];
  const auto& l = d.label;
  FactorData f;
  f.family = l.family;
  f.parity = d.parity;
  switch (l.family) {
    case Family::A: {
      f.k = l.k;
      f.u = l.u;
      f.t = F.add(F.e_pow(l.k), F.e_pow(-l.k));
      break;
    }
    case Family::B:
      f.mu = l.mu;
      f.eps = l.eps;
      f.nu = l.nu;
      f.v = l.v;
      f.t = F.from_int(2 * l.mu);
      break;
    case Family::C: {
      f.k = l.k;
      f.u = l.u;
      const auto& X = F.ext;
      f.t = F.restrict(X.add(X.pow(F.f, l.k), X.pow(F.f, -l.k)));
      break;
    }
    case Family::E:
      throw std::logic_error("central factor has no block context");
  }
  return f;
}

BlockContext FusionRules::context(size_t s1, size_t s2) const {
  BlockContext c;
  c.x[0] = factor(s1);
  c.x[1] = factor(s2);
  c.nu = c.x[0].parity * c.x[1].parity;
  return c;
}

std::vector<int> FusionRules::set_G(int nu) const {
  std::vector<int> out;
  const int q = static_cast<int>(catalog().field().q);
  for (int u = 1; u <= q - 1; ++u)
    if (u % 2 == acute(nu)) out.push_back(u);
  return out;
}

std::vector<int> FusionRules::set_I(int nu) const {
  std::vector<int> out;
  const int q = static_cast<int>(catalog().field().q);
  for (int i = 1; i <= q + 1; ++i)
    if (i % 2 == acute(nu)) out.push_back(i);
  return out;
}

std::vector<int> FusionRules::set_H(const BlockContext& c, int k) const {
  const auto& F = catalog().field();
  const int q = static_cast<int>(F.q);
  const int64_t kc = F.dlog(F.sub(F.e_pow(k), F.e_pow(-k)));
  std::vector<int> out;
  for (int i = 1; i <= q - 1; ++i) {
    bool ok = true;
    for (int j = 1; j <= 2; ++j) {
      const auto& x = c.x[j - 1];
      if (x.family != Family::B) continue;
      ok = ok && mod_floor(i + kc - (j * k + acute(x.eps)), 2) == 0;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

std::vector<int> FusionRules::set_Hprime(const BlockContext& c, int /*mu*/, int eps) const {
  const auto& F = catalog().field();
  const int q = static_cast<int>(F.q);
  std::vector<int> out;
  for (int i = 1; i <= (q - 1) / 2; ++i) {
    FieldElement r = F.sub(F.e_pow(acute(eps)), F.e_pow(2 * i + acute(c.x[1].eps)));
    if (r.code == 0) continue;
    if (F.is_square(F.mul(r, F.e_pow(-acute(c.x[0].eps))))) out.push_back(i);
  }
  return out;
}

std::vector<int> FusionRules::set_K(const BlockContext& c, int l) const {
  const auto& F = catalog().field();
  const auto& X = F.ext;
  const int q = static_cast<int>(F.q), h = static_cast<int>(F.h);
  const FieldElement t = F.restrict(X.add(X.pow(F.f, l), X.pow(F.f, -l)));
  // 2 e~ (f^l - f^{-l}) lies in F_q.
  const ExtFieldElement den = X.mul(X.from_int(2), X.mul(F.e_tilde, X.sub(X.pow(F.f, l), X.pow(F.f, -l))));
  std::vector<int> out;
  for (int i = 1; i <= q + 1; ++i) {
    bool ok = true;
    for (int j = 1; j <= 2 && ok; ++j) {
      const auto& x = c.x[j - 1];
      if (x.family != Family::B) continue;
      const auto& other = c.x[2 - j];
      int idx = j == 1 ? 2 * h + 1 + l + i : i;
      FieldElement num = F.mul(F.sub(t, F.mul(F.from_int(x.mu), other.t)), F.e_pow(acute(x.eps)));
      ExtFieldElement s = X.add(X.pow(F.f_tilde, idx), X.pow(F.f_tilde, -idx));
      ExtFieldElement val = X.mul(X.mul(F.embed(num), X.inv(den)), X.mul(s, s));
      if (val.code == 0 || !F.in_base(val)) {
        ok = false;
        continue;
      }
      ok = F.is_square(F.restrict(val));
    }
    if (ok) out.push_back(i);
  }
  return out;
}

FusionVector FusionRules::split_block(const BlockContext& c, int k) const {
  const auto& F = catalog().field();
  const auto& cat = catalog();
  const int q = static_cast<int>(F.q);
  FieldElement t = F.add(F.e_pow(k), F.e_pow(-k));
  FusionVector out;
  auto add = [&](int u, int64_t m) {
    if (m == 0) return;
    int uu = static_cast<int>(mod_floor(u - 1, q - 1)) + 1;
    out[cat.index(SimpleLabel::split(k, uu))] += m;
  };
  const auto G = set_G(c.nu);
  if (delta_invariant(F, t, c.x[0].t, c.x[1].t).code != 0) {
    if (!c.has_b()) {
      for (int u : G) add(u, 2);
    } else if (!set_H(c, k).empty()) {
      for (int u : G) add(u, 1);
    }
    return out;
  }
  // e^k = a1^{s1} a2^{s2}; C factors cannot occur here.
  if (c.x[0].family == Family::C || c.x[1].family == Family::C) return out;
  if (c.x[0].family == Family::A && c.x[1].family == Family::A) {
    const int k1 = c.x[0].k, k2 = c.x[1].k;
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        if (mod_floor(s1 * k1 + s2 * k2 - k, q - 1) == 0) add(s1 * c.x[0].u + s2 * c.x[1].u, 1);
    for (int u : G) add(u, 4);
    return out;
  }
  if (c.x[0].family == Family::B && c.x[1].family == Family::B) return out;
  for (int u : G) add(u, 2);
  return out;
}

FusionVector FusionRules::unipotent_block(const BlockContext& c, int mu, int eps) const {
  const auto& F = catalog().field();
  const auto& cat = catalog();
  FusionVector out;
  const FieldElement m = F.from_int(mu);
  const FieldElement t1 = c.x[0].t, t2 = c.x[1].t;
  const FieldElement two = F.from_int(2);
  if (t1 != F.mul(m, t2)) {
    for (int j = 0; j < 2; ++j) {
      const auto& x = c.x[j];
      if (x.family != Family::B) continue;
      FieldElement r = F.sub(F.mul(m, c.x[1 - j].t), x.t);
      if (r.code == 0 || !F.is_square(F.mul(r, F.e_pow(acute(eps) + acute(x.eps))))) return out;
    }
    for (uint32_t v = 0; v < F.q; ++v) out[cat.index(SimpleLabel::unipotent(mu, eps, c.nu, FieldElement{v}))] += 1;
    return out;
  }
  if (t1 != two && t1 != F.neg(two)) {
    if (c.x[0].family != Family::A || c.x[1].family != Family::A) return out;
    for (uint32_t v = 0; v < F.q; ++v) out[cat.index(SimpleLabel::unipotent(mu, eps, c.nu, FieldElement{v}))] += 2;
    return out;
  }
  // both factors unipotent
  for (int i : set_Hprime(c, mu, eps)) {
    FieldElement r = F.sub(F.e_pow(acute(eps)), F.e_pow(2 * i + acute(c.x[1].eps)));
    int64_t ihat2 = F.dlog(r) - acute(c.x[0].eps);  // = 2 ihat
    FieldElement v = F.add(F.mul(F.e_pow(-ihat2), c.x[0].v), F.mul(F.e_pow(-2 * i), c.x[1].v));
    out[cat.index(SimpleLabel::unipotent(mu, eps, c.nu, v))] += 1;
  }
  return out;
}

FusionVector FusionRules::nonsplit_block(const BlockContext& c, int l) const {
  const auto& F = catalog().field();
  const auto& X = F.ext;
  const auto& cat = catalog();
  const int q = static_cast<int>(F.q);
  FusionVector out;
  FieldElement t = F.restrict(X.add(X.pow(F.f, l), X.pow(F.f, -l)));
  auto add = [&](int w, int64_t m) {
    int ww = static_cast<int>(mod_floor(w - 1, q + 1)) + 1;
    out[cat.index(SimpleLabel::nonsplit(l, ww))] += m;
  };
  if (delta_invariant(F, t, c.x[0].t, c.x[1].t).code != 0) {
    if (!c.has_b()) {
      for (int w : set_I(c.nu)) add(w, 2);
    } else if (c.x[0].family == Family::B && c.x[1].family == Family::B) {
      // two unipotent factors reach c^l iff (-1)^{l+1} = mu1 mu2 eps1 eps2
      const int sign = c.x[0].mu * c.x[1].mu * c.x[0].eps * c.x[1].eps;
      if ((l % 2 == 1) == (sign > 0))
        for (int w : set_I(c.nu)) add(w, 1);
    } else if (!set_K(c, l).empty()) {
      for (int w : set_I(c.nu)) add(w, 1);
    }
    return out;
  }
  if (c.x[0].family != Family::C || c.x[1].family != Family::C) return out;
  const int l1 = c.x[0].k, l2 = c.x[1].k;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      if (mod_floor(s1 * l1 + s2 * l2 - l, q + 1) == 0) add(s1 * c.x[0].u + s2 * c.x[1].u, 1);
  return out;
}

FusionVector FusionRules::central_block(const BlockContext& c, int mu) const {
  const auto& cat = catalog();
  const auto& F = cat.field();
  const int q = static_cast<int>(F.q), h = static_cast<int>(F.h);
  const auto& x1 = c.x[0];
  const auto& x2 = c.x[1];
  FusionVector out;
  // multiplicities n0 (1), m0 (V), n_sigma (W), m_phi (X), n', n'', m', m''
  int64_t n0 = 0, m0 = 0, np = 0, npp = 0, mp = 0, mpp = 0;
  std::vector<int64_t> ns(2 * h, 0), ms(2 * h + 1, 0);
  auto even = [](int x) { return x % 2 == 0 ? 1 : 0; };
  auto delta = [](int a, int b) { return a == b ? 1 : 0; };

  if (x1.family == Family::A && x2.family == Family::A) {
    if (x2.k != (mu > 0 ? x1.k : 2 * h - x1.k)) return out;
    int d = static_cast<int>(mod_floor(x1.u - mu * x2.u, q - 1));
    int ad = std::min(d, q - 1 - d);
    if (d % 2 == 0) {
      np = npp = 1 + delta(ad, 2 * h);
      n0 = delta(d, 0);
      m0 = 2 + delta(d, 0);
      for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = 2 * even(s) + delta(ad, s);
      for (int p = 1; p <= 2 * h; ++p) ms[p] = 2 * even(p);
    } else {
      mp = mpp = 1;
      for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = 2 * (1 - even(s)) + delta(ad, s);
      for (int p = 1; p <= 2 * h; ++p) ms[p] = 2 * (1 - even(p));
    }
  } else if (x1.family == Family::B && x2.family == Family::B) {
    if (x1.eps != x2.eps || x1.mu * x2.mu != mu) return out;
    const bool same_nu = x1.nu == x2.nu;
    if (x1.v == x2.v) {
      if (same_nu) {
        n0 = m0 = np = npp = 1;
        for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = 2 * even(s);
      } else {
        for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = 2 * (1 - even(s));
      }
    } else {
      // g_+ = sum over nonzero squares s of zeta_p^{tr(s (v1 - v2))}
      Cyclo gp;
      for (int k = 1; k <= 2 * h; ++k)
        gp += Cyclo::root_of_unity(F.p, F.trace_to_prime(F.mul(F.e_pow(2 * k), F.sub(x1.v, x2.v))));
      const Cyclo sp1 = cat.table().s_plus() - Cyclo(1), sm1 = cat.table().s_minus() - Cyclo(1);
      int first;
      if (gp == sp1) first = 1;
      else if (gp == sm1) first = 0;
      else throw std::logic_error("Gauss period matches neither s_+ - 1 nor s_- - 1");
      if (same_nu) {
        m0 = 1;
        for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = even(s);
        for (int p = 1; p <= 2 * h; ++p) ms[p] = even(p);
        np = first;
        npp = 1 - first;
      } else {
        for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = 1 - even(s);
        for (int p = 1; p <= 2 * h; ++p) ms[p] = 1 - even(p);
        mp = first;
        mpp = 1 - first;
      }
    }
  } else if (x1.family == Family::C && x2.family == Family::C) {
    if (x2.k != (mu > 0 ? x1.k : 2 * h + 1 - x1.k)) return out;
    int d = static_cast<int>(mod_floor(x1.u - mu * x2.u, q + 1));
    int ad = std::min(d, q + 1 - d);
    if (d % 2 == 0) {
      np = npp = 1;
      n0 = delta(d, 0);
      m0 = 2 - delta(d, 0);
      for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = 2 * even(s);
      for (int p = 1; p <= 2 * h; ++p) ms[p] = 2 * even(p) - delta(ad, p);
    } else {
      mp = mpp = 1 - delta(ad, 2 * h + 1);
      for (int s = 1; s <= 2 * h - 1; ++s) ns[s] = 2 * (1 - even(s));
      for (int p = 1; p <= 2 * h; ++p) ms[p] = 2 * (1 - even(p)) - delta(ad, p);
    }
  } else {
    return out;
  }
  auto put = [&](Irrep r, int64_t m) {
    if (m < 0) throw std::logic_error("negative closed-form multiplicity");
    if (m > 0) out[cat.index(SimpleLabel::central(mu, r))] = m;
  };
  put({IrrepKind::One, 0}, n0);
  put({IrrepKind::V, 0}, m0);
  for (int s = 1; s <= 2 * h - 1; ++s) put({IrrepKind::W, s}, ns[s]);
  for (int p = 1; p <= 2 * h; ++p) put({IrrepKind::X, p}, ms[p]);
  put({IrrepKind::Wp, 0}, np);
  put({IrrepKind::Wpp, 0}, npp);
  put({IrrepKind::Xp, 0}, mp);
  put({IrrepKind::Xpp, 0}, mpp);
  return out;
}

FusionVector FusionRules::fuse_block(size_t s1, size_t s2, size_t cls) const {
  if (!closed_form(s1, s2)) {
    if (!oracle_fallback_) throw UnsupportedCase("central-support factor requires the character oracle");
    return engine_->oracle_fuse_block(s1, s2, cls);
  }
  BlockContext c = context(s1, s2);
  const ClassLabel& cl = catalog().group().classes()[cls];
  switch (cl.kind) {
    case ClassKind::A: return split_block(c, cl.k);
    case ClassKind::B: return unipotent_block(c, cl.mu, cl.eps);
    case ClassKind::C: return nonsplit_block(c, cl.k);
    case ClassKind::Central: return central_block(c, cl.mu);
  }
  throw std::logic_error("bad class kind");
}

FusionVector FusionRules::fuse(size_t s1, size_t s2) const {
  if (!closed_form(s1, s2)) {
    if (!oracle_fallback_) throw UnsupportedCase("central-support factor requires the character oracle");
    return engine_->oracle_fuse(s1, s2);
  }
  FusionVector out;
  for (size_t ci = 0; ci < catalog().group().classes().size(); ++ci)
    for (auto [w, m] : fuse_block(s1, s2, ci)) out[w] += m;
  return out;
}

FusionRules::Report FusionRules::compare(const std::vector<std::pair<size_t, size_t>>& pairs,
                                         unsigned threads) const {
  const size_t ncls = catalog().group().classes().size();
  std::vector<std::vector<Mismatch>> found(pairs.size());
  std::vector<char> delegated(pairs.size(), 0);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < pairs.size(); i = next++) {
      auto [a, b] = pairs[i];
      if (!closed_form(a, b)) {
        delegated[i] = 1;
        continue;
      }
      for (size_t ci = 0; ci < ncls; ++ci) {
        FusionVector mine = fuse_block(a, b, ci);
        FusionVector oracle = engine_->oracle_fuse_block(a, b, ci);
        std::erase_if(mine, [](const auto& kv) { return kv.second == 0; });
        if (mine != oracle) found[i].push_back({a, b, ci, mine, oracle});
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  Report r;
  r.pairs = pairs.size();
  for (size_t i = 0; i < pairs.size(); ++i) {
    r.delegated += delegated[i];
    for (auto& m : found[i]) r.mismatches.push_back(std::move(m));
  }
  return r;
}

}  // namespace mtc
