#include "mtc/braid.hpp"

#include <algorithm>

namespace mtc {

namespace {

int acute(int s) { return s > 0 ? 0 : 1; }
int64_t trJ(int64_t n) { return mod_floor(n, 2) == 0 ? 2 : 0; }
Cyclo zeta(int64_t n, int64_t k) { return Cyclo::root_of_unity(n, k); }
Cyclo sgn(int s) { return Cyclo(s > 0 ? 1 : -1); }

}  // namespace

int64_t rho_exponent(const Catalog& cat, size_t simple, const GroupElement& h) {
  const auto& l = cat.simples()[simple].label;
  const auto& F = cat.field();
  const int64_t L = cat.conductor(), q = F.q;
  switch (l.family) {
    case Family::A:
      return mod_floor(F.dlog(h.a) * l.u * (L / (q - 1)), L);
    case Family::B: {
      bool neg = h.a != F.base.one();
      FieldElement y = neg ? F.neg(h.b) : h.b;
      int64_t e = static_cast<int64_t>(F.trace_to_prime(F.mul(l.v, y))) * (L / F.p);
      if (neg && l.nu < 0) e += L / 2;
      return mod_floor(e, L);
    }
    case Family::C:
      return mod_floor(cat.c_exponent(h) * l.u * (L / (q + 1)), L);
    case Family::E:
      break;
  }
  throw std::invalid_argument("central support has no one-dimensional rho");
}

ExplicitModule::ExplicitModule(std::shared_ptr<const Catalog> cat, size_t simple)
    : cat_(std::move(cat)), simple_(simple), L_(cat_->conductor()) {
  const auto& d = cat_->simples()[simple];
  if (d.label.family == Family::E) throw std::invalid_argument("no explicit model for central support");
  const auto& G = cat_->group();
  const auto& T = G.tables();
  basis_ = T.members[d.support_idx];
  line_of_.assign(T.elements.size(), -1);
  for (size_t i = 0; i < basis_.size(); ++i) line_of_[basis_[i]] = static_cast<int32_t>(i);
  std::vector<GroupElement> w(basis_.size()), winv(basis_.size());
  for (size_t i = 0; i < basis_.size(); ++i) {
    w[i] = T.witness[basis_[i]];
    winv[i] = G.inv(w[i]);
  }
  const size_t n = basis_.size();
  table_.resize(T.elements.size() * n);
  for (size_t g = 0; g < T.elements.size(); ++g) {
    const GroupElement& ge = T.elements[g];
    for (size_t i = 0; i < n; ++i) {
      GroupElement y = G.conj_by(ge, T.elements[basis_[i]]);
      int32_t j = line_of_[G.index_of(y)];
      if (j < 0) throw std::logic_error("conjugate left the support");
      GroupElement b = G.mul(winv[j], G.mul(ge, w[i]));
      table_[g * n + i] = {static_cast<uint32_t>(j), static_cast<int32_t>(rho_exponent(*cat_, simple_, b))};
    }
  }
}

Cyclo ExplicitModule::trace_on_line(uint32_t x, uint32_t h) const {
  int32_t i = line_of_[x];
  if (i < 0) return Cyclo();
  Image im = act(h, static_cast<size_t>(i));
  if (im.line != static_cast<uint32_t>(i)) return Cyclo();
  return zeta(L_, im.exp);
}

BraidEngine::BraidEngine(std::shared_ptr<const FusionRules> fusion) : fusion_(std::move(fusion)) {}

std::shared_ptr<const ExplicitModule> BraidEngine::module(size_t simple) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = modules_.find(simple);
    if (it != modules_.end()) return it->second;
  }
  auto cat = fusion_->engine().catalog_ptr();
  auto m = std::make_shared<const ExplicitModule>(cat, simple);
  std::lock_guard<std::mutex> lock(mu_);
  return modules_.emplace(simple, m).first->second;
}

namespace {

// Monomial operator on the fiber: line f goes to next[f] with phase zeta_L^exp[f].
struct Monomial {
  std::vector<int32_t> next;
  std::vector<int64_t> exp;
};

}  // namespace

BraidBlockReport BraidEngine::block_report(size_t s1, size_t s2, size_t cls) const {
  const auto& cat = catalog();
  const auto& G = cat.group();
  const auto& T = G.tables();
  const int64_t L = cat.conductor();
  auto m1 = module(s1), m2 = module(s2);
  const ClassLabel& cl = G.classes()[cls];
  const GroupElement z = G.rep(cl);

  BraidBlockReport rep;
  rep.s1 = s1;
  rep.s2 = s2;
  rep.cls = cls;
  rep.grading_ok = true;

  // fiber over z: lines (i, j) with x_i y_j = z, indexed through i
  std::vector<int32_t> fib_of_i(m1->dim(), -1);
  std::vector<std::pair<uint32_t, uint32_t>> fiber;
  for (size_t i = 0; i < m1->dim(); ++i) {
    GroupElement y = G.mul(G.inv(T.elements[m1->degree(i)]), z);
    int32_t j = m2->line_of(G.index_of(y));
    if (j < 0) continue;
    fib_of_i[i] = static_cast<int32_t>(fiber.size());
    fiber.emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
  }
  const size_t n = fiber.size();
  rep.fiber_dim = n;
  FusionVector fused = fusion_->fuse_block(s1, s2, cls);
  std::erase_if(fused, [](const auto& kv) { return kv.second == 0; });
  if (n == 0) {
    if (!fused.empty()) throw std::logic_error("empty fiber for a present block");
    throw BlockAbsent("block " + cl.str() + " does not occur");
  }

  auto locate = [&](uint32_t i, uint32_t j) -> int32_t {
    int32_t f = fib_of_i[i];
    if (f < 0 || fiber[f].second != j) {
      rep.grading_ok = false;
      return -1;
    }
    return f;
  };

  // double braiding u (x) v -> L_x v (x) u -> L_{x y x^-1} u (x) L_x v
  Monomial M{std::vector<int32_t>(n), std::vector<int64_t>(n)};
  for (size_t f = 0; f < n; ++f) {
    auto [i, j] = fiber[f];
    auto a = m2->act(m1->degree(i), j);
    auto b = m1->act(m2->degree(a.line), i);
    M.next[f] = locate(b.line, a.line);
    M.exp[f] = a.exp + b.exp;
  }
  const bool same = s1 == s2;
  Monomial R;
  if (same) {
    R.next.resize(n);
    R.exp.resize(n);
    for (size_t f = 0; f < n; ++f) {
      auto [i, j] = fiber[f];
      auto a = m2->act(m1->degree(i), j);
      R.next[f] = locate(a.line, i);
      R.exp[f] = a.exp;
    }
  }
  if (!rep.grading_ok) return rep;

  // Fixed-line contributions of L_h, M L_h, R L_h; grouped by class for central z.
  const bool central = cl.kind == ClassKind::Central;
  std::vector<uint32_t> cen;
  if (central) {
    cen.resize(T.elements.size());
    for (uint32_t g = 0; g < cen.size(); ++g) cen[g] = g;
  } else {
    for (const auto& g : G.centralizer_elements(cl)) cen.push_back(G.index_of(g));
  }
  const size_t nops = same ? 3 : 2;
  const auto& targets = cat.by_support(cls);
  const size_t ncls = G.classes().size();
  // counts[target or class][op][exponent]
  const size_t nbins = central ? ncls : targets.size();
  std::vector<std::vector<std::vector<int64_t>>> counts(
      nbins, std::vector<std::vector<int64_t>>(nops, std::vector<int64_t>(L, 0)));
  std::vector<int64_t> contrib[3];
  std::vector<int64_t> rexp(targets.size());
  for (uint32_t h : cen) {
    for (auto& c : contrib) c.clear();
    for (size_t f = 0; f < n; ++f) {
      auto [i, j] = fiber[f];
      auto ai = m1->act(h, i), aj = m2->act(h, j);
      int32_t g = locate(ai.line, aj.line);
      if (g < 0) return rep;
      int64_t p = ai.exp + aj.exp;
      if (static_cast<size_t>(g) == f) contrib[0].push_back(p);
      if (static_cast<size_t>(M.next[g]) == f) contrib[1].push_back(p + M.exp[g]);
      if (same && static_cast<size_t>(R.next[g]) == f) contrib[2].push_back(p + R.exp[g]);
    }
    if (central) {
      size_t b = T.class_idx[h];
      for (size_t op = 0; op < nops; ++op)
        for (int64_t e : contrib[op]) counts[b][op][mod_floor(e, L)]++;
    } else {
      for (size_t w = 0; w < targets.size(); ++w) {
        int64_t r = rho_exponent(cat, targets[w], T.elements[h]);
        for (size_t op = 0; op < nops; ++op)
          for (int64_t e : contrib[op]) counts[w][op][mod_floor(e - r, L)]++;
      }
    }
  }
  auto to_cyclo = [&](const std::vector<int64_t>& cnt, const Rational& scale) {
    std::vector<Cyclo::Term> terms;
    for (int64_t e = 0; e < L; ++e)
      if (cnt[e] != 0) terms.emplace_back(e, Rational(cnt[e]) * scale);
    return Cyclo::from_terms(L, std::move(terms));
  };

  const auto& d1 = cat.simples()[s1];
  const auto& d2 = cat.simples()[s2];
  const int64_t e1 = rho_exponent(cat, s1, G.rep(d1.support)), e2 = rho_exponent(cat, s2, G.rep(d2.support));
  const int64_t order = static_cast<int64_t>(G.order());

  rep.balanced = true;
  bool all_pred = same;
  bool all_match = true;
  Cyclo block_trace, predicted_block;
  FusionVector found;
  for (size_t w = 0; w < targets.size(); ++w) {
    const size_t W = targets[w];
    const auto& dw = cat.simples()[W];
    Cyclo tr[3];
    int64_t pidim = 1;
    int64_t ew = 0;
    if (central) {
      size_t ir = cat.table().index(dw.label.irrep);
      pidim = cat.table().dim(ir);
      DenseCyclo acc[3] = {DenseCyclo(L, 8 * order), DenseCyclo(L, 8 * order), DenseCyclo(L, 8 * order)};
      for (size_t b = 0; b < ncls; ++b) {
        Cyclo chi = cat.table().value(ir, b).conj();
        for (size_t op = 0; op < nops; ++op) acc[op].add_product(chi, to_cyclo(counts[b][op], Rational(1)));
      }
      for (size_t op = 0; op < nops; ++op) tr[op] = acc[op].to_cyclo() * Rational(pidim, order);
      ew = dw.twist == Cyclo(1) ? 0 : L / 2;
    } else {
      for (size_t op = 0; op < nops; ++op)
        tr[op] = to_cyclo(counts[w][op], Rational(1, static_cast<int64_t>(cen.size())));
      ew = rho_exponent(cat, W, z);
    }
    const int64_t trp = tr[0].as_integer();
    if (trp == 0) continue;
    IsotypicPiece piece;
    piece.simple = W;
    if (trp % pidim != 0) throw std::logic_error("isotypic trace not a multiple of the dimension");
    piece.multiplicity = trp / pidim;
    found[W] = piece.multiplicity;
    piece.double_braid = tr[1] * Rational(1, trp);
    piece.expected_double = zeta(L, ew - e1 - e2);
    piece.scalar = piece.double_braid.abs_square() == Cyclo(1);
    rep.balanced = rep.balanced && piece.scalar && piece.double_braid == piece.expected_double;
    if (same) {
      Cyclo tau = tr[2] * Rational(1, pidim);
      piece.single_trace = tau;
      block_trace += tau * Rational(pidim);
      Cyclo root = zeta(2 * L, ew - e1 - e2);
      try {
        int64_t diff = (tau * root.conj()).as_integer();
        if ((piece.multiplicity + diff) % 2 == 0 && std::abs(diff) <= piece.multiplicity) {
          piece.single_root = root;
          piece.plus = (piece.multiplicity + diff) / 2;
          piece.minus = (piece.multiplicity - diff) / 2;
        }
      } catch (const NonInteger&) {
      }
      piece.predicted_trace = predicted_trace(s1, cls, W);
      if (piece.predicted_trace) {
        predicted_block += *piece.predicted_trace * Rational(pidim);
        all_match = all_match && *piece.predicted_trace == tau;
      } else {
        all_pred = false;
      }
    }
    rep.pieces.push_back(std::move(piece));
  }
  rep.multiplicities_match = found == fused;
  if (same) {
    rep.block_trace = block_trace;
    if (all_pred) {
      rep.predicted_block = predicted_block;
      rep.trace_match = all_match;
    }
  }
  return rep;
}

std::vector<BraidBlockReport> BraidEngine::pair_report(size_t s1, size_t s2) const {
  std::vector<BraidBlockReport> out;
  for (size_t ci = 0; ci < catalog().group().classes().size(); ++ci) {
    try {
      out.push_back(block_report(s1, s2, ci));
    } catch (const BlockAbsent&) {
    }
  }
  return out;
}

bool BraidEngine::naturality(size_t s1, size_t s2) const {
  const auto& G = catalog().group();
  const auto& F = G.field();
  const int64_t L = catalog().conductor();
  auto m1 = module(s1), m2 = module(s2);
  const uint32_t gens[] = {G.index_of(G.a(F.e)), G.index_of(G.b(F.base.one())), G.index_of(G.j())};
  for (uint32_t g : gens)
    for (size_t i = 0; i < m1->dim(); ++i)
      for (size_t j = 0; j < m2->dim(); ++j) {
        // R then L_g on X2 (x) X1
        auto r = m2->act(m1->degree(i), j);
        auto g2 = m2->act(g, r.line);
        auto g1 = m1->act(g, i);
        // L_g on X1 (x) X2 then R
        auto h1 = m1->act(g, i), h2 = m2->act(g, j);
        auto r2 = m2->act(m1->degree(h1.line), h2.line);
        if (g2.line != r2.line || g1.line != h1.line) return false;
        if (mod_floor(r.exp + g2.exp + g1.exp - (h1.exp + h2.exp + r2.exp), L) != 0) return false;
      }
  return true;
}

std::optional<Cyclo> BraidEngine::predicted_trace(size_t x, size_t cls, size_t wi) const {
  const auto& cat = catalog();
  const auto& F = cat.field();
  const auto& X = F.ext;
  const int64_t q = F.q, h = F.h;
  const auto& dx = cat.simples()[x];
  const auto& lx = dx.label;
  const auto& lw = cat.simples()[wi].label;
  const ClassLabel& cl = cat.group().classes()[cls];
  if (lx.family == Family::E) return std::nullopt;
  const BlockContext c = fusion_->context(x, x);
  const FieldElement t = c.x[0].t;
  const Cyclo theta_inv = dx.twist.conj();
  const bool xb = lx.family == Family::B;
  // The half-angle gauge elements have order 2(q-1) resp. 2(q+1) and their
  // top power is -e, which acts by the parity; the block formulas drop it.
  const Cyclo nu = sgn(dx.parity);

  switch (cl.kind) {
    case ClassKind::A: {
      const int64_t k = cl.k;
      FieldElement tk = F.add(F.e_pow(k), F.e_pow(-k));
      Cyclo base = nu * theta_inv * zeta(2 * (q - 1), (k + 2 * h) * lw.u);
      if (lw.u % 2 != 0) return Cyclo();  // outside G
      if (delta_invariant(F, tk, t, t).code != 0) return xb ? base : base * Rational(trJ(k));
      if (lx.family != Family::A) return std::nullopt;
      Cyclo out = base * Rational(2 * trJ(k));
      for (int eps : {1, -1})
        if (mod_floor(2 * eps * lx.k - k, q - 1) == 0 && mod_floor(2 * eps * lx.u - lw.u, q - 1) == 0)
          out += zeta(q - 1, lx.k * lx.u);  // eps1 eps2 = 1 here
      return out;
    }
    case ClassKind::B: {
      const int mu = cl.mu, eps = cl.eps;
      const FieldElement m = F.from_int(mu);
      const Cyclo pre = (mu < 0 && dx.parity < 0 ? Cyclo(-1) : Cyclo(1)) * theta_inv;
      const FieldElement two = F.from_int(2);
      if (t != F.mul(m, t)) {
        FieldElement arg = F.mul(F.mul(F.e_pow(acute(eps)), F.mul(t, lw.v)), F.inv(F.sub(t, F.mul(m, t))));
        return pre * zeta(F.p, F.trace_to_prime(arg));
      }
      if (t != two && t != F.neg(two)) {
        // For mu = - the factors share the diagonal sign psi, so R fixes psi
        // (identity instead of J); the prefactor is the same as above.
        if (mu > 0) return Cyclo();
        FieldElement ek = F.e_pow(lx.k);
        FieldElement cp = F.mul(F.mul(F.e_pow(acute(eps)), ek), F.inv(F.sub(ek, F.inv(ek))));
        return pre * zeta(F.p, F.trace_to_prime(F.mul(cp, lw.v))) * Rational(2);
      }
      Cyclo out;
      const int64_t e1 = acute(lx.eps);
      for (int i : fusion_->set_Hprime(c, mu, eps)) {
        FieldElement r = F.sub(F.e_pow(acute(eps)), F.e_pow(2 * i + e1));
        int64_t two_ihat = F.dlog(r) - e1;
        FieldElement vd = F.add(F.mul(F.e_pow(-two_ihat), lx.v), F.mul(F.e_pow(-2 * i), lx.v));
        if (mod_floor(two_ihat - 2 * i, q - 1) != 0 || vd != lw.v) continue;
        out += pre * zeta(F.p, F.trace_to_prime(F.mul(F.e_pow(acute(eps) - 2 * i), lx.v)));
      }
      return out;
    }
    case ClassKind::C: {
      const int64_t l = cl.k;
      FieldElement tl = F.restrict(X.add(X.pow(F.f, l), X.pow(F.f, -l)));
      if (lw.u % 2 != 0) return Cyclo();  // outside I
      Cyclo base = nu * theta_inv * zeta(2 * (q + 1), (l + 2 * h + 1) * lw.u);
      if (delta_invariant(F, tl, t, t).code != 0) return xb ? base : base * Rational(trJ(l + 1));
      if (lx.family != Family::C) return std::nullopt;
      return zeta(q + 1, lx.k * lx.u);
    }
    case ClassKind::Central:
      break;
  }

  // central blocks; mu-bar read as -mu
  const int mu = cl.mu, mubar = -mu;
  const Irrep& r = lw.irrep;
  const Cyclo mh = sgn(mubar > 0 || h % 2 == 0 ? 1 : -1);  // mubar^h
  // W_{2s} carries mubar^s
  auto ws = [&](int64_t param) { return sgn(mubar > 0 || (param / 2) % 2 == 0 ? 1 : -1) * Rational(2); };
  auto even = [](int64_t v) { return v % 2 == 0; };
  switch (lx.family) {
    case Family::A: {
      const int64_t d = mod_floor(lx.u - mu * lx.u, q - 1);
      const int64_t ad = std::min(d, q - 1 - d);
      // parity sign only over +e
      const Cyclo s = (mu > 0 ? nu : Cyclo(1)) * zeta(q - 1, mubar * lx.k * lx.u);
      if (d == 0) {
        switch (r.kind) {
          case IrrepKind::One: return s;
          case IrrepKind::V: return s * Rational(trJ(acute(mubar)) + 1);
          case IrrepKind::W: return even(r.param) ? s * ws(r.param) : Cyclo();
          case IrrepKind::X: return even(r.param) ? s * Rational(trJ(acute(mubar))) : Cyclo();
          case IrrepKind::Wp:
          case IrrepKind::Wpp: return s * mh;
          default: return Cyclo();
        }
      }
      if (ad == 2 * h) {
        switch (r.kind) {
          case IrrepKind::V: return s * Rational(trJ(acute(mubar)));
          case IrrepKind::W: return even(r.param) ? s * ws(r.param) : Cyclo();
          case IrrepKind::X: return even(r.param) ? s * Rational(trJ(acute(mubar))) : Cyclo();
          case IrrepKind::Wp:
          case IrrepKind::Wpp: return s * mh * Rational(2);
          default: return Cyclo();
        }
      }
      FusionVector v = fusion_->fuse_block(x, x, cls);
      auto it = v.find(wi);
      return s * Rational(it == v.end() ? 0 : it->second);
    }
    case Family::B: {
      const Cyclo s = sgn(lx.mu > 0 ? lx.nu : 1) *
                      zeta(F.p, -static_cast<int64_t>(F.trace_to_prime(F.mul(F.e_pow(acute(lx.eps)), lx.v))));
      const Cyclo sh = sgn(h % 2 == 0 ? 1 : -1);
      switch (r.kind) {
        case IrrepKind::One:
        case IrrepKind::V: return s;
        case IrrepKind::W: return even(r.param) ? s * ws(r.param) : Cyclo();
        case IrrepKind::Wp:
        case IrrepKind::Wpp: return s * sh;
        default: return Cyclo();
      }
    }
    case Family::C: {
      const Cyclo s = nu * zeta(q + 1, mubar * lx.k * lx.u);
      switch (r.kind) {
        case IrrepKind::One:
        case IrrepKind::V: return s;
        case IrrepKind::W: return even(r.param) ? s * ws(r.param) : Cyclo();
        case IrrepKind::X: return even(r.param) ? s * Rational(trJ(acute(mubar))) : Cyclo();
        case IrrepKind::Wp:
        case IrrepKind::Wpp: return s * mh;
        default: return Cyclo();
      }
    }
    default:
      return std::nullopt;
  }
}

}  // namespace mtc
