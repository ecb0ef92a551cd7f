#include "mtc/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "mtc/braid.hpp"
#include "mtc/dw.hpp"
#include "mtc/modular.hpp"

namespace mtc {

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"fields", "chars", "fusion", "braid", "modular", "dw"};
  return s;
}

namespace {

struct Context {
  VerifyConfig cfg;
  std::shared_ptr<const FieldParams> F;
  std::shared_ptr<Catalog> cat;
  std::shared_ptr<CharacterEngine> chars;
  std::shared_ptr<FusionRules> fusion;
  std::shared_ptr<BraidEngine> braid;
  std::unique_ptr<ModularData> md;
  VerifyReport* out;
  std::string suite;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    out->checks.push_back({suite, name, pass, detail});
  }
  const ModularData& modular() {
    if (!md) md = std::make_unique<ModularData>(build_modular(*chars, cfg.threads));
    return *md;
  }
  bool exhaustive() const { return cat->size() <= cfg.exhaustive_limit; }
  // Seeded sample of ordered pairs from the given index list; each suite
  // draws from its own stream so suites can run independently.
  std::vector<std::pair<size_t, size_t>> pairs(const std::vector<size_t>& idx, size_t samples, uint64_t stream) const {
    std::vector<std::pair<size_t, size_t>> out;
    if (exhaustive()) {
      for (size_t a : idx)
        for (size_t b : idx) out.emplace_back(a, b);
      return out;
    }
    std::mt19937_64 rng(cfg.seed * 1000003u + stream);
    for (size_t i = 0; i < samples; ++i) out.emplace_back(idx[rng() % idx.size()], idx[rng() % idx.size()]);
    return out;
  }
  std::string scope(size_t n) const {
    return (exhaustive() ? "all " : "sampled ") + std::to_string(n) + " pairs";
  }
};

std::vector<size_t> all_simples(const Catalog& cat) {
  std::vector<size_t> v(cat.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

std::vector<size_t> noncentral(const Catalog& cat) {
  std::vector<size_t> v;
  for (size_t i = 0; i < cat.size(); ++i)
    if (cat.simples()[i].label.family != Family::E) v.push_back(i);
  return v;
}

// ---------------------------------------------------------------- fields

void suite_fields(Context& c) {
  const FieldParams& F = *c.F;
  c.add("q = p^n = 4h + 1", F.q == static_cast<uint32_t>(c.cfg.q) && F.q == 4 * F.h + 1,
        "p=" + std::to_string(F.p) + " n=" + std::to_string(F.n) + " h=" + std::to_string(F.h));
  c.add("e generates F_q^x", F.base.order(F.e) == static_cast<int64_t>(F.q - 1));
  const int64_t q2 = static_cast<int64_t>(F.q) * F.q;
  c.add("generator of F_{q^2}^x", F.ext.order(F.check_gen) == q2 - 1);
  c.add("e_tilde^2 = e", F.ext.mul(F.e_tilde, F.e_tilde) == F.embed(F.e));
  c.add("f has order q + 1", F.ext.order(F.f) == static_cast<int64_t>(F.q + 1));
  c.add("f_tilde^2 = f", F.ext.mul(F.f_tilde, F.f_tilde) == F.f);

  bool dlog_ok = true;
  for (int64_t k = 0; k + 1 < static_cast<int64_t>(F.q); ++k) dlog_ok &= F.dlog(F.e_pow(k)) == k;
  c.add("dlog inverts e^k", dlog_ok);

  std::mt19937_64 rng(c.cfg.seed * 1000003u + 1);
  auto rb = [&] { return FieldElement{static_cast<uint32_t>(rng() % F.q)}; };
  auto rx = [&] { return ExtFieldElement{static_cast<uint32_t>(rng() % q2)}; };
  bool axioms = true, embed_ok = true, trace_ok = true, frob_ok = true;
  for (int i = 0; i < 300; ++i) {
    FieldElement x = rb(), y = rb(), z = rb();
    axioms &= F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z));
    axioms &= F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z));
    if (x.code != 0) axioms &= F.mul(x, F.inv(x)) == F.base.one();
    embed_ok &= F.embed(F.mul(x, y)) == F.ext.mul(F.embed(x), F.embed(y));
    embed_ok &= F.embed(F.add(x, y)) == F.ext.add(F.embed(x), F.embed(y));
    trace_ok &= (F.trace_to_prime(x) + F.trace_to_prime(y)) % F.p == F.trace_to_prime(F.add(x, y));
    ExtFieldElement u = rx(), v = rx();
    frob_ok &= F.conj(u) == F.ext.pow(u, F.q);
    frob_ok &= F.ext.mul(u, F.conj(u)) == F.embed(F.norm(u));
    frob_ok &= F.conj(F.ext.mul(u, v)) == F.ext.mul(F.conj(u), F.conj(v));
  }
  c.add("field axioms (300 seeded samples)", axioms);
  c.add("F_q embeds as a subfield", embed_ok);
  c.add("trace is additive", trace_ok);
  c.add("conjugation is x^q and the norm lands in F_q", frob_ok);
}

// ---------------------------------------------------------------- chars

// Restriction multiplicities of the decomposition tables for <a>, {b(y)}, <c>.
int64_t restrict_a(const Irrep& r, int64_t u, int64_t q) {
  const int64_t n = q - 1, h = (q - 1) / 4;
  u = mod_floor(u, n);
  bool even = u % 2 == 0;
  switch (r.kind) {
    case IrrepKind::One: return u == 0;
    case IrrepKind::V: return u == 0 ? 3 : (even ? 2 : 0);
    case IrrepKind::W:
      return (u == mod_floor(r.param, n)) + (u == mod_floor(-r.param, n)) + 2 * ((u - r.param) % 2 == 0);
    case IrrepKind::X: return 2 * ((u - r.param) % 2 == 0);
    case IrrepKind::Wp:
    case IrrepKind::Wpp: return (u == 2 * h) + even;
    case IrrepKind::Xp:
    case IrrepKind::Xpp: return !even;
  }
  return -1;
}

int64_t restrict_b(const Irrep& r, const FieldParams& F, FieldElement v) {
  bool zero = v.code == 0;
  switch (r.kind) {
    case IrrepKind::One: return zero;
    case IrrepKind::V: return 1;
    case IrrepKind::W: return zero ? 2 : 1;
    case IrrepKind::X: return zero ? 0 : 1;
    case IrrepKind::Wp: return zero || F.is_square(v);
    case IrrepKind::Wpp: return zero || !F.is_square(v);
    case IrrepKind::Xp: return !zero && F.is_square(v);
    case IrrepKind::Xpp: return !zero && !F.is_square(v);
  }
  return -1;
}

int64_t restrict_c(const Irrep& r, int64_t w, int64_t q) {
  const int64_t n = q + 1, h = (q - 1) / 4;
  w = mod_floor(w, n);
  bool even = w % 2 == 0;
  switch (r.kind) {
    case IrrepKind::One: return w == 0;
    case IrrepKind::V: return w == 0 ? 1 : (even ? 2 : 0);
    case IrrepKind::W: return 2 * ((w - r.param) % 2 == 0);
    case IrrepKind::X: {
      bool pm = w == mod_floor(r.param, n) || w == mod_floor(-r.param, n);
      return pm ? 1 : 2 * ((w - r.param) % 2 == 0);
    }
    case IrrepKind::Wp:
    case IrrepKind::Wpp: return even;
    case IrrepKind::Xp:
    case IrrepKind::Xpp: return !even && w != 2 * h + 1;
  }
  return -1;
}

// Multiplicity of the character psi in the restriction of chi, chi given on
// the cyclic list of subgroup elements.
int64_t project(const std::vector<Cyclo>& chi, const std::function<Cyclo(size_t)>& psi_conj, int64_t order) {
  Cyclo m;
  for (size_t j = 0; j < chi.size(); ++j) m += chi[j] * psi_conj(j);
  try {
    return (m * Rational(1, order)).as_integer();
  } catch (const NonInteger&) {
    return -1;
  }
}

void suite_chars(Context& c) {
  const Catalog& cat = *c.cat;
  const SL2& G = cat.group();
  const FieldParams& F = *c.F;
  const int64_t q = F.q, h = F.h;
  const int64_t order = static_cast<int64_t>(G.order());
  const int64_t want_size = 2 * (q + 4) + (2 * h - 1) * (q - 1) + 8 * q + 2 * h * (q + 1);
  c.add("catalogue size", static_cast<int64_t>(cat.size()) == want_size,
        std::to_string(cat.size()) + " simples, expected " + std::to_string(want_size));
  Rational dsum(0);
  for (const auto& s : cat.simples()) dsum += Rational(s.qdim) * Rational(s.qdim);
  c.add("sum of d^2 = |G|^2", dsum == Rational(order) * Rational(order),
        std::to_string(dsum.num()) + " vs " + std::to_string(order * order));
  c.add("commuting-pair orbits = simples", c.chars->pairs().orbits().size() == cat.size());

  const auto& t = cat.table();
  const auto& cls = G.classes();
  bool rows = true, cols = true;
  int64_t deg = 0;
  for (size_t i = 0; i < t.irreps().size(); ++i) {
    deg += t.dim(i) * t.dim(i);
    for (size_t j = i; j < t.irreps().size(); ++j) {
      Cyclo s;
      for (size_t k = 0; k < cls.size(); ++k)
        s += t.value(i, k) * t.value(j, k).conj() * Rational(static_cast<int64_t>(G.class_size(cls[k])), order);
      rows &= s == Cyclo(i == j ? 1 : 0);
    }
  }
  for (size_t k = 0; k < cls.size(); ++k)
    for (size_t l = k; l < cls.size(); ++l) {
      Cyclo s;
      for (size_t i = 0; i < t.irreps().size(); ++i) s += t.value(i, k) * t.value(i, l).conj();
      cols &= s == Cyclo(k == l ? order / static_cast<int64_t>(G.class_size(cls[k])) : 0);
    }
  c.add("SL(2,q) row orthogonality", rows);
  c.add("SL(2,q) column orthogonality", cols);
  c.add("sum of squared degrees = |G|", deg == order);

  auto at = [&](size_t i, const GroupElement& g) { return t.value(i, G.class_index(G.class_of(g).label)); };
  size_t bad_a = 0, bad_b = 0, bad_c = 0;
  for (size_t i = 0; i < t.irreps().size(); ++i) {
    const Irrep& r = t.irreps()[i];
    std::vector<Cyclo> va, vb, vc;
    for (int64_t j = 0; j < q - 1; ++j) va.push_back(at(i, G.a(F.e_pow(j))));
    for (uint32_t y = 0; y < F.q; ++y) vb.push_back(at(i, G.b(FieldElement{y})));
    for (int64_t j = 0; j <= q; ++j) vc.push_back(at(i, G.pow(G.c(), j)));
    for (int64_t u = 0; u < q - 1; ++u)
      bad_a += project(va, [&](size_t j) { return Cyclo::root_of_unity(q - 1, -static_cast<int64_t>(j) * u); },
                       q - 1) != restrict_a(r, u, q);
    for (uint32_t v = 0; v < F.q; ++v)
      bad_b += project(vb,
                       [&](size_t y) {
                         return Cyclo::root_of_unity(
                             F.p, -static_cast<int64_t>(F.trace_to_prime(F.mul(FieldElement{v}, FieldElement{static_cast<uint32_t>(y)}))));
                       },
                       q) != restrict_b(r, F, FieldElement{v});
    for (int64_t w = 0; w <= q; ++w)
      bad_c += project(vc, [&](size_t j) { return Cyclo::root_of_unity(q + 1, -static_cast<int64_t>(j) * w); },
                       q + 1) != restrict_c(r, w, q);
  }
  c.add("restriction to <a>", bad_a == 0, std::to_string(bad_a) + " mismatches");
  c.add("restriction to {b(y)}", bad_b == 0, std::to_string(bad_b) + " mismatches");
  c.add("restriction to <c>", bad_c == 0, std::to_string(bad_c) + " mismatches");

  // Characters with different supports vanish on each other's orbits, so
  // only same-support pairs need the sum.
  std::vector<CharacterEngine::OrbitFunction> f;
  for (size_t s = 0; s < cat.size(); ++s) f.push_back(c.chars->character(s));
  size_t bad = 0, pairs = 0, dual_bad = 0;
  for (size_t i = 0; i < cat.size(); ++i) {
    for (size_t j : cat.by_support(cat.simples()[i].support_idx)) {
      if (j < i) continue;
      ++pairs;
      bad += !(c.chars->inner(f[i], f[j]) == Cyclo(i == j ? 1 : 0));
    }
    dual_bad += c.chars->dual(i) != i;
  }
  c.add("D(G) character orthonormality", bad == 0,
        std::to_string(pairs) + " same-support pairs, " + std::to_string(bad) + " failures");
  c.add("all simples self-dual", dual_bad == 0);
}

// ---------------------------------------------------------------- fusion

void suite_fusion(Context& c) {
  const Catalog& cat = *c.cat;
  auto pairs = c.pairs(all_simples(cat), c.cfg.fusion_samples, 3);
  FusionRules::Report r;
  bool unsupported = false;
  try {
    r = c.fusion->compare(pairs, c.cfg.threads);
  } catch (const UnsupportedCase&) {
    unsupported = true;
  }
  c.add("closed forms = oracle", !unsupported && r.mismatches.empty(),
        c.scope(pairs.size()) + ", " + std::to_string(r.delegated) + " delegated (central factor), " +
            std::to_string(r.mismatches.size()) + " mismatching blocks");

  // central blocks of the two spot cases
  const size_t plus = cat.group().class_index(ClassLabel::central(1));
  auto lbl = [&](const FusionVector& v) {
    std::string s;
    for (auto [i, m] : v)
      if (m) s += (s.empty() ? "" : " ") + cat.simples()[i].label.irrep.str() + ":" + std::to_string(m);
    return s;
  };
  if (c.cfg.q == 5) {
    size_t a = cat.index(SimpleLabel::split(1, 2));
    FusionVector got = c.fusion->fuse_block(a, a, plus);
    FusionVector want;
    auto put = [&](Irrep r, int64_t m) { want[cat.index(SimpleLabel::central(1, r))] = m; };
    put({IrrepKind::One, 0}, 1);
    put({IrrepKind::V, 0}, 3);
    put({IrrepKind::X, 2}, 2);
    put({IrrepKind::Wp, 0}, 1);
    put({IrrepKind::Wpp, 0}, 1);
    std::erase_if(got, [](const auto& kv) { return kv.second == 0; });
    FusionVector oracle = c.chars->oracle_fuse_block(a, a, plus);
    std::erase_if(oracle, [](const auto& kv) { return kv.second == 0; });
    c.add("A(1,2) x A(1,2) over +e, d = 0", got == want && oracle == want, lbl(got));
  }
  // nu = - non-split pair with |d| = 2h + 1: only odd-index W and X
  const int64_t h = c.F->h;
  size_t x1 = cat.index(SimpleLabel::nonsplit(1, 1));
  size_t x2 = cat.index(SimpleLabel::nonsplit(1, static_cast<int>(1 - (2 * h + 1) + (c.F->q + 1))));
  FusionVector got = c.fusion->fuse_block(x1, x2, plus);
  FusionVector oracle = c.chars->oracle_fuse_block(x1, x2, plus);
  std::erase_if(got, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(oracle, [](const auto& kv) { return kv.second == 0; });
  bool odd_only = !got.empty();
  for (auto [i, m] : got) {
    const Irrep& r = cat.simples()[i].label.irrep;
    odd_only &= (r.kind == IrrepKind::W || r.kind == IrrepKind::X) && r.param % 2 == 1;
  }
  c.add("C(1,1) x " + cat.format(cat.simples()[x2].label) + " over +e, |d| = 2h+1", got == oracle && odd_only,
        lbl(got));
}

// ---------------------------------------------------------------- braid

void suite_braid(Context& c) {
  const Catalog& cat = *c.cat;
  auto nc = noncentral(cat);
  auto pairs = c.pairs(nc, c.cfg.braid_samples, 4);
  size_t blocks = 0, unbalanced = 0, badmult = 0, badgrade = 0;
  for (auto [a, b] : pairs)
    for (const auto& r : c.braid->pair_report(a, b)) {
      ++blocks;
      badgrade += !r.grading_ok;
      unbalanced += !r.balanced;
      badmult += !r.multiplicities_match;
    }
  c.add("R grading-correct", badgrade == 0, std::to_string(blocks) + " blocks");
  c.add("double braiding = theta_W / (theta_1 theta_2)", unbalanced == 0,
        c.scope(pairs.size()) + ", " + std::to_string(blocks) + " blocks, " + std::to_string(unbalanced) + " failures");
  c.add("isotypic multiplicities = fusion rules", badmult == 0);

  std::vector<size_t> xs = nc;
  if (!c.exhaustive()) {
    std::mt19937_64 rng(c.cfg.seed * 1000003u + 5);
    std::shuffle(xs.begin(), xs.end(), rng);
    xs.resize(std::min<size_t>(xs.size(), 40));
    std::sort(xs.begin(), xs.end());
  }
  size_t tblocks = 0, tbad = 0, nopred = 0;
  for (size_t x : xs)
    for (const auto& r : c.braid->pair_report(x, x)) {
      ++tblocks;
      if (!r.trace_match) {
        ++nopred;
        continue;
      }
      tbad += !*r.trace_match;
    }
  c.add("single-braiding traces = block formulas", tbad == 0 && nopred == 0,
        std::to_string(xs.size()) + " diagonal pairs, " + std::to_string(tblocks) + " blocks, " +
            std::to_string(tbad) + " mismatches");

  size_t nat_bad = 0, nat = 0;
  for (size_t i = 0; i < nc.size(); i += std::max<size_t>(1, nc.size() / 6))
    for (size_t j = nc.size() / 3; j < nc.size(); j += std::max<size_t>(1, nc.size() / 4)) {
      ++nat;
      nat_bad += !c.braid->naturality(nc[i], nc[j]);
    }
  c.add("naturality under a, b, j", nat_bad == 0, std::to_string(nat) + " pairs");
}

// ---------------------------------------------------------------- modular

void suite_modular(Context& c) {
  const ModularData& md = c.modular();
  auto m = check_modular(md, *c.chars, c.cfg.threads);
  c.add("S symmetric", m.symmetric);
  c.add("unit row S_1V = d_V / |G|", m.unit_row);
  c.add("sum_V S_1V^2 = 1", m.global_dimension);
  c.add("S unitary", m.unitary);
  c.add("S^2 = charge conjugation", m.s_squared);
  c.add("charge conjugation = identity", m.charge_identity);
  c.add("(ST)^3 = lambda S^2", m.st_cubed, "lambda = " + (m.lambda ? m.lambda->canonical().str() : "?"));
  c.add("lambda is a root of unity", m.lambda_root_of_unity);
  auto pairs = c.pairs(all_simples(*c.cat), c.cfg.verlinde_samples, 6);
  auto v = compare_verlinde(md, *c.chars, pairs, c.cfg.threads);
  c.add("Verlinde = oracle fusion", v.mismatches.empty(),
        c.scope(pairs.size()) + ", " + std::to_string(v.mismatches.size()) + " mismatches");
}

// ---------------------------------------------------------------- dw

std::string show(const Rational& r) {
  return r.is_integer() ? std::to_string(r.num()) : std::to_string(r.num()) + "/" + std::to_string(r.den());
}

void suite_dw(Context& c) {
  const SL2& G = c.cat->group();
  const int64_t order = static_cast<int64_t>(G.order());
  c.add("Z(S2xS1) = 1", dw_invariant(ManifoldDesc::parse("s2xs1"), G) == Rational(1));
  c.add("Z(S3) = 1/|G|", dw_invariant(ManifoldDesc::parse("s3"), G) == Rational(1, order));
  Rational t3 = dw_invariant(ManifoldDesc::parse("t3"), G);
  c.add("Z(T3) = catalogue size", t3 == Rational(static_cast<int64_t>(c.cat->size())), show(t3));
  const ModularData& md = c.modular();
  std::vector<std::string> ms = {"s3", "s2xs1", "t3"};
  for (int g = 0; g <= 3; ++g) ms.push_back("sigma:" + std::to_string(g) + "xs1");
  for (int p : {2, 3, 5, 7}) ms.push_back("lens:" + std::to_string(p) + ":1");
  for (const auto& s : ms) {
    auto r = dw_crosscheck(ManifoldDesc::parse(s), md);
    std::string d = "counting " + show(r.counting) + ", modular " + (r.modular ? show(*r.modular) : "irrational");
    if (r.manifold.kind == ManifoldDesc::Kind::Lens) d += ", anomaly factor " + r.anomaly_factor.canonical().str();
    c.add(s + " counting = modular", r.equal, d);
  }
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& cfg) {
  const auto& names = verify_suites();
  if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw std::invalid_argument("unknown suite '" + cfg.suite + "' (expected fields, chars, fusion, braid, modular, dw or all)");
  VerifyReport rep;
  rep.q = cfg.q;
  rep.suite = cfg.suite;
  rep.seed = cfg.seed;
  Context c;
  c.cfg = cfg;
  c.out = &rep;
  c.F = make_field(cfg.q);
  c.cat = std::make_shared<Catalog>(std::make_shared<SL2>(c.F));
  c.chars = std::make_shared<CharacterEngine>(c.cat);
  c.fusion = std::make_shared<FusionRules>(c.chars);
  c.braid = std::make_shared<BraidEngine>(c.fusion);
  const std::vector<std::pair<std::string, void (*)(Context&)>> suites = {
      {"fields", suite_fields}, {"chars", suite_chars},     {"fusion", suite_fusion},
      {"braid", suite_braid},   {"modular", suite_modular}, {"dw", suite_dw}};
  for (const auto& [name, fn] : suites) {
    if (cfg.suite != "all" && cfg.suite != name) continue;
    c.suite = name;
    fn(c);
  }
  return rep;
}

}  // namespace mtc
