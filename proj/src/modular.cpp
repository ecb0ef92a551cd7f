#include "mtc/modular.hpp"

#include <atomic>
#include <map>
#include <thread>

namespace mtc {

namespace {

template <class F>
void parallel_for(size_t n, unsigned threads, F&& body) {
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) body(i);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) return worker();
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

int64_t value_den(const std::vector<Cyclo>& vals) {
  int64_t d = 1;
  for (const auto& c : vals)
    for (const auto& t : c.terms()) d = lcm64(d, t.second.den());
  return d;
}

// Columns where row u of S can be nonzero: the support classes of u and x must
// contain commuting elements.
std::vector<std::vector<size_t>> row_support(const ModularData& md) {
  std::vector<std::vector<size_t>> nz(md.n);
  for (size_t u = 0; u < md.n; ++u)
    for (size_t x = 0; x < md.n; ++x)
      if (!md.s(u, x).is_zero()) nz[u].push_back(x);
  return nz;
}

}  // namespace

ModularData build_modular(const CharacterEngine& chars, unsigned threads) {
  const Catalog& cat = chars.catalog();
  const SL2& G = cat.group();
  const auto& P = chars.pairs();
  const auto& T = G.tables();
  const size_t ncls = G.classes().size();
  ModularData md;
  md.catalog = chars.catalog_ptr();
  md.n = cat.size();
  md.D = static_cast<int64_t>(T.elements.size());
  md.S.assign(md.n * md.n, Cyclo());
  md.T.resize(md.n);
  for (size_t i = 0; i < md.n; ++i) md.T[i] = cat.simples()[i].twist;

  // orbits (x, h) of block c1 with h in class c2, paired with the orbit of (h, x)
  struct Swap {
    size_t o, so;
    uint64_t size;
  };
  std::vector<std::vector<Swap>> lists(ncls * ncls);
  for (size_t c1 = 0; c1 < ncls; ++c1)
    for (size_t o = P.block_begin(c1); o < P.block_end(c1); ++o) {
      const PairOrbit& po = P.orbits()[o];
      size_t c2 = T.class_idx[po.h];
      size_t so = P.orbit_of(po.h, po.x);
      lists[c1 * ncls + c2].push_back({o - P.block_begin(c1), so - P.block_begin(c2), po.size});
    }

  int64_t den = 1;
  for (size_t i = 0; i < md.n; ++i) den = lcm64(den, value_den(chars.block_values(i)));
  den = den * den * md.D;
  const int64_t L = cat.conductor();

  parallel_for(ncls * ncls, threads, [&](size_t job) {
    size_t c1 = job / ncls, c2 = job % ncls;
    const auto& list = lists[job];
    if (list.empty()) return;
    DenseCyclo acc(L, den);
    for (size_t u : cat.by_support(c1)) {
      const auto& bu = chars.block_values(u);
      for (size_t v : cat.by_support(c2)) {
        const auto& bv = chars.block_values(v);
        acc.clear();
        for (const auto& sw : list)
          acc.add_product(bu[sw.o].conj(), bv[sw.so].conj(), Rational(static_cast<int64_t>(sw.size), md.D));
        md.S[u * md.n + v] = acc.to_cyclo();
      }
    }
  });
  return md;
}

namespace {

int64_t cyclo_den(const Cyclo& c) {
  int64_t d = 1;
  for (const auto& t : c.terms()) d = lcm64(d, t.second.den());
  return d;
}

int64_t matrix_den(const std::vector<Cyclo>& m) {
  int64_t d = 1;
  for (const auto& c : m) d = lcm64(d, cyclo_den(c));
  return d;
}

}  // namespace

Cyclo gauss_anomaly(const Catalog& cat) {
  Cyclo sum;
  int64_t D = static_cast<int64_t>(cat.group().tables().elements.size());
  for (const auto& s : cat.simples()) sum += s.twist * Rational(s.qdim * s.qdim, D);
  return sum.canonical();
}

ModularChecks check_modular(const ModularData& md, const CharacterEngine& chars, unsigned threads) {
  ModularChecks r;
  const size_t n = md.n;
  const Catalog& cat = *md.catalog;
  const int64_t L = cat.conductor();
  const int64_t den1 = matrix_den(md.S);
  const int64_t den = den1 * den1;
  auto nz = row_support(md);

  r.symmetric = true;
  for (size_t u = 0; u < n && r.symmetric; ++u)
    for (size_t v = u + 1; v < n; ++v)
      if (!(md.s(u, v) == md.s(v, u))) {
        r.symmetric = false;
        break;
      }

  r.unit_row = true;
  Rational g(0);
  for (size_t v = 0; v < n; ++v) {
    Rational want(cat.simples()[v].qdim, md.D);
    auto got = md.s(cat.unit(), v).as_rational();
    if (!got || *got != want) r.unit_row = false;
    g += want * want;
  }
  r.global_dimension = r.unit_row && g == Rational(1);

  // row products over the common support of two rows
  auto row_dot = [&](DenseCyclo& acc, size_t u, size_t v, bool conj, const std::vector<Cyclo>* mid) {
    acc.clear();
    const auto& a = nz[u];
    const auto& b = nz[v];
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        size_t x = a[i];
        Cyclo left = mid ? md.s(u, x) * (*mid)[x] : md.s(u, x);
        if (conj)
          acc.add_product_conj(left, md.s(v, x));
        else
          acc.add_product(left, md.s(x, v));
        ++i;
        ++j;
      }
    }
  };

  r.lambda = gauss_anomaly(cat);
  const Cyclo lam = *r.lambda;
  r.lambda_root_of_unity = lam * lam.conj() == Cyclo(1) && lam.pow(2 * L) == Cyclo(1);

  std::atomic<bool> unitary{true}, squared{true}, charge{true}, st{true};
  parallel_for(n, threads, [&](size_t u) {
    DenseCyclo acc(L, den);
    size_t du = chars.dual(u);
    if (du != u) charge = false;
    for (size_t v = u; v < n; ++v) {
      row_dot(acc, u, v, true, nullptr);
      if (!(acc.to_cyclo() == Cyclo(u == v ? 1 : 0))) unitary = false;
      // S symmetric, so (S S)_{uv} is a dot product of rows u and v
      row_dot(acc, u, v, false, nullptr);
      if (!(acc.to_cyclo() == Cyclo(v == du ? 1 : 0))) squared = false;
      row_dot(acc, u, v, false, &md.T);
      Cyclo want = lam * md.T[u].conj() * md.s(u, v) * md.T[v].conj();
      if (!(acc.to_cyclo() == want)) st = false;
    }
  });
  r.unitary = unitary;
  r.s_squared = squared;
  r.charge_identity = charge;
  r.st_cubed = st && r.s_squared && r.charge_identity;
  return r;
}

FusionVector verlinde_fuse(const ModularData& md, size_t u, size_t v) {
  const size_t n = md.n;
  const int64_t L = md.catalog->conductor();
  std::vector<Cyclo> y(n);
  std::vector<size_t> xs;
  int64_t den = 1;
  for (size_t x = 0; x < n; ++x) {
    const Cyclo& a = md.s(u, x);
    const Cyclo& b = md.s(v, x);
    if (a.is_zero() || b.is_zero()) continue;
    auto s1 = md.s(0, x).as_rational();
    if (!s1 || s1->is_zero()) throw std::logic_error("unit row of S must be rational and nonzero");
    y[x] = (a * b * (Rational(1) / *s1)).canonical();
    xs.push_back(x);
    den = lcm64(den, cyclo_den(y[x]));
  }
  int64_t sden = 1;
  for (size_t x : xs)
    for (size_t w = 0; w < n; ++w) sden = lcm64(sden, cyclo_den(md.s(w, x)));
  DenseCyclo acc(L, den * sden);
  FusionVector out;
  for (size_t w = 0; w < n; ++w) {
    acc.clear();
    for (size_t x : xs) acc.add_product_conj(y[x], md.s(w, x));
    auto val = acc.as_rational();
    if (!val || !val->is_integer() || val->num() < 0)
      throw NonInteger("Verlinde coefficient is not a non-negative integer");
    if (val->num() != 0) out[w] = val->num();
  }
  return out;
}

VerlindeReport compare_verlinde(const ModularData& md, const CharacterEngine& chars,
                                const std::vector<std::pair<size_t, size_t>>& pairs, unsigned threads) {
  VerlindeReport rep;
  rep.pairs = pairs.size();
  std::vector<char> bad(pairs.size(), 0);
  parallel_for(pairs.size(), threads, [&](size_t i) {
    auto [u, v] = pairs[i];
    FusionVector want = chars.oracle_fuse(u, v);
    std::erase_if(want, [](const auto& kv) { return kv.second == 0; });
    try {
      bad[i] = verlinde_fuse(md, u, v) != want;
    } catch (const NonInteger&) {
      bad[i] = 1;
    }
  });
  for (size_t i = 0; i < pairs.size(); ++i)
    if (bad[i]) rep.mismatches.push_back(pairs[i]);
  return rep;
}

}  // namespace mtc
