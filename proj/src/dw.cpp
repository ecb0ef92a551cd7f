#include "mtc/dw.hpp"

#include <stdexcept>

namespace mtc {

ManifoldDesc ManifoldDesc::parse(const std::string& s) {
  ManifoldDesc m;
  auto number = [&](const std::string& t) {
    size_t pos = 0;
    int v = -1;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != t.size() || t.empty()) throw std::invalid_argument("bad manifold: " + s);
    return v;
  };
  if (s == "s3") {
    m.kind = Kind::S3;
  } else if (s == "s2xs1") {
    m.kind = Kind::S2xS1;
  } else if (s == "t3") {
    m.kind = Kind::T3;
  } else if (s.rfind("lens:", 0) == 0 && s.size() > 7 && s.substr(s.size() - 2) == ":1") {
    m.kind = Kind::Lens;
    m.p = number(s.substr(5, s.size() - 7));
    if (m.p < 1) throw std::invalid_argument("lens space needs p >= 1");
  } else if (s.rfind("sigma:", 0) == 0 && s.size() > 9 && s.substr(s.size() - 3) == "xs1") {
    m.kind = Kind::SigmaGxS1;
    m.g = number(s.substr(6, s.size() - 9));
    if (m.g < 0) throw std::invalid_argument("genus must be >= 0");
  } else {
    throw std::invalid_argument("bad manifold: " + s);
  }
  return m;
}

std::string ManifoldDesc::str() const {
  switch (kind) {
    case Kind::S3: return "s3";
    case Kind::S2xS1: return "s2xs1";
    case Kind::T3: return "t3";
    case Kind::Lens: return "lens:" + std::to_string(p) + ":1";
    case Kind::SigmaGxS1: return "sigma:" + std::to_string(g) + "xs1";
  }
  return "";
}

namespace {

// #{(a1, b1, ..., ag, bg) in H^2g : [a1,b1]...[ag,bg] = e}. Abelian H gives
// |H|^2g; otherwise the commutator count is convolved g times.
Rational surface_homs(const SL2& G, const std::vector<GroupElement>& H, int g) {
  const auto& T = G.tables();
  const size_t n = H.size();
  bool abelian = true;
  for (size_t i = 0; i < n && abelian; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (G.mul(H[i], H[j]) != G.mul(H[j], H[i])) {
        abelian = false;
        break;
      }
  if (abelian) {
    Rational r(1);
    for (int i = 0; i < 2 * g; ++i) r = r * Rational(static_cast<int64_t>(n));
    return r;
  }
  // local indices
  std::vector<int32_t> local(T.elements.size(), -1);
  for (size_t i = 0; i < n; ++i) local[G.index_of(H[i])] = static_cast<int32_t>(i);
  std::vector<std::vector<uint32_t>> mul(n, std::vector<uint32_t>(n));
  std::vector<uint32_t> inv(n);
  for (size_t i = 0; i < n; ++i) {
    inv[i] = static_cast<uint32_t>(local[G.index_of(G.inv(H[i]))]);
    for (size_t j = 0; j < n; ++j) mul[i][j] = static_cast<uint32_t>(local[G.index_of(G.mul(H[i], H[j]))]);
  }
  std::vector<int64_t> f(n, 0);  // f(c) = #{(a, b) : a b a^-1 b^-1 = c}
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) f[mul[mul[a][b]][mul[inv[a]][inv[b]]]]++;
  const size_t e = static_cast<size_t>(local[G.index_of(G.identity())]);
  std::vector<int64_t> F(n, 0);
  F[e] = 1;
  for (int k = 0; k < g; ++k) {
    std::vector<int64_t> next(n, 0);
    for (size_t x = 0; x < n; ++x) {
      if (F[x] == 0) continue;
      for (size_t c = 0; c < n; ++c)
        if (f[c] != 0) {
          int64_t add;
          if (__builtin_mul_overflow(F[x], f[c], &add) || __builtin_add_overflow(next[mul[x][c]], add, &next[mul[x][c]]))
            throw std::overflow_error("surface count overflow");
        }
    }
    F.swap(next);
  }
  return Rational(F[e]);
}

}  // namespace

Rational dw_invariant(const ManifoldDesc& m, const SL2& G) {
  const int64_t order = static_cast<int64_t>(G.tables().elements.size());
  switch (m.kind) {
    case ManifoldDesc::Kind::S3: return Rational(1, order);
    case ManifoldDesc::Kind::S2xS1: return Rational(order, order);
    case ManifoldDesc::Kind::Lens: {
      int64_t count = 0;
      for (const auto& cl : G.classes())
        if (G.pow(G.rep(cl), m.p) == G.identity()) count += static_cast<int64_t>(G.class_size(cl));
      return Rational(count, order);
    }
    case ManifoldDesc::Kind::T3:
    case ManifoldDesc::Kind::SigmaGxS1: {
      // Hom(pi_1(Sigma_g) x Z, G): the Z generator z, the surface group in Cen(z)
      const int g = m.kind == ManifoldDesc::Kind::T3 ? 1 : m.g;
      Rational total(0);
      for (const auto& cl : G.classes()) {
        Rational homs = surface_homs(G, G.centralizer_elements(cl), g);
        total += homs * Rational(static_cast<int64_t>(G.class_size(cl)), order);
      }
      return total;
    }
  }
  throw std::logic_error("unknown manifold");
}

DwCrosscheck dw_crosscheck(const ManifoldDesc& m, const ModularData& md) {
  DwCrosscheck r;
  r.manifold = m;
  r.counting = dw_invariant(m, md.catalog->group());
  r.anomaly_factor = Cyclo(1);
  std::vector<Rational> s1(md.n);
  for (size_t x = 0; x < md.n; ++x) {
    auto v = md.s(md.catalog->unit(), x).as_rational();
    if (!v) throw std::logic_error("unit row of S is not rational");
    s1[x] = *v;
  }
  auto power = [](Rational b, int e) {
    if (e < 0) {
      b = Rational(1) / b;
      e = -e;
    }
    Rational r(1);
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  };
  switch (m.kind) {
    case ManifoldDesc::Kind::S3:
      r.modular = s1[md.catalog->unit()];
      break;
    case ManifoldDesc::Kind::S2xS1:
    case ManifoldDesc::Kind::T3:
    case ManifoldDesc::Kind::SigmaGxS1: {
      const int g = m.kind == ManifoldDesc::Kind::S2xS1 ? 0 : m.kind == ManifoldDesc::Kind::T3 ? 1 : m.g;
      Rational sum(0);
      for (const auto& v : s1) sum += power(v, 2 - 2 * g);
      r.modular = sum;
      break;
    }
    case ManifoldDesc::Kind::Lens: {
      r.anomaly_factor = gauss_anomaly(*md.catalog).conj();
      Cyclo sum;
      for (size_t x = 0; x < md.n; ++x) sum += md.T[x].pow(m.p) * (s1[x] * s1[x]);
      r.modular = (r.anomaly_factor * sum).as_rational();
      break;
    }
  }
  r.equal = r.modular && *r.modular == r.counting;
  return r;
}

}  // namespace mtc
