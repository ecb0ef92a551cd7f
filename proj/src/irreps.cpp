#include "mtc/irreps.hpp"

#include <stdexcept>

namespace mtc {

std::string Irrep::str() const {
  switch (kind) {
    case IrrepKind::One: return "1";
    case IrrepKind::V: return "V";
    case IrrepKind::W: return "W" + std::to_string(param);
    case IrrepKind::X: return "X" + std::to_string(param);
    case IrrepKind::Wp: return "W'";
    case IrrepKind::Wpp: return "W''";
    case IrrepKind::Xp: return "X'";
    case IrrepKind::Xpp: return "X''";
  }
  return "?";
}

Cyclo field_gauss_sum(const FieldParams& F) {
  std::vector<Cyclo::Term> terms;
  for (uint32_t t = 1; t < F.q; ++t) {
    FieldElement y{t};
    terms.emplace_back(F.trace_to_prime(y), Rational(F.is_square(y) ? 1 : -1));
  }
  return Cyclo::from_terms(F.p, std::move(terms));
}

Cyclo sqrt_q(const FieldParams& F) { return sqrt_prime_power(F.p, F.n); }

Sl2CharTable::Sl2CharTable(const SL2& G) : gauss_(field_gauss_sum(G.field())) {
  const int q = static_cast<int>(G.q());
  const int h = static_cast<int>(G.h());
  irreps_.push_back({IrrepKind::One, 0});
  irreps_.push_back({IrrepKind::V, 0});
  for (int s = 1; s <= 2 * h - 1; ++s) irreps_.push_back({IrrepKind::W, s});
  for (int f = 1; f <= 2 * h; ++f) irreps_.push_back({IrrepKind::X, f});
  irreps_.push_back({IrrepKind::Wp, 0});
  irreps_.push_back({IrrepKind::Wpp, 0});
  irreps_.push_back({IrrepKind::Xp, 0});
  irreps_.push_back({IrrepKind::Xpp, 0});

  const Cyclo sp = s_plus(), sm = s_minus();
  auto zq1 = [&](int64_t k) { return Cyclo::root_of_unity(q - 1, k); };
  auto zq2 = [&](int64_t k) { return Cyclo::root_of_unity(q + 1, k); };
  auto sgn = [](int mu, int e) { return (mu < 0 && (e % 2 != 0)) ? -1 : 1; };

  for (const auto& r : irreps_) {
    std::vector<Cyclo> row;
    for (const auto& cl : G.classes()) {
      Cyclo v;
      const int mu = cl.mu, k = cl.k, eps = cl.eps;
      switch (r.kind) {
        case IrrepKind::One:
          v = 1;
          break;
        case IrrepKind::V:
          v = cl.kind == ClassKind::Central ? Cyclo(q)
              : cl.kind == ClassKind::A     ? Cyclo(1)
              : cl.kind == ClassKind::B     ? Cyclo(0)
                                            : Cyclo(-1);
          break;
        case IrrepKind::W:
          if (cl.kind == ClassKind::Central) v = Cyclo((q + 1) * sgn(mu, r.param));
          if (cl.kind == ClassKind::A) v = zq1(r.param * k) + zq1(-r.param * k);
          if (cl.kind == ClassKind::B) v = Cyclo(sgn(mu, r.param));
          break;
        case IrrepKind::X:
          if (cl.kind == ClassKind::Central) v = Cyclo((q - 1) * sgn(mu, r.param));
          if (cl.kind == ClassKind::B) v = Cyclo(-sgn(mu, r.param));
          if (cl.kind == ClassKind::C) v = -(zq2(r.param * k) + zq2(-r.param * k));
          break;
        case IrrepKind::Wp:
        case IrrepKind::Wpp: {
          int e = r.kind == IrrepKind::Wp ? eps : -eps;
          if (cl.kind == ClassKind::Central) v = Cyclo(2 * h + 1);
          if (cl.kind == ClassKind::A) v = Cyclo(k % 2 == 0 ? 1 : -1);
          if (cl.kind == ClassKind::B) v = e > 0 ? sp : sm;
          break;
        }
        case IrrepKind::Xp:
        case IrrepKind::Xpp: {
          int e = r.kind == IrrepKind::Xp ? -eps : eps;
          if (cl.kind == ClassKind::Central) v = Cyclo(2 * h * mu);
          if (cl.kind == ClassKind::B) v = (e > 0 ? sp : sm) * Rational(-mu);
          if (cl.kind == ClassKind::C) v = Cyclo(k % 2 == 0 ? -1 : 1);
          break;
        }
      }
      row.push_back(v);
    }
    dims_.push_back(row[0].as_integer());
    values_.push_back(std::move(row));
  }
}

size_t Sl2CharTable::index(const Irrep& r) const {
  for (size_t i = 0; i < irreps_.size(); ++i)
    if (irreps_[i] == r) return i;
  throw std::out_of_range("unknown irrep " + r.str());
}

Cyclo Sl2CharTable::s_plus() const { return (Cyclo(1) + gauss_) * Rational(1, 2); }
Cyclo Sl2CharTable::s_minus() const { return (Cyclo(1) - gauss_) * Rational(1, 2); }

}  // namespace mtc
