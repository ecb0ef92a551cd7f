#include "mtc/catalog.hpp"

#include <sstream>
#include <stdexcept>

namespace mtc {

ClassLabel SimpleLabel::support() const {
  switch (family) {
    case Family::E: return ClassLabel::central(mu);
    case Family::A: return ClassLabel::split(k);
    case Family::B: return ClassLabel::unipotent(mu, eps);
    case Family::C: return ClassLabel::nonsplit(k);
  }
  throw std::logic_error("bad family");
}

Catalog::Catalog(std::shared_ptr<const SL2> group) : G_(std::move(group)), table_(*G_) {
  const auto& F = G_->field();
  const int q = static_cast<int>(F.q);
  const int h = static_cast<int>(F.h);
  conductor_ = lcm64(F.p, lcm64(2 * (q - 1), 2 * (q + 1)));

  std::vector<SimpleLabel> labels;
  for (int mu : {1, -1})
    for (const auto& r : table_.irreps()) labels.push_back(SimpleLabel::central(mu, r));
  for (int k = 1; k <= 2 * h - 1; ++k)
    for (int u = 1; u <= q - 1; ++u) labels.push_back(SimpleLabel::split(k, u));
  for (int mu : {1, -1})
    for (int eps : {1, -1})
      for (int nu : {1, -1})
        for (uint32_t v = 0; v < F.q; ++v) labels.push_back(SimpleLabel::unipotent(mu, eps, nu, FieldElement{v}));
  for (int l = 1; l <= 2 * h; ++l)
    for (int w = 1; w <= q + 1; ++w) labels.push_back(SimpleLabel::nonsplit(l, w));

  by_support_.resize(G_->classes().size());
  const GroupElement minus_e = G_->scalar(-1);
  for (const auto& l : labels) {
    SimpleData d;
    d.label = l;
    d.support = l.support();
    d.support_idx = G_->class_index(d.support);
    size_t i = simples_.size();
    simples_.push_back(d);
    index_[l] = i;
    by_support_[d.support_idx].push_back(i);
    auto& s = simples_.back();
    GroupElement x0 = G_->rep(s.support);
    if (l.family == Family::E) s.rho_dim = table_.dim(table_.index(l.irrep));
    s.qdim = s.rho_dim * static_cast<int64_t>(G_->class_size(s.support));
    s.twist = rho(i, x0) * Rational(1, s.rho_dim);
    s.parity = static_cast<int>((rho(i, minus_e) * Rational(1, s.rho_dim)).as_integer());
  }
}

size_t Catalog::index(const SimpleLabel& l) const {
  auto it = index_.find(l);
  if (it == index_.end()) throw DomainError("label not in catalogue");
  return it->second;
}

int64_t Catalog::c_exponent(const GroupElement& h) const {
  const auto& F = G_->field();
  const GroupElement c = G_->c();
  FieldElement beta = F.mul(h.b, F.inv(c.b));
  FieldElement alpha = F.sub(h.a, F.mul(beta, c.a));
  auto lam = F.ext.add(F.embed(alpha), F.ext.mul(F.embed(beta), F.f));
  int64_t lg = F.ext.log(lam);
  if (lg % (F.q - 1) != 0) throw std::logic_error("element is not in <c>");
  return lg / (F.q - 1);
}

Cyclo Catalog::rho(size_t i, const GroupElement& hh) const {
  const auto& s = simples_[i];
  const auto& l = s.label;
  const auto& F = G_->field();
  const int q = static_cast<int>(F.q);
  switch (l.family) {
    case Family::E:
      return table_.value(table_.index(l.irrep), G_->class_index(G_->class_of(hh).label));
    case Family::A: {
      int64_t j = F.dlog(hh.a);
      return Cyclo::root_of_unity(q - 1, j * l.u);
    }
    case Family::B: {
      bool neg = hh.a != F.base.one();
      FieldElement y = neg ? F.neg(hh.b) : hh.b;
      Cyclo z = Cyclo::root_of_unity(F.p, F.trace_to_prime(F.mul(l.v, y)));
      return neg && l.nu < 0 ? -z : z;
    }
    case Family::C:
      return Cyclo::root_of_unity(q + 1, c_exponent(hh) * l.u);
  }
  throw std::logic_error("bad family");
}

namespace {

const char* sign(int s) { return s > 0 ? "+" : "-"; }

}  // namespace

std::string Catalog::format(const SimpleLabel& l) const {
  std::ostringstream os;
  switch (l.family) {
    case Family::E:
      os << "E:" << sign(l.mu) << ":" << l.irrep.str();
      break;
    case Family::A:
      os << "A:" << l.k << ":" << l.u;
      break;
    case Family::B:
      os << "B:" << sign(l.mu) << ":" << sign(l.eps) << ":" << sign(l.nu) << ":" << field().base.format(l.v);
      break;
    case Family::C:
      os << "C:" << l.k << ":" << l.u;
      break;
  }
  return os.str();
}

SimpleLabel Catalog::parse(const std::string& s) const {
  const std::string grammar =
      "expected E:<+|->:<1|V|W<s>|X<f>|W'|W''|X'|X''>, A:<k>:<u>, B:<mu>:<eps>:<nu>:<v> or C:<l>:<w>";
  auto fail = [&](const std::string& why) -> SimpleLabel {
    throw DomainError("bad label '" + s + "': " + why + "; " + grammar);
  };
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  auto parse_sign = [&](const std::string& t) {
    if (t == "+") return 1;
    if (t == "-") return -1;
    fail("sign must be + or -");
    return 0;
  };
  auto parse_int = [&](const std::string& t) {
    if (t.empty() || t.size() > 9) fail("bad integer '" + t + "'");
    for (char ch : t)
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail("bad integer '" + t + "'");
    return std::stoi(t);
  };
  const int q = static_cast<int>(field().q), h = static_cast<int>(field().h);
  SimpleLabel l;
  if (parts[0] == "E" && parts.size() == 3) {
    int mu = parse_sign(parts[1]);
    const std::string& r = parts[2];
    Irrep ir;
    if (r == "1") ir = {IrrepKind::One, 0};
    else if (r == "V") ir = {IrrepKind::V, 0};
    else if (r == "W'") ir = {IrrepKind::Wp, 0};
    else if (r == "W''") ir = {IrrepKind::Wpp, 0};
    else if (r == "X'") ir = {IrrepKind::Xp, 0};
    else if (r == "X''") ir = {IrrepKind::Xpp, 0};
    else if (r.size() > 1 && r[0] == 'W') ir = {IrrepKind::W, parse_int(r.substr(1))};
    else if (r.size() > 1 && r[0] == 'X') ir = {IrrepKind::X, parse_int(r.substr(1))};
    else fail("unknown irrep '" + r + "'");
    if (ir.kind == IrrepKind::W && (ir.param < 1 || ir.param > 2 * h - 1)) fail("sigma out of [1,2h-1]");
    if (ir.kind == IrrepKind::X && (ir.param < 1 || ir.param > 2 * h)) fail("phi out of [1,2h]");
    l = SimpleLabel::central(mu, ir);
  } else if (parts[0] == "A" && parts.size() == 3) {
    int k = parse_int(parts[1]), u = parse_int(parts[2]);
    if (k < 1 || k > 2 * h - 1) fail("k out of [1,2h-1]");
    if (u < 1 || u > q - 1) fail("u out of [1,q-1]");
    l = SimpleLabel::split(k, u);
  } else if (parts[0] == "B" && parts.size() == 5) {
    l = SimpleLabel::unipotent(parse_sign(parts[1]), parse_sign(parts[2]), parse_sign(parts[3]),
                               field().base.parse(parts[4]));
  } else if (parts[0] == "C" && parts.size() == 3) {
    int ll = parse_int(parts[1]), w = parse_int(parts[2]);
    if (ll < 1 || ll > 2 * h) fail("l out of [1,2h]");
    if (w < 1 || w > q + 1) fail("w out of [1,q+1]");
    l = SimpleLabel::nonsplit(ll, w);
  } else {
    fail("unrecognized form");
  }
  return l;
}

}  // namespace mtc
