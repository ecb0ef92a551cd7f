#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "mtc/braid.hpp"
#include "mtc/dw.hpp"
#include "mtc/modular.hpp"
#include "mtc/verify.hpp"

using namespace mtc;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "mtc-dsl2q/1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int q = 5;
  std::string format = "text";
  unsigned threads = 0;
};

struct World {
  std::shared_ptr<Catalog> cat;
  std::shared_ptr<CharacterEngine> chars;
  std::shared_ptr<FusionRules> fusion;
};

World load(int q) {
  World w;
  std::shared_ptr<const FieldParams> F;
  try {
    F = make_field(q);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  w.cat = std::make_shared<Catalog>(std::make_shared<SL2>(F));
  w.chars = std::make_shared<CharacterEngine>(w.cat);
  w.fusion = std::make_shared<FusionRules>(w.chars);
  return w;
}

size_t label_index(const Catalog& cat, const std::string& s) {
  try {
    return cat.index(cat.parse(s));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::string name(const Catalog& cat, size_t i) { return cat.format(cat.simples()[i].label); }

std::string approx(double x) {
  if (std::fabs(x) < 5e-13) x = 0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json cyclo_json(const Cyclo& c) {
  Cyclo k = c.canonical();
  auto z = k.to_complex();
  return json{{"exact", k.str()}, {"approximate", {approx(z.real()), approx(z.imag())}}};
}

std::string rational_str(const Rational& r) {
  return r.is_integer() ? std::to_string(r.num()) : std::to_string(r.num()) + "/" + std::to_string(r.den());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
  os << "\n";
}

json header(const std::string& cmd, int q) { return json{{"schema", kSchema}, {"command", cmd}, {"q", q}}; }

json vector_json(const Catalog& cat, const FusionVector& v) {
  json out = json::object();
  for (auto [i, m] : v)
    if (m) out[name(cat, i)] = m;
  return out;
}

// ---------------------------------------------------------------- commands

int cmd_catalogue(const Options& o) {
  World w = load(o.q);
  const Catalog& cat = *w.cat;
  auto row = [&](size_t i) {
    const auto& s = cat.simples()[i];
    return std::vector<std::string>{std::to_string(i), name(cat, i), s.support.str(), std::to_string(s.qdim),
                                    s.twist.canonical().str(), std::to_string(s.parity), std::to_string(s.rho_dim)};
  };
  if (o.format == "json") {
    json j = header("catalogue", o.q);
    j["size"] = cat.size();
    j["order"] = cat.group().order();
    json rows = json::array();
    for (size_t i = 0; i < cat.size(); ++i) {
      const auto& s = cat.simples()[i];
      rows.push_back({{"index", i},
                      {"label", name(cat, i)},
                      {"support", s.support.str()},
                      {"dim", s.qdim},
                      {"twist", cyclo_json(s.twist)},
                      {"parity", s.parity},
                      {"rho_dim", s.rho_dim}});
    }
    j["simples"] = rows;
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    csv_row(std::cout, {"index", "label", "support", "dim", "twist", "parity", "rho_dim"});
    for (size_t i = 0; i < cat.size(); ++i) csv_row(std::cout, row(i));
  } else {
    std::cout << "# catalogue q=" << o.q << " simples=" << cat.size() << " |G|=" << cat.group().order() << "\n";
    for (size_t i = 0; i < cat.size(); ++i) {
      auto r = row(i);
      std::cout << r[0] << "\t" << r[1] << "\tsupport " << r[2] << "\tdim " << r[3] << "\ttwist " << r[4]
                << "\tparity " << r[5] << "\n";
    }
  }
  return 0;
}

int cmd_fuse(const Options& o, const std::string& l1, const std::string& l2, bool oracle) {
  World w = load(o.q);
  const Catalog& cat = *w.cat;
  size_t a = label_index(cat, l1), b = label_index(cat, l2);
  FusionVector closed = w.fusion->fuse(a, b);
  std::erase_if(closed, [](const auto& kv) { return kv.second == 0; });
  FusionVector orc;
  std::vector<std::tuple<size_t, int64_t, int64_t>> diff;
  if (oracle) {
    orc = w.chars->oracle_fuse(a, b);
    std::erase_if(orc, [](const auto& kv) { return kv.second == 0; });
    std::map<size_t, std::pair<int64_t, int64_t>> all;
    for (auto [i, m] : closed) all[i].first = m;
    for (auto [i, m] : orc) all[i].second = m;
    for (auto [i, p] : all)
      if (p.first != p.second) diff.emplace_back(i, p.first, p.second);
  }
  const char* source = w.fusion->closed_form(a, b) ? "closed-form" : "oracle (central factor)";
  if (o.format == "json") {
    json j = header("fuse", o.q);
    j["x1"] = name(cat, a);
    j["x2"] = name(cat, b);
    j["source"] = source;
    j["closed"] = vector_json(cat, closed);
    if (oracle) {
      j["oracle"] = vector_json(cat, orc);
      json d = json::object();
      for (auto [i, m1, m2] : diff) d[name(cat, i)] = {m1, m2};
      j["diff"] = d;
    }
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    csv_row(std::cout, oracle ? std::vector<std::string>{"label", "closed", "oracle"}
                              : std::vector<std::string>{"label", "closed"});
    std::map<size_t, std::pair<int64_t, int64_t>> all;
    for (auto [i, m] : closed) all[i].first = m;
    for (auto [i, m] : orc) all[i].second = m;
    for (auto [i, p] : all) {
      std::vector<std::string> r = {name(cat, i), std::to_string(p.first)};
      if (oracle) r.push_back(std::to_string(p.second));
      csv_row(std::cout, r);
    }
  } else {
    auto show = [&](const FusionVector& v) {
      std::string s;
      for (auto [i, m] : v) s += " " + name(cat, i) + (m > 1 ? "*" + std::to_string(m) : "");
      return s.empty() ? std::string(" 0") : s;
    };
    std::cout << "# fuse q=" << o.q << " " << name(cat, a) << " (x) " << name(cat, b) << " [" << source << "]\n";
    std::cout << "closed:" << show(closed) << "\n";
    if (oracle) {
      std::cout << "oracle:" << show(orc) << "\n";
      std::cout << "diff:";
      if (diff.empty()) std::cout << " none";
      for (auto [i, m1, m2] : diff) std::cout << " " << name(cat, i) << " " << m1 << "/" << m2;
      std::cout << "\n";
    }
  }
  return diff.empty() ? 0 : 1;
}

int cmd_braid(const Options& o, const std::string& l1, const std::string& l2, const std::string& block) {
  World w = load(o.q);
  const Catalog& cat = *w.cat;
  const SL2& G = cat.group();
  size_t a = label_index(cat, l1), b = label_index(cat, l2);
  for (size_t s : {a, b})
    if (cat.simples()[s].label.family == Family::E)
      throw UsageError("braid needs simples with non-central support; " + name(cat, s) + " is central");
  BraidEngine B(w.fusion);
  std::vector<BraidBlockReport> reps;
  if (block.empty()) {
    reps = B.pair_report(a, b);
  } else {
    size_t cls = G.classes().size();
    std::string valid;
    for (size_t c = 0; c < G.classes().size(); ++c) {
      valid += (c ? ", " : "") + G.classes()[c].str();
      if (G.classes()[c].str() == block) cls = c;
    }
    if (cls == G.classes().size()) throw UsageError("unknown block '" + block + "'; classes are " + valid);
    try {
      reps.push_back(B.block_report(a, b, cls));
    } catch (const BlockAbsent& e) {
      std::cerr << e.what() << "\n";
    }
  }
  bool ok = true;
  for (const auto& r : reps) ok &= r.grading_ok && r.balanced && r.multiplicities_match && r.trace_match.value_or(true);

  if (o.format == "json") {
    json j = header("braid", o.q);
    j["x1"] = name(cat, a);
    j["x2"] = name(cat, b);
    json blocks = json::array();
    for (const auto& r : reps) {
      json pieces = json::array();
      for (const auto& p : r.pieces) {
        json pj = {{"simple", name(cat, p.simple)},
                   {"multiplicity", p.multiplicity},
                   {"double_braid", cyclo_json(p.double_braid)},
                   {"expected", cyclo_json(p.expected_double)},
                   {"match", p.scalar && p.double_braid == p.expected_double}};
        if (p.single_trace) {
          pj["single_trace"] = cyclo_json(*p.single_trace);
          if (p.predicted_trace) {
            pj["predicted_trace"] = cyclo_json(*p.predicted_trace);
            pj["trace_match"] = *p.single_trace == *p.predicted_trace;
          }
          pj["eigen_plus"] = p.plus;
          pj["eigen_minus"] = p.minus;
          if (p.single_root) pj["eigen_root"] = cyclo_json(*p.single_root);
        }
        pieces.push_back(pj);
      }
      json bj = {{"block", G.classes()[r.cls].str()},
                 {"fiber_dim", r.fiber_dim},
                 {"grading_ok", r.grading_ok},
                 {"balanced", r.balanced},
                 {"multiplicities_match", r.multiplicities_match},
                 {"pieces", pieces}};
      if (r.block_trace) bj["block_trace"] = cyclo_json(*r.block_trace);
      if (r.predicted_block) bj["predicted_block_trace"] = cyclo_json(*r.predicted_block);
      if (r.trace_match) bj["trace_match"] = *r.trace_match;
      blocks.push_back(bj);
    }
    j["blocks"] = blocks;
    j["ok"] = ok;
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    csv_row(std::cout, {"block", "simple", "multiplicity", "double_braid", "expected", "match", "single_trace",
                        "predicted_trace"});
    for (const auto& r : reps)
      for (const auto& p : r.pieces)
        csv_row(std::cout, {G.classes()[r.cls].str(), name(cat, p.simple), std::to_string(p.multiplicity),
                            p.double_braid.canonical().str(), p.expected_double.canonical().str(),
                            p.scalar && p.double_braid == p.expected_double ? "true" : "false",
                            p.single_trace ? p.single_trace->canonical().str() : "",
                            p.predicted_trace ? p.predicted_trace->canonical().str() : ""});
  } else {
    std::cout << "# braid q=" << o.q << " " << name(cat, a) << " (x) " << name(cat, b) << "\n";
    for (const auto& r : reps) {
      std::cout << "block " << G.classes()[r.cls].str() << "  fiber " << r.fiber_dim << "  balanced "
                << (r.balanced ? "yes" : "NO") << "  multiplicities " << (r.multiplicities_match ? "ok" : "MISMATCH");
      if (r.trace_match) std::cout << "  traces " << (*r.trace_match ? "ok" : "MISMATCH");
      std::cout << "\n";
      for (const auto& p : r.pieces) {
        std::cout << "  " << name(cat, p.simple) << " x" << p.multiplicity << "  double braid "
                  << p.double_braid.canonical().str();
        if (p.single_trace) std::cout << "  tr R " << p.single_trace->canonical().str();
        std::cout << "\n";
      }
    }
    std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_smatrix(const Options& o) {
  World w = load(o.q);
  const Catalog& cat = *w.cat;
  ModularData md = build_modular(*w.chars, o.threads);
  if (o.format == "json") {
    json j = header("smatrix", o.q);
    j["D"] = md.D;
    json labels = json::array();
    for (size_t i = 0; i < md.n; ++i) labels.push_back(name(cat, i));
    j["order"] = labels;
    json T = json::array();
    for (const auto& t : md.T) T.push_back(cyclo_json(t));
    j["T"] = T;
    json S = json::array();
    for (size_t u = 0; u < md.n; ++u) {
      json row = json::array();
      for (size_t v = 0; v < md.n; ++v) row.push_back(cyclo_json(md.s(u, v)));
      S.push_back(row);
    }
    j["S"] = S;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    csv_row(std::cout, {"row", "col", "exact", "re_approximate", "im_approximate"});
    for (size_t u = 0; u < md.n; ++u)
      for (size_t v = 0; v < md.n; ++v) {
        const Cyclo& c = md.s(u, v);
        if (c.is_zero()) continue;
        auto z = c.to_complex();
        csv_row(std::cout, {name(cat, u), name(cat, v), c.str(), approx(z.real()), approx(z.imag())});
      }
  } else {
    std::cout << "# smatrix q=" << o.q << " n=" << md.n << " D=" << md.D << " (nonzero entries)\n";
    for (size_t u = 0; u < md.n; ++u) std::cout << "T " << name(cat, u) << " = " << md.T[u].canonical().str() << "\n";
    for (size_t u = 0; u < md.n; ++u)
      for (size_t v = 0; v < md.n; ++v)
        if (!md.s(u, v).is_zero()) std::cout << "S " << name(cat, u) << " " << name(cat, v) << " = " << md.s(u, v).str() << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o, const std::string& suite, uint64_t seed) {
  VerifyConfig cfg;
  cfg.q = o.q;
  cfg.suite = suite;
  cfg.seed = seed;
  cfg.threads = o.threads;
  try {
    make_field(o.q);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  VerifyReport r;
  try {
    r = run_verify(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  size_t passed = 0;
  for (const auto& c : r.checks) passed += c.pass;
  if (o.format == "json") {
    json j = header("verify", o.q);
    j["suite"] = suite;
    j["seed"] = seed;
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    j["passed"] = passed;
    j["total"] = r.checks.size();
    j["ok"] = r.ok();
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "# q=" << o.q << " suite=" << suite << " seed=" << seed << "\n";
    csv_row(std::cout, {"suite", "check", "pass", "detail"});
    for (const auto& c : r.checks) csv_row(std::cout, {c.suite, c.name, c.pass ? "true" : "false", c.detail});
  } else {
    std::cout << "# verify q=" << o.q << " suite=" << suite << " seed=" << seed << "\n";
    for (const auto& c : r.checks)
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.suite << ": " << c.name
                << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    std::cout << "result: " << (r.ok() ? "PASS" : "FAIL") << " (" << passed << "/" << r.checks.size() << ")\n";
  }
  return r.ok() ? 0 : 1;
}

int cmd_dw(const Options& o, const std::string& manifold) {
  ManifoldDesc m;
  try {
    m = ManifoldDesc::parse(manifold);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(e.what()) + "; expected s3, s2xs1, t3, lens:<p>:1 or sigma:<g>xs1");
  }
  World w = load(o.q);
  ModularData md = build_modular(*w.chars, o.threads);
  DwCrosscheck r = dw_crosscheck(m, md);
  std::string modular = r.modular ? rational_str(*r.modular) : "irrational";
  if (o.format == "json") {
    json j = header("dw", o.q);
    j["manifold"] = m.str();
    j["counting"] = rational_str(r.counting);
    j["modular"] = modular;
    j["anomaly_factor"] = cyclo_json(r.anomaly_factor);
    j["equal"] = r.equal;
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    csv_row(std::cout, {"manifold", "counting", "modular", "anomaly_factor", "equal"});
    csv_row(std::cout, {m.str(), rational_str(r.counting), modular, r.anomaly_factor.canonical().str(),
                        r.equal ? "true" : "false"});
  } else {
    std::cout << rational_str(r.counting) << "\n";
    std::cout << "# " << m.str() << " counting " << rational_str(r.counting) << ", modular " << modular
              << ", anomaly factor " << r.anomaly_factor.canonical().str() << (r.equal ? ", equal" : ", DIFFERENT")
              << "\n";
  }
  return r.equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular data of the quantum double of SL(2,q), q = 1 mod 4"};
  app.require_subcommand(1);
  Options o;
  std::string fmt = "text";
  unsigned threads = 0;
  app.add_option("--format", fmt, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", threads, "worker threads (default: MTC_THREADS or hardware)");

  auto add_q = [&](CLI::App* sub) { sub->add_option("q", o.q, "field size, an odd prime power = 1 mod 4")->required(); };

  auto* cat = app.add_subcommand("catalogue", "list the simple objects");
  add_q(cat);

  std::string l1, l2, block, suite = "all", manifold;
  bool oracle = false;
  uint64_t seed = 0;
  auto* fuse = app.add_subcommand("fuse", "fusion of two simples");
  add_q(fuse);
  fuse->add_option("x1", l1, "first label")->required();
  fuse->add_option("x2", l2, "second label")->required();
  fuse->add_flag("--oracle", oracle, "also run the character oracle and print the difference");

  auto* braid = app.add_subcommand("braid", "braiding blocks of two simples with non-central support");
  add_q(braid);
  braid->add_option("x1", l1, "first label")->required();
  braid->add_option("x2", l2, "second label")->required();
  braid->add_option("--block", block, "one support block, e.g. +e, a^1, -b+, c^2");

  auto* smat = app.add_subcommand("smatrix", "S and T matrices");
  add_q(smat);

  auto* ver = app.add_subcommand("verify", "run verification suites");
  add_q(ver);
  ver->add_option("--suite", suite, "suite")->check(
      CLI::IsMember({"fields", "chars", "fusion", "braid", "modular", "dw", "all"}));
  ver->add_option("--seed", seed, "seed for sampled sweeps");

  auto* dw = app.add_subcommand("dw", "Dijkgraaf-Witten invariant");
  add_q(dw);
  dw->add_option("manifold", manifold, "s3, s2xs1, t3, lens:<p>:1 or sigma:<g>xs1")->required();

  for (auto* sub : {cat, fuse, braid, smat, ver, dw}) {
    sub->add_option("--format", fmt, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--threads", threads, "worker threads");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  o.format = fmt;
  o.threads = threads ? threads : default_threads();

  try {
    if (*cat) return cmd_catalogue(o);
    if (*fuse) return cmd_fuse(o, l1, l2, oracle);
    if (*braid) return cmd_braid(o, l1, l2, block);
    if (*smat) return cmd_smatrix(o);
    if (*ver) return cmd_verify(o, suite, seed);
    if (*dw) return cmd_dw(o, manifold);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
