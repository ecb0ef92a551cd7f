// One PASS/FAIL line per acceptance criterion, with wall time and budget.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "mtc/catalog.hpp"
#include "mtc/fusion.hpp"
#include "mtc/verify.hpp"

using namespace mtc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

VerifyReport verify(int q, const std::string& suite) {
  VerifyConfig cfg;
  cfg.q = q;
  cfg.suite = suite;
  cfg.seed = 7;
  cfg.threads = default_threads();
  return run_verify(cfg);
}

// All checks whose name contains one of the fragments (or every check when
// no fragment is given) must pass, and at least one must match.
Outcome require(const VerifyReport& r, std::initializer_list<const char*> fragments = {}) {
  Outcome o;
  size_t matched = 0;
  for (const auto& c : r.checks) {
    bool hit = fragments.size() == 0;
    for (const char* f : fragments) hit = hit || c.name.find(f) != std::string::npos;
    if (!hit) continue;
    ++matched;
    if (!c.pass) {
      o.pass = false;
      o.detail += " [q=" + std::to_string(r.q) + " " + c.suite + ": " + c.name + " " + c.detail + "]";
    }
  }
  if (matched == 0) {
    o.pass = false;
    o.detail += " [q=" + std::to_string(r.q) + " " + r.suite + ": no matching checks]";
  }
  return o;
}

Outcome merge(Outcome a, const Outcome& b) {
  a.pass = a.pass && b.pass;
  a.detail += b.detail;
  return a;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  auto criterion = [&](int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string(" [exception: ") + e.what() + "]"};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > budget_s) {
      o.pass = false;
      o.detail += " [over time budget]";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%.2f s, budget %.0f s)%s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
                budget_s, o.detail.c_str());
    std::fflush(stdout);
  };

  criterion(1, "catalogue size and sum of d^2 at q=5 and q=13", 1, [] {
    Outcome o;
    for (auto [q, want] : {std::pair{5, size_t{74}}, std::pair{13, size_t{282}}}) {
      Catalog cat(std::make_shared<SL2>(make_field(q)));
      int64_t order = static_cast<int64_t>(q) * (static_cast<int64_t>(q) * q - 1);
      int64_t sum = 0;
      for (const auto& s : cat.simples()) sum += s.qdim * s.qdim;
      if (cat.size() != want || sum != order * order) {
        o.pass = false;
        o.detail += " [q=" + std::to_string(q) + " size " + std::to_string(cat.size()) + " sum " +
                    std::to_string(sum) + "]";
      }
    }
    return o;
  });

  criterion(2, "character suite, q=5 and q=13 in full", 10 + 300, [] {
    return merge(require(verify(5, "chars")), require(verify(13, "chars")));
  });

  VerifyReport fusion5;
  criterion(3, "closed-form fusion = oracle, all pairs at q=5 and 500 seeded pairs at q=13", 60 + 120, [&] {
    fusion5 = verify(5, "fusion");
    return merge(require(fusion5, {"closed forms = oracle"}), require(verify(13, "fusion"), {"closed forms = oracle"}));
  });

  criterion(4, "central-block spot values at q=5", 5, [&] {
    return require(fusion5, {"A(1,2) x A(1,2)", "C(1,1) x"});
  });

  criterion(5, "double braiding and block traces over all non-central pairs at q=5", 600, [] {
    return require(verify(5, "braid"));
  });

  criterion(6, "modular relations and Verlinde on all pairs at q=5", 300, [] {
    return require(verify(5, "modular"));
  });

  criterion(7, "Dijkgraaf-Witten invariants at q=5 and q=13", 120, [] {
    return merge(require(verify(5, "dw")), require(verify(13, "dw")));
  });

  criterion(8, "verify 5 --suite all --seed 7 is byte-identical across runs", 120, [] {
    const std::string cmd = std::string("\"") + MTC_CLI_PATH + "\" verify 5 --suite all --seed 7";
    int s1 = 0, s2 = 0;
    std::string a = run_capture(cmd, s1);
    std::string b = run_capture(cmd, s2);
    Outcome o;
    if (s1 != 0 || s2 != 0) {
      o.pass = false;
      o.detail = " [nonzero exit status]";
    }
    if (a.empty() || a != b) {
      o.pass = false;
      o.detail += " [reports differ]";
    }
    return o;
  });

  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
