#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtc {

struct VerifyConfig {
  int q = 5;
  std::string suite = "all";  // fields, chars, fusion, braid, modular, dw, all
  uint64_t seed = 0;
  unsigned threads = 1;
  // Pair sweeps are exhaustive when the catalogue has at most this many
  // simples, otherwise seeded samples of the given sizes.
  size_t exhaustive_limit = 80;
  size_t fusion_samples = 500;
  size_t braid_samples = 300;
  size_t verlinde_samples = 300;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  int q = 0;
  std::string suite;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool ok() const;
};

const std::vector<std::string>& verify_suites();

// Runs the requested suite. Output depends only on (q, suite, seed and the
// sample sizes), never on the thread count. Throws std::invalid_argument for
// an unknown suite.
VerifyReport run_verify(const VerifyConfig& cfg);

}  // namespace mtc
