#pragma once

// Pinned reference values, checked bit-exactly by `clusterx verify-paper`.

#include <string>
#include <vector>

namespace clusterx {

struct FixtureResult {
  std::string name;
  std::string group;
  bool passed = false;
  std::string detail;  // expected vs actual on failure
};

struct FixtureOptions {
  std::string filter;            // substring of name or group; empty runs all
  bool perturb_markov = false;   // replace M(2) by a non-Markov matrix (fault injection)
};

std::vector<FixtureResult> verify_paper(const FixtureOptions& options = {});

}  // namespace clusterx
