#pragma once

// The acceptance corpus: one result per criterion.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace feyncomb {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::string& fixture_dir = FEYNCOMB_FIXTURE_DIR);

/// Every CLI invocation exercised by the determinism criterion.
std::vector<std::vector<std::string>> fixture_commands(const std::string& fixture_dir = FEYNCOMB_FIXTURE_DIR);

/// Prints "PASS|FAIL  <id>  <title>  (<detail>)" lines and a summary.
bool run_selftest(std::ostream& out, std::uint64_t seed);

}  // namespace feyncomb
