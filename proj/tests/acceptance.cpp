// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <iostream>
#include <string>

#include "feyncomb/cli.hpp"
#include "feyncomb/selftest.hpp"

namespace {

// Runs the installed binary; stderr is discarded, only stdout and the code are compared.
feyncomb::CliResult spawn(const std::vector<std::string>& args) {
  std::string cmd = FEYNCOMB_CLI;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  feyncomb::CliResult r{-1, "", ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t binary_mismatches(std::size_t& total) {
  std::size_t bad = 0;
  for (auto args : feyncomb::fixture_commands()) {
    const feyncomb::CliResult ref = feyncomb::run_cli(args);
    args.push_back("--threads");
    args.push_back("4");
    for (int rep = 0; rep < 2; ++rep) {
      const feyncomb::CliResult got = spawn(args);
      ++total;
      bad += got.exit_code != ref.exit_code || got.out != ref.out;
    }
  }
  return bad;
}

}  // namespace

int main() {
  auto results = feyncomb::run_acceptance(1);
  std::size_t total = 0;
  const std::size_t bad = binary_mismatches(total);
  for (auto& r : results) {
    if (r.id != 11) continue;
    r.pass = r.pass && bad == 0;
    r.detail += "; binary runs " + std::to_string(total - bad) + "/" + std::to_string(total) + " identical";
  }
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title << "  (" << r.detail << ")\n";
    passed += r.pass;
  }
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == results.size() ? 0 : 1;
}
