// Prints one line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "spr/acceptance.hpp"

int main(int argc, char** argv) {
  spr::acceptance::Options opts;
  bool verbose = false;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "-v") verbose = true;
    else if (a == "--seed" && i + 1 < argc) opts.plan.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (a == "--only" && i + 1 < argc) only.push_back(std::atoi(argv[++i]));
  }
  int failed = 0;
  int ran = 0;
  for (int k = 1; k <= spr::acceptance::criterion_count(); ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
    const auto c = spr::acceptance::run_criterion(k, opts);
    std::printf("AC%-2d %s  %s (%.1f s)\n", c.number, c.passed ? "PASS" : "FAIL", c.title.c_str(), c.seconds);
    if (verbose || !c.passed) {
      for (const auto& n : c.notes) std::printf("      %s\n", n.c_str());
    }
    std::fflush(stdout);
    failed += c.passed ? 0 : 1;
    ++ran;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
