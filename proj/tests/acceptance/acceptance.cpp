#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "dtlab/rational.hpp"
#include "dtlab/suites.hpp"

#ifndef DTLAB_CLI_PATH
#error "DTLAB_CLI_PATH must point at the dtlab executable"
#endif

namespace {

constexpr std::uint64_t kSeed = 7;

// Wall-clock limits in seconds, where one applies.
const std::map<int, double> kLimits{{1, 120}, {4, 60}, {9, 300}};

struct Captured {
  std::string out;
  int status = -1;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  c.status = pclose(pipe);
  return c;
}

}  // namespace

int main() {
  int failed = 0;
  for (int id = 1; id <= dtlab::kLibraryCriteria; ++id) {
    const auto start = std::chrono::steady_clock::now();
    const auto res = dtlab::run_criterion(id, kSeed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = res.pass;
    std::string timing;
    if (const auto it = kLimits.find(id); it != kLimits.end()) {
      const bool in_time = secs < it->second;
      pass = pass && in_time;
      char line[96];
      std::snprintf(line, sizeof line, " [%.1fs, limit %.0fs%s]", secs, it->second, in_time ? "" : ", exceeded");
      timing = line;
    } else {
      char line[32];
      std::snprintf(line, sizeof line, " [%.1fs]", secs);
      timing = line;
    }
    std::cout << (pass ? "PASS" : "FAIL") << ' ' << id << ' ' << res.title << ": " << res.summary << timing << '\n';
    for (const auto& note : res.notes) std::cout << "    note: " << note << '\n';
    std::size_t shown = 0;
    for (const auto& f : res.failures) {
      if (++shown > 5) {
        std::cout << "    ... " << res.failures.size() - 5 << " more failures\n";
        break;
      }
      std::cout << "    fail: " << f.name << ' ' << dtlab::to_string(f.lhs) << ' ' << dtlab::to_string(f.relation)
                << ' ' << dtlab::to_string(f.rhs) << " [" << f.context << "]\n";
    }
    if (!pass) ++failed;
  }

  const std::string cmd = std::string(DTLAB_CLI_PATH) + " bench --seed 7";
  const auto a = capture(cmd);
  const auto b = capture(cmd);
  const bool same = a.status == 0 && b.status == 0 && !a.out.empty() && a.out == b.out;
  std::cout << (same ? "PASS" : "FAIL") << " 12 Determinism: bench --seed 7 twice, " << a.out.size() << " bytes, "
            << (same ? "identical" : "different or failed") << '\n';
  if (!same) ++failed;

  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
  return failed == 0 ? 0 : 1;
}
