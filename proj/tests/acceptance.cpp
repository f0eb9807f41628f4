#include "acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace acceptance {

void Outcome::check(bool ok, const std::string& what) {
  if (ok) return;
  pass = false;
  report += "FAILED: " + what + "\n";
}

}  // namespace acceptance

// Usage: acceptance [report-dir]
int main(int argc, char** argv) {
  using clock = std::chrono::steady_clock;
  const auto all = acceptance::criteria();
  std::vector<std::string> first;
  bool ok = true;
  for (const auto& c : all) {
    const auto t0 = clock::now();
    auto out = c.run();
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    ok = ok && pass;
    std::printf("%s  %2d  %-28s %8.2f s (budget %g s)%s\n", pass ? "PASS" : "FAIL", c.id, c.title, secs, c.budget_s,
                in_time ? "" : "  over budget");
    if (!out.pass) std::printf("%s", out.report.c_str());
    std::fflush(stdout);
    if (argc > 1) {
      std::filesystem::create_directories(argv[1]);
      std::ofstream(std::filesystem::path(argv[1]) / ("criterion_" + std::to_string(c.id) + ".txt")) << out.report;
    }
    first.push_back(std::move(out.report));
  }

  // second run, byte comparison of every report
  std::string diff;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].run().report != first[i]) diff += " " + std::to_string(all[i].id);
  const bool same = diff.empty();
  ok = ok && same;
  std::printf("%s  11  %-28s%s\n", same ? "PASS" : "FAIL", "determinism (two runs)",
              same ? "" : (" reports differ:" + diff).c_str());
  return ok ? 0 : 1;
}
