#pragma once

#include <string>
#include <vector>

namespace acceptance {

struct Outcome {
  bool pass = true;
  std::string report;  ///< deterministic; no timings

  void check(bool ok, const std::string& what);
  void line(const std::string& text) { report += text + "\n"; }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  Outcome (*run)();
};

std::vector<Criterion> criteria();

}  // namespace acceptance
