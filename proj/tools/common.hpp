#pragma once

#include <CLI11.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hd/combin.hpp"

namespace cli {

/// Set by every subcommand: a polyhedron source plus output switches.
struct Source {
  int drum = 0;
  std::string input;

  void add(CLI::App* app);
  hd::CombPolyhedron load() const;
};

struct Output {
  bool json = false;
  bool csv = false;
  bool check = false;
  std::string out;

  void add(CLI::App* app, bool with_csv = true);
  /// Writes to --out (under $HD_OUT_DIR when relative) or stdout.
  void emit(const std::string& text) const;
};

/// Raised for a failed invariant; main turns it into exit code 1.
struct CheckFailed {
  std::string what;
};

void require(bool ok, const std::string& what);

/// Relative paths go under $HD_OUT_DIR when it is set.
std::string out_path(const std::string& path);

/// "top", "bottom" or a face index.
int parse_face(const std::string& s);

/// "3", "1..4" or "1,3,5".
std::vector<int> parse_range(const std::string& s);

std::optional<hd::SurgerySpec> parse_surgery(const std::string& face, const std::vector<int>& edges);

void add_enumerate(CLI::App& app);
void add_realize(CLI::App& app);
void add_render(CLI::App& app);
void add_drill(CLI::App& app);
void add_deform(CLI::App& app);
void add_bounds(CLI::App& app);
void add_brooks(CLI::App& app);
void add_dual_check(CLI::App& app);

}  // namespace cli
