#include "common.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "hd/error.hpp"
#include "hd/io.hpp"

namespace cli {

void Source::add(CLI::App* app) {
  auto* d = app->add_option("--drum", drum, "use drum(n)")->check(CLI::Range(3, 1000));
  auto* i = app->add_option("--input", input, "polyhedron JSON file");
  d->excludes(i);
}

hd::CombPolyhedron Source::load() const {
  if (!input.empty()) return hd::polyhedron_from_json(hd::read_file(input));
  if (drum > 0) return hd::drum(drum);
  throw CLI::ValidationError("one of --drum, --input is required");
}

void Output::add(CLI::App* app, bool with_csv) {
  auto* j = app->add_flag("--json", json, "JSON output");
  if (with_csv) app->add_flag("--csv", csv, "CSV output")->excludes(j);
  app->add_flag("--check", check, "run the invariant suite");
  app->add_option("--out", out, "output file");
}

void Output::emit(const std::string& text) const {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  hd::write_file(out_path(out), text);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed{what};
}

std::string out_path(const std::string& path) {
  const char* dir = std::getenv("HD_OUT_DIR");
  if (!dir || !*dir || std::filesystem::path(path).is_absolute()) return path;
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / path).string();
}

int parse_face(const std::string& s) {
  if (s == "top") return 0;
  if (s == "bottom") return 1;
  try {
    std::size_t used = 0;
    const int f = std::stoi(s, &used);
    if (used == s.size() && f >= 0) return f;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--face", "expected top, bottom or a face index, got " + s);
}

std::vector<int> parse_range(const std::string& s) {
  std::vector<int> out;
  try {
    if (const auto dots = s.find(".."); dots != std::string::npos) {
      const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
      for (int k = a; k <= b; ++k) out.push_back(k);
    } else {
      std::size_t pos = 0;
      while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("bad range " + s);
  }
  if (out.empty()) throw CLI::ValidationError("empty range " + s);
  return out;
}

std::optional<hd::SurgerySpec> parse_surgery(const std::string& face, const std::vector<int>& edges) {
  if (face.empty() && edges.empty()) return std::nullopt;
  if (face.empty() || edges.size() != 2) throw CLI::ValidationError("--face needs --edges a,b and vice versa");
  return hd::SurgerySpec{parse_face(face), edges[0], edges[1]};
}

}  // namespace cli
