#include <cmath>
#include <json.hpp>
#include <memory>
#include <numbers>

#include "common.hpp"
#include "hd/brooks.hpp"
#include "hd/io.hpp"
#include "hd/pattern.hpp"

namespace cli {

using hd::fmt12;
using nlohmann::json;

namespace {

// Volume from every apex agrees; edge angles and incidences are as asked.
void check_pattern(const hd::CombPolyhedron& p, const hd::CirclePattern& pat) {
  require(hd::validate(p).ok, "input is not a valid polyhedron");
  require(hd::incidence_residual(pat) < 1e-9, "incidence residual " + fmt12(hd::incidence_residual(pat)));
  for (double a : hd::pattern_edge_angles(p, pat))
    require(std::abs(a - std::numbers::pi / 2) < 1e-9, "edge angle " + fmt12(a));
  const double v0 = hd::polyhedron_volume(pat, 0);
  for (int v = 1; v < p.vertex_count; ++v) {
    const double v1 = hd::polyhedron_volume(pat, v);
    require(std::abs(v1 - v0) < 1e-8, "volume depends on apex: " + fmt12(v0) + " vs " + fmt12(v1));
  }
}

}  // namespace

void add_enumerate(CLI::App& app) {
  struct Opts {
    std::string seeds = "4";
    int generations = 1;
    int jobs = 1;
    Output out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("enumerate", "basic polyhedra reachable from drums by surgery");
  cmd->add_option("--seeds", o->seeds, "drum sizes, e.g. 4,5 or 3..6")->capture_default_str();
  cmd->add_option("--generations", o->generations, "rounds of surgery")->check(CLI::Range(0, 20))->capture_default_str();
  cmd->add_option("--jobs", o->jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  o->out.add(cmd);
  cmd->callback([o] {
    std::vector<hd::CombPolyhedron> seeds;
    for (int n : parse_range(o->seeds)) seeds.push_back(hd::drum(n));
    const auto all = hd::enumerate_basic(seeds, o->generations, o->jobs);
    if (o->out.check)
      for (std::size_t i = 0; i < all.size(); ++i) {
        require(hd::validate(all[i].rep, true).is_basic, "not basic: " + all[i].code.hex());
        require(hd::canonical_code(all[i].rep) == all[i].code, "code mismatch: " + all[i].code.hex());
        require(i == 0 || all[i - 1].code < all[i].code, "codes not strictly sorted");
      }
    std::string text;
    if (o->out.json) {
      json arr = json::array();
      for (const auto& e : all)
        arr.push_back({{"code", e.code.hex()}, {"polyhedron", json::parse(hd::polyhedron_json(e.rep))}});
      text = arr.dump();
    } else {
      text = "code,vertices,faces\n";
      for (const auto& e : all)
        text += e.code.hex() + "," + std::to_string(e.rep.vertex_count) + "," + std::to_string(e.rep.face_count()) + "\n";
    }
    o->out.emit(text);
  });
}

void add_realize(CLI::App& app) {
  struct Opts {
    Source src;
    Output out;
    std::string svg;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("realize", "right-angled circle pattern and volume");
  o->src.add(cmd);
  o->out.add(cmd, false);
  cmd->add_option("--svg", o->svg, "also write the pattern as SVG");
  cmd->callback([o] {
    const auto p = o->src.load();
    const auto pat = hd::realize(p);
    if (o->out.check) check_pattern(p, pat);
    if (!o->svg.empty()) hd::render_svg(pat, out_path(o->svg));
    const double v = hd::polyhedron_volume(pat);
    if (o->out.json) {
      auto j = json::parse(hd::pattern_json(pat));
      j["volume"] = std::stod(fmt12(v));
      o->out.emit(j.dump());
    } else {
      o->out.emit("volume " + fmt12(v) + "\nresidual " + fmt12(pat.residual) + "\niterations " +
                  std::to_string(pat.iterations) + "\n");
    }
  });
}

void add_render(CLI::App& app) {
  struct Opts {
    Source src;
    double brooks_r = 0.0;
    int brooks_n = 0;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("render", "SVG of a circle pattern");
  o->src.add(cmd);
  auto* r = cmd->add_option("--brooks-r", o->brooks_r, "extended Brooks pattern at this r");
  auto* n = cmd->add_option("--brooks-n", o->brooks_n, "packed pattern of P_n")->check(CLI::PositiveNumber);
  r->excludes(n);
  cmd->add_option("--out", o->out, "SVG file")->required();
  cmd->callback([o] {
    hd::CirclePattern pat;
    if (o->brooks_r > 0) {
      for (const auto& c : hd::extended_pattern(o->brooks_r).circles) pat.normals.push_back(c.nu);
      pat.faces.resize(pat.normals.size());
    } else if (o->brooks_n > 0) {
      pat = hd::build_Pn(o->brooks_n).pattern;
    } else {
      pat = hd::realize(o->src.load());
    }
    hd::render_svg(pat, out_path(o->out));
  });
}

}  // namespace cli
