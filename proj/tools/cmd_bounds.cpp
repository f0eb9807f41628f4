#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <memory>
#include <numbers>

#include "common.hpp"
#include "hd/bounds.hpp"
#include "hd/io.hpp"

namespace cli {

using hd::fmt12;
using nlohmann::json;

namespace {

// One polyhedron, or the inventory generated from drums.
struct Inventory {
  Source src;
  std::string seeds;
  int generations = 1;

  void add(CLI::App* cmd) {
    src.add(cmd);
    cmd->add_option("--inventory", seeds, "drum sizes seeding the inventory, e.g. 4,5,6");
    cmd->add_option("--generations", generations, "surgery rounds for --inventory")->capture_default_str();
  }
  std::vector<hd::CombPolyhedron> load(int jobs) const {
    if (seeds.empty()) return {src.load()};
    std::vector<hd::CombPolyhedron> s;
    for (int n : parse_range(seeds)) s.push_back(hd::drum(n));
    std::vector<hd::CombPolyhedron> out;
    for (const auto& e : hd::enumerate_basic(s, generations, jobs)) out.push_back(e.rep);
    return out;
  }
};

json verdict_json(const hd::DrillVerdict& v) {
  auto r = [](double x) { return std::stod(fmt12(x)); };
  return {{"code", v.code},          {"face", v.spec.face},       {"e1", v.spec.e1},
          {"e2", v.spec.e2},         {"face_n", v.face_n},        {"l", r(v.l)},
          {"V", r(v.v_before)},      {"V_drilled", r(v.v_after)}, {"dV", r(v.dv)},
          {"pi_bound", r(v.bound_pi)}, {"K_bound", r(v.bound_k)}, {"dV_cover", r(v.dv_cover)},
          {"L", r(v.big_l)},         {"pass_pi", v.pass_positive && v.pass_pi},
          {"pass_K", v.pass_k},      {"pass_cover", v.pass_cover}};
}

}  // namespace

void add_drill(CLI::App& app) {
  struct Opts {
    Inventory inv;
    std::string face;
    std::vector<int> edges;
    int jobs = 1;
    Output out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("drill", "volume change under surgery against the bounds");
  o->inv.add(cmd);
  cmd->add_option("--face", o->face, "top, bottom or a face index");
  cmd->add_option("--edges", o->edges, "two edge positions in the face")->delimiter(',')->expected(2);
  cmd->add_option("--jobs", o->jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  o->out.add(cmd);
  cmd->callback([o] {
    const auto spec = parse_surgery(o->face, o->edges);
    std::vector<hd::DrillVerdict> rows;
    if (spec) {
      if (!o->inv.seeds.empty()) throw CLI::ValidationError("--face and --inventory exclude each other");
      rows.push_back(hd::drill_report(o->inv.src.load(), *spec));
    } else {
      rows = hd::drill_inventory(o->inv.load(o->jobs), o->jobs);
    }
    if (o->out.json) {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(verdict_json(r));
      o->out.emit(arr.dump());
    } else {
      o->out.emit(hd::drill_csv(rows));
    }
    for (const auto& r : rows) {
      const std::string at = r.code + " face " + std::to_string(r.spec.face) + " edges " + std::to_string(r.spec.e1) +
                             "," + std::to_string(r.spec.e2);
      require(r.pass_positive && r.pass_pi, "dV <= (pi/2) l fails at " + at);
      require(r.pass_k, "dV <= K (n-3) fails at " + at);
      if (o->out.check) require(r.pass_cover, "cover chain fails at " + at);
    }
  });
}

void add_deform(CLI::App& app) {
  struct Opts {
    Source src;
    std::string face = "top";
    std::vector<int> edges{0, 2};
    double from = 0.1, to = std::numbers::pi / 2, step = 1e-2;
    double tol = 1e-4;
    Output out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("deform", "bending family: l and volume against theta");
  o->src.add(cmd);
  cmd->add_option("--face", o->face, "face to bend")->capture_default_str();
  cmd->add_option("--edges", o->edges, "edge positions")->delimiter(',')->expected(2);
  cmd->add_option("--from", o->from, "grid lower end (excluded)")->capture_default_str();
  cmd->add_option("--to", o->to, "grid upper end (included)")->capture_default_str();
  cmd->add_option("--step", o->step, "grid step")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--tol", o->tol, "Schlafli residual tolerance for --check")->capture_default_str();
  o->out.add(cmd);
  cmd->callback([o] {
    if (!(o->from < o->to)) throw CLI::ValidationError("--from must be below --to");
    const auto p = o->src.load();
    const hd::SurgerySpec b = *parse_surgery(o->face, o->edges);
    std::vector<double> grid;
    for (int k = 0;; ++k) {
      const double t = o->to - k * o->step;
      if (t <= o->from + 1e-12) break;
      grid.push_back(t);
    }
    std::reverse(grid.begin(), grid.end());
    const auto fam = hd::deform_family(p, b, grid);
    const double res = fam.size() >= 3 ? hd::schlafli_residual(fam) : 0.0;
    if (o->out.json) {
      json s = json::array();
      for (const auto& x : fam)
        s.push_back({{"theta", std::stod(fmt12(x.theta))}, {"l", std::stod(fmt12(x.l))}, {"V", std::stod(fmt12(x.volume))}});
      o->out.emit(json{{"samples", s}, {"schlafli_residual", std::stod(fmt12(res))}}.dump());
    } else {
      std::string text = "theta,l,V\n";
      for (const auto& x : fam) text += fmt12(x.theta) + "," + fmt12(x.l) + "," + fmt12(x.volume) + "\n";
      o->out.emit(text);
    }
    if (o->out.check) {
      require(res < o->tol, "Schlafli residual " + fmt12(res));
      for (std::size_t i = 1; i < fam.size(); ++i) {
        require(fam[i].l > fam[i - 1].l, "l not increasing at theta " + fmt12(fam[i].theta));
        require(fam[i].volume < fam[i - 1].volume, "V not decreasing at theta " + fmt12(fam[i].theta));
      }
    }
  });
}

void add_bounds(CLI::App& app) {
  struct Opts {
    Inventory inv;
    int jobs = 1;
    Output out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("bounds", "thin-polygon inequality on every face and perpendicular");
  o->inv.add(cmd);
  cmd->add_option("--jobs", o->jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  o->out.add(cmd);
  cmd->callback([o] {
    const double k = hd::combinatorial_K();
    json rows = json::array();
    std::string text = "polyhedron_code,face,n,e1,e2,l,d,lhs,pass\n";
    bool all = true;
    for (const auto& p : o->inv.load(o->jobs)) {
      const auto code = hd::canonical_code(p).hex();
      const auto pat = hd::realize(p);
      for (int f = 0; f < pat.face_count(); ++f) {
        const int n = static_cast<int>(pat.faces[f].size());
        if (n < 4) continue;
        for (int a = 0; a < n; ++a)
          for (int b = a + 2; b < n; ++b) {
            if (a == 0 && b == n - 1) continue;
            const auto r = hd::thin_polygon_check(pat, f, a, b);
            all = all && r.pass;
            text += code + "," + std::to_string(f) + "," + std::to_string(n) + "," + std::to_string(a) + "," +
                    std::to_string(b) + "," + fmt12(r.l) + "," + fmt12(r.d) + "," + fmt12(r.lhs) + "," +
                    (r.pass ? "1" : "0") + "\n";
            rows.push_back({{"code", code}, {"face", f}, {"n", n}, {"e1", a}, {"e2", b}, {"l", std::stod(fmt12(r.l))},
                            {"d", std::stod(fmt12(r.d))}, {"lhs", std::stod(fmt12(r.lhs))}, {"pass", r.pass}});
          }
      }
    }
    if (o->out.json)
      o->out.emit(json{{"K", std::stod(fmt12(k))}, {"faces", rows}}.dump());
    else
      o->out.emit(text);
    require(all, "thin-polygon inequality fails");
    if (o->out.check) {
      const double catalan = 0.915965594177219015054603514932;
      require(std::abs(k - 4 * catalan * std::numbers::pi / (std::numbers::pi - 2)) < 1e-10, "K " + fmt12(k));
    }
  });
}

}  // namespace cli
