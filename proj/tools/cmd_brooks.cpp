#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <memory>
#include <numbers>

#include "common.hpp"
#include "hd/bounds.hpp"
#include "hd/brooks.hpp"
#include "hd/dual.hpp"
#include "hd/io.hpp"

namespace cli {

using hd::fmt12;
using nlohmann::json;

void add_brooks(CLI::App& app) {
  struct Opts {
    std::string n = "1..4";
    double a = 1.0;
    int jobs = 1;
    std::string svg_dir;
    Output out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("brooks", "the P_n family: r_n, pinched length and volume change");
  cmd->add_option("--n", o->n, "row counts, e.g. 3 or 1..6")->capture_default_str();
  cmd->add_option("--a", o->a, "exponent in dV / l^a")->capture_default_str();
  cmd->add_option("--jobs", o->jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--svg-dir", o->svg_dir, "write P_<n>.svg for every n");
  o->out.add(cmd);
  cmd->callback([o] {
    const auto ns = parse_range(o->n);
    for (int n : ns)
      if (n < 1) throw CLI::ValidationError("--n", "row counts start at 1");
    const auto rows = hd::family_experiment(ns, o->a, o->jobs);
    if (!o->svg_dir.empty()) {
      const auto dir = out_path(o->svg_dir);
      std::filesystem::create_directories(dir);
      for (int n : ns) hd::render_svg(hd::build_Pn(n).pattern, (std::filesystem::path(dir) / ("P_" + std::to_string(n) + ".svg")).string());
    }
    if (o->out.json) {
      json arr = json::array();
      auto r12 = [](double x) { return std::stod(fmt12(x)); };
      for (const auto& r : rows)
        arr.push_back({{"n", r.n}, {"r_n", r12(r.r)}, {"l_n", r12(r.l)}, {"V_Pn", r12(r.v)},
                       {"V_Pn_prime", r12(r.v_prime)}, {"dV", r12(r.dv)}, {"K_bound", r12(r.k_bound)},
                       {"ratio", r12(r.ratio)}});
      o->out.emit(arr.dump());
    } else {
      o->out.emit(hd::family_csv(rows));
    }
    for (const auto& r : rows) {
      require(r.dv > 0, "dV <= 0 at n = " + std::to_string(r.n));
      require(r.dv <= r.k_bound, "dV > K at n = " + std::to_string(r.n));
    }
    if (o->out.check) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cf = hd::greedy_cfrac(hd::funnel_quad(rows[i].r));
        require(cf.terminated && cf.digits == std::vector<int>{rows[i].n}, "c(Q_r) != n at n = " + std::to_string(rows[i].n));
        if (i == 0 || rows[i].n != rows[i - 1].n + 1) continue;
        require(rows[i].l > rows[i - 1].l, "l_n not increasing at n = " + std::to_string(rows[i].n));
        require(rows[i].ratio < rows[i - 1].ratio, "dV/l^a not decreasing at n = " + std::to_string(rows[i].n));
      }
    }
  });
}

void add_dual_check(CLI::App& app) {
  struct Opts {
    Source src;
    std::string face = "top";
    std::vector<int> edges{0, 2};
    double theta = std::numbers::pi / 2;
    double t = 0.05;
    int budget = 8;
    Output out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("dual-check", "cone angles and short geodesics of the scaled dual surface");
  o->src.add(cmd);
  cmd->add_option("--face", o->face, "bent face")->capture_default_str();
  cmd->add_option("--edges", o->edges, "edge positions")->delimiter(',')->expected(2);
  cmd->add_option("--theta", o->theta, "bending angle")->capture_default_str();
  cmd->add_option("--t", o->t, "scaling parameter")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--budget", o->budget, "edge budget of the geodesic search")->check(CLI::Range(3, 16))->capture_default_str();
  o->out.add(cmd, false);
  cmd->callback([o] {
    if (o->src.drum == 0 && o->src.input.empty()) o->src.drum = 4;
    const auto p = o->src.load();
    const auto s = hd::scale_and_polarize(hd::bent_dual(p, *parse_surgery(o->face, o->edges), o->theta), o->t);
    const auto rep = hd::check_surface(s);
    const auto ca = hd::cone_angles(s);
    const double min_angle = *std::min_element(ca.angles.begin(), ca.angles.end());
    const auto g = hd::edge_geodesic_search(s, o->budget);
    const double two_pi = 2 * std::numbers::pi;
    std::string status;
    if (!rep.ok)
      status = "broken";
    else if (g && std::abs(g->length - two_pi) < 1e-12)
      status = "boundary";
    else if (ca.deficient.empty() && min_angle > two_pi && (!g || g->length > two_pi))
      status = "pass";
    else
      status = "fail";
    if (o->out.json) {
      json j = json::parse(hd::cone_surface_json(s));
      j["status"] = status;
      j["min_cone_angle"] = std::stod(fmt12(min_angle));
      j["geodesic"] = g ? json(std::stod(fmt12(g->length))) : json(nullptr);
      o->out.emit(j.dump());
    } else {
      o->out.emit("status " + status + "\nmin_cone_angle " + fmt12(min_angle) + "\ndeficient " +
                  std::to_string(ca.deficient.size()) + "\nshortest_geodesic " + (g ? fmt12(g->length) : "none") + "\n");
    }
    for (const auto& f : rep.failures) require(false, f);
    require(status != "fail", "cone angle or geodesic condition fails");
    if (o->out.check) require(std::abs(hd::gauss_bonnet_defect(s)) < 1e-8, "Gauss-Bonnet defect");
  });
}

}  // namespace cli
