#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "brooks_detail.hpp"
#include "hd/bounds.hpp"
#include "hd/brooks.hpp"
#include "hd/error.hpp"

namespace hd {

using detail::touch;
using detail::ring;
using detail::unit;

namespace {

constexpr double kOn = 1e-9;  // a circle passes through a point

std::string triple_label(const TangencyGraph& g, int a, int b, int c) {
  return "T(" + g.circles[a].label + "," + g.circles[b].label + "," + g.circles[c].label + ")";
}

bool strictly_inside(const Mink& region, const std::array<Mink, 3>& sides, Mink p) {
  if (p[3] < 0) p = mink_scale(p, -1.0);
  p = mink_scale(p, 2.0 / p[3]);
  if (!(mink_dot(region, p) > kOn)) return false;
  for (const auto& s : sides)
    if (!(mink_dot(s, p) < -kOn)) return false;
  return true;
}

bool open_interstice(const TangencyGraph& g, int a, int b, int c, const Mink& region) {
  const std::array<Mink, 3> s{g.circles[a].nu, g.circles[b].nu, g.circles[c].nu};
  const std::array<Mink, 3> t{touch(s[0], s[1]), touch(s[1], s[2]), touch(s[2], s[0])};
  Mink in;
  try {
    in = detail::apollonius_toward(s[0], s[1], s[2], region);
  } catch (const Error&) {
    return false;
  }
  for (int o = 0; o < static_cast<int>(g.circles.size()); ++o) {
    if (o == a || o == b || o == c) continue;
    const Mink& nu = g.circles[o].nu;
    for (const auto& corner : t)
      if (std::abs(mink_dot(nu, corner)) < kOn && mink_dot(nu, region) > 0.0) return false;
    if (mink_dot(in, nu) > -1 + kOn) return false;
    for (const auto& p : ring(nu, 64))
      if (strictly_inside(region, s, p)) return false;
  }
  return true;
}

}  // namespace

TangencyGraph truncate_interstices(const TangencyGraph& g) {
  const int n = static_cast<int>(g.circles.size());
  auto tangent = [&](int a, int b) { return g.between(a, b).contact == Contact::Tangent; };
  std::vector<LabeledCircle> out = g.circles;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (!tangent(a, b)) continue;
      for (int c = b + 1; c < n; ++c) {
        if (!tangent(b, c) || !tangent(a, c)) continue;
        const Mink& na = g.circles[a].nu;
        const Mink& nb = g.circles[b].nu;
        const Mink& nc = g.circles[c].nu;
        const Mink k = unit(mink_cross(touch(na, nb), touch(nb, nc), touch(nc, na)));
        for (double sign : {1.0, -1.0}) {
          const Mink region = mink_scale(k, sign);
          if (!open_interstice(g, a, b, c, region)) continue;
          for (const Mink* side : {&na, &nb, &nc})
            if (std::abs(mink_dot(region, *side)) > 1e-10)
              throw Error(ErrorKind::ConstructionViolated, "truncation circle " + triple_label(g, a, b, c) + " is off by " + std::to_string(mink_dot(region, *side)));
          out.push_back({triple_label(g, a, b, c), region});
        }
      }
    }
  TangencyGraph res = TangencyGraph::from_circles(std::move(out));

  // every cusp must now be closed on both sides
  const int m = static_cast<int>(res.circles.size());
  for (const auto& inc : res.incidences) {
    if (inc.contact != Contact::Tangent) continue;
    const Mink t = touch(res.circles[inc.a].nu, res.circles[inc.b].nu);
    std::vector<int> through;
    for (int o = 0; o < m; ++o)
      if (o != inc.a && o != inc.b && std::abs(mink_dot(res.circles[o].nu, t)) < kOn) through.push_back(o);
    const bool closed = through.size() == 2 && res.between(through[0], through[1]).contact == Contact::Tangent &&
                        res.between(through[0], inc.a).contact == Contact::Orthogonal &&
                        res.between(through[1], inc.a).contact == Contact::Orthogonal;
    if (!closed)
      throw Error(ErrorKind::NonTriangular, "open cusp between " + res.circles[inc.a].label + " and " +
                                                res.circles[inc.b].label);
  }
  return res;
}

Extracted extract_polyhedron(const TangencyGraph& g) {
  const int n = static_cast<int>(g.circles.size());
  struct Vertex {
    Mink t;
    std::vector<std::pair<int, int>> pairs;
  };
  std::vector<Vertex> verts;
  for (const auto& inc : g.incidences) {
    if (inc.contact == Contact::Crossing || inc.contact == Contact::Overlap)
      throw Error(ErrorKind::ExtractionInconsistency,
                  g.circles[inc.a].label + " and " + g.circles[inc.b].label + " overlap");
    if (inc.contact != Contact::Tangent) continue;
    const Mink t = touch(g.circles[inc.a].nu, g.circles[inc.b].nu);
    auto it = std::find_if(verts.begin(), verts.end(), [&](const Vertex& v) {
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(v.t[i] - t[i]));
      return d < 1e-7;
    });
    if (it == verts.end()) {
      verts.push_back({t, {}});
      it = verts.end() - 1;
    }
    it->pairs.emplace_back(inc.a, inc.b);
  }

  std::map<std::pair<int, int>, int> right_angles;
  std::vector<std::vector<int>> on(n);
  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    const auto& vx = verts[v];
    if (vx.pairs.size() != 2)
      throw Error(ErrorKind::ExtractionInconsistency, "tangency point without an opposite pair");
    const auto [a, c] = vx.pairs[0];
    const auto [b, d] = vx.pairs[1];
    int through = 0;
    for (int o = 0; o < n; ++o)
      if (std::abs(mink_dot(g.circles[o].nu, vx.t)) < kOn) ++through;
    if (through != 4) throw Error(ErrorKind::ExtractionInconsistency, "vertex not on exactly four circles");
    for (int x : {a, c})
      for (int y : {b, d}) {
        if (g.between(x, y).contact != Contact::Orthogonal)
          throw Error(ErrorKind::ExtractionInconsistency, "neighbouring circles not at right angles");
        ++right_angles[{std::min(x, y), std::max(x, y)}];
      }
    for (int x : {a, b, c, d}) on[x].push_back(v);
  }
  for (const auto& inc : g.incidences)
    if (inc.contact == Contact::Orthogonal && right_angles[{inc.a, inc.b}] != 2)
      throw Error(ErrorKind::ExtractionInconsistency,
                  g.circles[inc.a].label + " crosses " + g.circles[inc.b].label + " away from vertices");

  Extracted ex;
  ex.poly.vertex_count = static_cast<int>(verts.size());
  for (const auto& vx : verts) ex.pattern.points.push_back(point_from_null(vx.t));
  for (int f = 0; f < n; ++f) {
    // counterclockwise around the disk
    const GenCircle c = g.circles[f].circle();
    std::vector<std::pair<double, int>> keyed;
    for (int v : on[f]) {
      const ComplexPoint& p = ex.pattern.points[v];
      double key;
      if (c.is_line)
        key = p.inf ? HUGE_VAL : (p.z * std::conj(cplx(0, -1) * c.normal)).real();
      else
        key = std::arg(p.z - c.center) * (c.flipped ? -1.0 : 1.0);
      keyed.emplace_back(key, v);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> face;
    for (const auto& kv : keyed) face.push_back(kv.second);
    ex.poly.faces.push_back(face);
    ex.pattern.faces.push_back(face);
    ex.pattern.normals.push_back(g.circles[f].nu);
  }
  const auto report = validate(ex.poly, true);
  if (!report.ok)
    throw Error(ErrorKind::ExtractionInconsistency,
                "not a basic polyhedron: " + (report.failures.empty() ? std::string() : report.failures.front()));
  ex.pattern.residual = incidence_residual(ex.pattern);
  return ex;
}

BuiltPn build_Pn(int n, const SolveOptions& opt) {
  BuiltPn b;
  b.n = n;
  b.r = solve_r(n, opt);
  const Mobius frame = balanced_frame(b.r);
  std::vector<LabeledCircle> circles = extended_pattern(b.r, frame).circles;
  const auto funnels = funnel_quads(b.r, frame);
  for (std::size_t k = 0; k < funnels.size(); ++k) {
    const GreedyPacking pack = greedy_packing(funnels[k], 1);
    if (!pack.cf.terminated || pack.cf.digits != std::vector<int>{n})
      throw Error(ErrorKind::ConstructionViolated, "funnel " + std::to_string(k) + " does not pack as [n]");
    for (std::size_t j = 0; j < pack.circles.size(); ++j)
      circles.push_back({"D" + std::to_string(k) + "." + std::to_string(j + 1), pack.circles[j]});
  }
  b.graph = truncate_interstices(TangencyGraph::from_circles(std::move(circles)));
  Extracted ex = extract_polyhedron(b.graph);
  if (!(ex.pattern.residual < 1e-9))
    throw Error(ErrorKind::ConstructionViolated, "assembled pattern residual " + std::to_string(ex.pattern.residual));
  b.poly = std::move(ex.poly);
  b.pattern = std::move(ex.pattern);

  b.face_c0 = b.graph.find("C0");
  const int c2 = b.graph.find("C2"), c2p = b.graph.find("C2'");
  const auto& f = b.poly.faces[b.face_c0];
  if (f.size() != 4) throw Error(ErrorKind::ConstructionViolated, "C0 face is not a quadrilateral");
  auto along = [&](int face, int i) {
    const auto& g = b.poly.faces[face];
    const int u = f[i], v = f[(i + 1) % f.size()];
    return std::find(g.begin(), g.end(), u) != g.end() && std::find(g.begin(), g.end(), v) != g.end();
  };
  int e1 = -1, e2 = -1;
  for (int i = 0; i < 4; ++i) {
    if (along(c2, i)) e1 = i;
    if (along(c2p, i)) e2 = i;
  }
  if (e1 < 0 || e2 < 0) throw Error(ErrorKind::ConstructionViolated, "C2 or C2' does not border the C0 face");
  b.pinch = {b.face_c0, std::min(e1, e2), std::max(e1, e2)};
  return b;
}

std::vector<FamilyRow> family_experiment(const std::vector<int>& ns, double a, int jobs) {
  const double k = combinatorial_K();
  std::vector<FamilyRow> rows(ns.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  auto run = [&] {
    for (std::size_t i; (i = next++) < ns.size();) {
      try {
        const BuiltPn b = build_Pn(ns[i]);
        FamilyRow& row = rows[i];
        row.n = b.n;
        row.r = b.r;
        row.l = face_perp_length(b.pattern, b.pinch.face, b.pinch.e1, b.pinch.e2);
        row.v = polyhedron_volume(b.pattern);
        row.v_prime = polyhedron_volume(realize(surgery(b.poly, b.pinch)));
        row.dv = row.v_prime - row.v;
        row.k_bound = k * (4 - 3);
        row.ratio = row.dv / std::pow(row.l, a);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(jobs, 1); ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string family_csv(const std::vector<FamilyRow>& rows) {
  std::string out = "n,r_n,l_n,V_Pn,V_Pn_prime,dV,K_bound,ratio\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.n, r.r, r.l, r.v, r.v_prime,
                  r.dv, r.k_bound, r.ratio);
    out += buf;
  }
  return out;
}

}  // namespace hd
