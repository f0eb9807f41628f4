#include <algorithm>
#include <cmath>
#include <numbers>

#include "hd/error.hpp"
#include "hd/pattern.hpp"
#include "solver.hpp"

namespace hd {

namespace {

constexpr double kPi = std::numbers::pi;

bool contains_vertex(const std::vector<int>& f, int v) { return std::find(f.begin(), f.end(), v) != f.end(); }

struct BentSystem {
  SurgeryResult sd;
  detail::Constraints c;
  int f1 = -1, f2 = -1;  // halves containing e1's head and e2's head
  int pair_index = -1;   // position of the (F1, F2) pair
};

BentSystem bent_system(const CombPolyhedron& p, const BendSpec& b) {
  BentSystem s;
  s.sd = surgery_detail(p, b);
  const auto& q = s.sd.poly;
  const int w = s.sd.new_vertex;
  s.f1 = contains_vertex(q.faces[s.sd.face_a], s.sd.e1_v) ? s.sd.face_a : s.sd.face_b;
  s.f2 = s.f1 == s.sd.face_a ? s.sd.face_b : s.sd.face_a;
  s.c.faces = q.face_count();
  s.c.vertices = q.vertex_count;
  s.c.pinned.assign(q.vertex_count, false);
  s.c.active.assign(q.vertex_count, true);
  s.c.active[w] = false;
  for (const auto& f : q.faces) {
    std::vector<int> inc;
    for (int v : f)
      if (v != w) inc.push_back(v);
    s.c.incident.push_back(std::move(inc));
  }
  for (const auto& e : edges_of(q)) s.c.pairs.emplace_back(e.face_left, e.face_right, kPi / 2);
  s.pair_index = static_cast<int>(s.c.pairs.size());
  s.c.pairs.emplace_back(s.f1, s.f2, 0.0);
  return s;
}

struct State {
  std::vector<Mink> nu;
  std::vector<cplx> z;
};

BentResult assemble(const BentSystem& s, const State& st, double theta, double residual, int iterations,
                    const std::vector<int>& gauge) {
  const int w = s.sd.new_vertex;
  const auto& q = s.sd.poly;
  const Mink v1 = tri_plane_vertex(st.nu[s.f1], st.nu[s.f2], st.nu[s.sd.across_e1]);
  const Mink v2 = tri_plane_vertex(st.nu[s.f1], st.nu[s.f2], st.nu[s.sd.across_e2]);

  BentResult r;
  r.theta = theta;
  r.face_f1 = s.f1;
  r.face_f2 = s.f2;
  auto& pat = r.pattern;
  pat.normals = st.nu;
  for (int v = 0; v < w; ++v) pat.points.emplace_back(st.z[v]);
  pat.finite = {v1, v2};
  pat.gauge = gauge;
  pat.residual = residual;
  pat.iterations = iterations;
  for (int f = 0; f < q.face_count(); ++f) {
    std::vector<int> out;
    for (int v : q.faces[f]) {
      if (v != w) {
        out.push_back(v);
      } else if (f == s.f1) {
        out.insert(out.end(), {-2, -1});
      } else if (f == s.f2) {
        out.insert(out.end(), {-1, -2});
      } else {
        out.push_back(f == s.sd.across_e1 ? -1 : -2);
      }
    }
    pat.faces.push_back(std::move(out));
  }
  // finite vertices must lie strictly inside every other face plane
  for (int k = 0; k < 2; ++k) {
    for (int f = 0; f < pat.face_count(); ++f) {
      if (std::find(pat.faces[f].begin(), pat.faces[f].end(), -1 - k) != pat.faces[f].end()) continue;
      if (!(mink_dot(pat.normals[f], pat.finite[k]) < -1e-9))
        throw Error(ErrorKind::NoConvergence, "finite vertex outside face " + std::to_string(f));
    }
  }
  r.l = mink_distance(v1, v2);
  r.volume = cone_volume(pat);
  return r;
}

// Walks theta from `from` to `to`, halving the step when a solve fails.
double continue_to(BentSystem& s, State& st, double from, double to, int& iterations, double& residual) {
  double cur = from;
  double step = std::min(0.05, std::abs(to - from));
  const double dir = to >= from ? 1.0 : -1.0;
  while (std::abs(to - cur) > 0.0) {
    const double next = std::abs(to - cur) <= step ? to : cur + dir * step;
    State trial = st;
    std::get<2>(s.c.pairs[s.pair_index]) = next;
    const auto stats = detail::solve(s.c, trial.nu, trial.z, 200, 1e-9);
    bool ok = stats.converged;
    if (ok) {
      try {
        detail::orient_and_check(s.c, trial.nu, trial.z);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) {
      st = std::move(trial);
      cur = next;
      iterations += stats.iterations;
      residual = stats.residual;
      step = std::min(step * 1.5, 0.1);
    } else {
      step /= 2;
      if (step < 1e-5)
        throw Error(ErrorKind::NoConvergence, "bending continuation stalled at theta " + std::to_string(cur));
    }
  }
  return cur;
}

}  // namespace

BentResult bent_realize(const CombPolyhedron& p, const BendSpec& b, double theta, const BentResult* warm) {
  if (!(theta > 0.0 && theta <= kPi / 2 + 1e-15))
    throw Error(ErrorKind::UnsupportedRange, "bending angle must lie in (0, pi/2]");
  BentSystem s = bent_system(p, b);
  const int w = s.sd.new_vertex;

  State st;
  double from = 0.0;
  std::vector<int> gauge;
  if (warm) {
    st.nu = warm->pattern.normals;
    for (const auto& q : warm->pattern.points) st.z.push_back(q.z);
    st.z.emplace_back(0.0);  // placeholder for the pinched vertex
    gauge = warm->pattern.gauge;
    from = warm->theta;
  } else {
    const CirclePattern base = realize(s.sd.poly);
    st.nu = base.normals;
    for (const auto& q : base.points) st.z.push_back(q.z);
    for (int v : base.gauge)
      if (v != w) gauge.push_back(v);
    for (int v = 0; v < w && gauge.size() < 3; ++v)
      if (std::find(gauge.begin(), gauge.end(), v) == gauge.end()) gauge.push_back(v);
  }
  if (static_cast<int>(st.nu.size()) != s.c.faces || static_cast<int>(st.z.size()) != s.c.vertices)
    throw Error(ErrorKind::InvalidInput, "warm start belongs to another polyhedron");
  for (int v : gauge) s.c.pinned[v] = true;

  int iterations = 0;
  double residual = 0.0;
  continue_to(s, st, from, theta, iterations, residual);
  return assemble(s, st, theta, residual, iterations, gauge);
}

std::vector<DeformationSample> deform_family(const CombPolyhedron& p, const BendSpec& b,
                                             const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidParameter, "empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorKind::InvalidParameter, "grid must increase");
  std::vector<DeformationSample> out;
  BentResult prev;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    prev = bent_realize(p, b, grid[i], i == 0 ? nullptr : &prev);
    out.push_back({prev.theta, prev.l, prev.volume});
  }
  return out;
}

double schlafli_residual(const std::vector<DeformationSample>& fam) {
  if (fam.size() < 3) throw Error(ErrorKind::InvalidParameter, "need at least three samples");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < fam.size(); ++i) {
    const double dv = (fam[i + 1].volume - fam[i - 1].volume) / (fam[i + 1].theta - fam[i - 1].theta);
    worst = std::max(worst, std::abs(dv + fam[i].l / 2));
  }
  return worst;
}

}  // namespace hd
