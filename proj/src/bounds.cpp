#include "hd/bounds.hpp"

#include <atomic>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "hd/error.hpp"

namespace hd {

namespace {

constexpr double kPi = std::numbers::pi;

Mink unit(const Mink& x) {
  const double q = mink_dot(x, x);
  return mink_scale(x, 1.0 / std::sqrt(std::abs(q)));
}

Mink future(const Mink& x) { return x[3] < 0.0 ? mink_scale(x, -1.0) : x; }

struct FaceGeometry {
  int n = 0;
  std::vector<Mink> edge_normals;  // in the face plane, pointing into the polygon
  Mink x1{}, x2{};                 // feet of g on e1 and e2
  Mink tangent{};                  // unit tangent of g at x1 toward x2
  Mink across{};                   // unit normal of g in the face plane
  double l = 0.0;
};

FaceGeometry face_geometry(const CirclePattern& pat, int face, int e1, int e2) {
  FaceGeometry g;
  const auto& f = pat.faces[face];
  g.n = static_cast<int>(f.size());
  const Mink nu = pat.normals[face];
  std::vector<Mink> raw;
  for (int i = 0; i < g.n; ++i) {
    const Mink p = ideal_point(pat.points[f[i]]), q = ideal_point(pat.points[f[(i + 1) % g.n]]);
    raw.push_back(unit(mink_cross(nu, p, q)));
  }
  const Mink m = unit(mink_cross(nu, raw[e1], raw[e2]));
  g.x1 = unit(future(mink_cross(nu, raw[e1], m)));
  g.x2 = unit(future(mink_cross(nu, raw[e2], m)));
  g.l = mink_distance(g.x1, g.x2);
  g.tangent = mink_scale(mink_add(g.x2, mink_scale(g.x1, -std::cosh(g.l))), 1.0 / std::sinh(g.l));
  g.across = m;
  const Mink mid = mink_add(mink_scale(g.x1, std::cosh(g.l / 2)), mink_scale(g.tangent, std::sinh(g.l / 2)));
  for (const auto& r : raw) g.edge_normals.push_back(mink_dot(r, mid) < 0.0 ? mink_scale(r, -1.0) : r);
  return g;
}

}  // namespace

ThinPolygonReport thin_polygon_check(const CirclePattern& pat, int face, int e1, int e2, bool aux, int samples) {
  if (face < 0 || face >= pat.face_count()) throw Error(ErrorKind::InvalidInput, "no such face");
  const auto& f = pat.faces[face];
  const int n = static_cast<int>(f.size());
  if (n == 3) throw Error(ErrorKind::LemmaInapplicable, "the lemma needs at least four sides");
  if (e1 > e2) std::swap(e1, e2);
  if (e1 < 0 || e2 >= n || e2 - e1 < 2 || e2 - e1 > n - 2)
    throw Error(ErrorKind::InvalidInput, "edges must be distinct and non-adjacent");

  ThinPolygonReport r;
  r.n = n;
  r.l = face_perp_length(pat, face, e1, e2);
  r.d = std::numeric_limits<double>::infinity();
  for (int a = e1 + 1; a < e2; ++a)
    for (int b = e2 + 1; b < e1 + n; ++b) {
      const double d = face_perp_length(pat, face, a, b % n);
      if (d < r.d) {
        r.d = d;
        r.e3 = a;
        r.e4 = b % n;
      }
    }
  r.lhs = std::sinh(r.d / 2) * std::sinh((kPi - 2) * r.l / (2 * kPi * (n - 3)));
  r.pass = r.lhs <= 1.0 + 1e-9;
  if (!aux) return r;

  r.has_aux = true;
  r.epsilon = std::asinh((n - 2) * kPi / r.l);
  const FaceGeometry g = face_geometry(pat, face, e1, e2);
  const double ce = std::cosh(r.epsilon), se = std::sinh(r.epsilon);
  const double ds = r.l / samples;
  for (int k = 0; k < samples; ++k) {
    const double s = (k + 0.5) * ds;
    const Mink x = mink_add(mink_scale(g.x1, std::cosh(s)), mink_scale(g.tangent, std::sinh(s)));
    int hits = 0;
    for (double sign : {1.0, -1.0}) {
      const Mink y = mink_add(mink_scale(x, ce), mink_scale(g.across, sign * se));
      bool inside = true;
      for (const auto& nk : g.edge_normals) inside = inside && mink_dot(nk, y) >= 0.0;
      if (!inside) ++hits;
    }
    (hits == 0 ? r.l0 : hits == 1 ? r.l1 : r.l2) += ds;
  }
  return r;
}

double bend_bound(double phi, int n) {
  if (n < 4) throw Error(ErrorKind::InvalidParameter, "need n >= 4");
  if (!(phi > 0.0 && phi < kPi)) throw Error(ErrorKind::InvalidParameter, "angle must lie in (0, pi)");
  return 2 * kPi * (n - 3) / (kPi - 2) * std::asinh(std::tan(phi / 2));
}

double combinatorial_K(int max_refinements) {
  boost::math::quadrature::tanh_sinh<double> ts(max_refinements);
  // near pi use the distance to the endpoint, tan(phi/2) = cot((pi-phi)/2)
  auto f = [](double phi, double complement) {
    if (phi > kPi / 2) return std::asinh(1.0 / std::tan(complement / 2));
    return std::asinh(std::tan(phi / 2));
  };
  return kPi / (kPi - 2) * ts.integrate(f, 0.0, kPi, 1e-15);
}

DrillVerdict drill_report(const CombPolyhedron& p, const SurgerySpec& s) {
  if (!is_admissible(p, s)) throw Error(ErrorKind::InvalidSurgery, "not an admissible surgery");
  static const double k = combinatorial_K();
  DrillVerdict v;
  v.code = canonical_code(p).hex();
  v.spec = s;
  v.face_n = static_cast<int>(p.faces[s.face].size());
  const CirclePattern before = realize(p);
  v.v_before = polyhedron_volume(before);
  v.v_after = polyhedron_volume(realize(surgery(p, s)));
  v.dv = v.v_after - v.v_before;
  v.l = face_perp_length(before, s.face, s.e1, s.e2);
  v.bound_pi = kPi / 2 * v.l;
  v.bound_k = k * (v.face_n - 3);
  v.dv_cover = 4 * v.dv;
  v.big_l = 2 * v.l;
  v.pass_positive = v.dv > 0.0;
  v.pass_pi = v.dv <= v.bound_pi + 1e-8;
  v.pass_k = v.dv <= v.bound_k + 1e-8;
  v.pass_cover = v.dv_cover <= kPi * v.big_l + 1e-8;
  return v;
}

std::vector<DrillVerdict> drill_inventory(const std::vector<CombPolyhedron>& polys, int jobs) {
  std::vector<std::pair<int, SurgerySpec>> work;
  for (int i = 0; i < static_cast<int>(polys.size()); ++i)
    for (const auto& s : admissible_surgeries(polys[i])) work.emplace_back(i, s);
  std::vector<DrillVerdict> out(work.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  auto run = [&] {
    for (std::size_t i; (i = next++) < work.size();) {
      try {
        out[i] = drill_report(polys[work[i].first], work[i].second);
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
  return out;
}

std::string drill_csv(const std::vector<DrillVerdict>& rows) {
  std::string out = "polyhedron_code,face_n,l,dV,pi_bound,K_bound,pass_pi,pass_K\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%d,%.12g,%.12g,%.12g,%.12g,%d,%d\n", r.face_n, r.l, r.dv, r.bound_pi, r.bound_k,
                  r.pass_positive && r.pass_pi ? 1 : 0, r.pass_k ? 1 : 0);
    out += r.code + buf;
  }
  return out;
}

}  // namespace hd
