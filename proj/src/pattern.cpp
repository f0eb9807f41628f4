#include "hd/pattern.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "hd/error.hpp"
#include "solver.hpp"

namespace hd {

double AngleAssignment::at(int u, int v) const {
  auto it = special.find({std::min(u, v), std::max(u, v)});
  return it == special.end() ? default_angle : it->second;
}

void AngleAssignment::set(int u, int v, double angle) { special[{std::min(u, v), std::max(u, v)}] = angle; }

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform-weight Tutte embedding with the outer face on the unit circle.
std::vector<cplx> tutte(const CombPolyhedron& p, int outer) {
  const int n = p.vertex_count;
  std::vector<cplx> z(n);
  std::vector<bool> fixed(n, false);
  const auto& of = p.faces[outer];
  const int k = static_cast<int>(of.size());
  for (int i = 0; i < k; ++i) {
    // the outer face runs clockwise in the plane
    z[of[i]] = std::polar(1.0, kPi / 2 - 2.0 * kPi * i / k);
    fixed[of[i]] = true;
  }
  const auto rot = rotation_system(p);
  std::vector<int> index(n, -1);
  int m = 0;
  for (int v = 0; v < n; ++v)
    if (!fixed[v]) index[v] = m++;
  if (m == 0) return z;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
  for (int v = 0; v < n; ++v) {
    if (fixed[v]) continue;
    const int i = index[v];
    lap(i, i) = static_cast<double>(rot[v].size());
    for (int u : rot[v]) {
      if (fixed[u]) {
        rhs(i, 0) += z[u].real();
        rhs(i, 1) += z[u].imag();
      } else {
        lap(i, index[u]) -= 1.0;
      }
    }
  }
  const Eigen::MatrixXd sol = lap.ldlt().solve(rhs);
  for (int v = 0; v < n; ++v)
    if (!fixed[v]) z[v] = cplx(sol(index[v], 0), sol(index[v], 1));
  return z;
}

// Algebraic least-squares circle x^2 + y^2 + D x + E y + F = 0.
GenCircle fit_circle(const std::vector<cplx>& pts) {
  Eigen::MatrixXd a(pts.size(), 3);
  Eigen::VectorXd b(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a(i, 0) = pts[i].real();
    a(i, 1) = pts[i].imag();
    a(i, 2) = 1.0;
    b[i] = -std::norm(pts[i]);
  }
  const Eigen::Vector3d s = a.colPivHouseholderQr().solve(b);
  const cplx c(-s[0] / 2, -s[1] / 2);
  const double r2 = std::norm(c) - s[2];
  double r = r2 > 0.0 ? std::sqrt(r2) : 0.0;
  if (!(r > 1e-6)) {
    r = 0.0;
    for (const auto& q : pts) r = std::max(r, std::abs(q - c));
  }
  return GenCircle::circle(c, std::max(r, 1e-3));
}

}  // namespace

CirclePattern realize(const CombPolyhedron& p, const AngleAssignment& angles, const RealizeOptions& opt) {
  const auto rep = validate(p);
  if (!rep.ok) throw Error(ErrorKind::InvalidInput, rep.failures.front());
  const auto edges = edges_of(p);
  std::vector<double> exterior(p.vertex_count, 0.0);
  for (const auto& e : edges) {
    const double a = angles.at(e.u, e.v);
    if (!(a > 0.0 && a < kPi)) throw Error(ErrorKind::InadmissibleAngles, "dihedral angles must lie in (0, pi)");
    exterior[e.u] += kPi - a;
    exterior[e.v] += kPi - a;
  }
  for (int v = 0; v < p.vertex_count; ++v)
    if (std::abs(exterior[v] - 2.0 * kPi) > 1e-9)
      throw Error(ErrorKind::InadmissibleAngles,
                  "exterior angles at ideal vertex " + std::to_string(v) + " do not sum to 2 pi");

  int outer = 0;
  for (int f = 1; f < p.face_count(); ++f)
    if (p.faces[f].size() > p.faces[outer].size()) outer = f;
  const auto& of = p.faces[outer];
  const int ok = static_cast<int>(of.size());
  const std::vector<cplx> zt = tutte(p, outer);

  detail::Constraints c;
  c.faces = p.face_count();
  c.vertices = p.vertex_count;
  c.incident = p.faces;
  c.pinned.assign(p.vertex_count, false);
  c.active.assign(p.vertex_count, true);
  for (const auto& e : edges) c.pairs.emplace_back(e.face_left, e.face_right, angles.at(e.u, e.v));

  // Rivin's layout first, moved so the outer face lands where Tutte put it;
  // the Tutte embedding itself as the fallback
  std::vector<std::vector<cplx>> starts;
  int v_inf = -1;
  for (int v = 0; v < p.vertex_count && v_inf < 0; ++v)
    if (std::find(of.begin(), of.end(), v) == of.end()) v_inf = v;
  std::vector<cplx> zr;
  if (v_inf >= 0 && detail::rivin_layout(p, [&](int u, int v) { return angles.at(u, v); }, v_inf, zr)) {
    std::array<ComplexPoint, 3> from, to;
    for (int i = 0; i < 3; ++i) {
      const int v = of[(i * ok) / 3];
      from[i] = zr[v];
      to[i] = zt[v];
    }
    const Mobius m = mobius_from_triple(from, to);
    bool finite = true;
    for (int v = 0; v < p.vertex_count; ++v) {
      const auto w = v == v_inf ? m(ComplexPoint::infinity()) : m(ComplexPoint(zr[v]));
      finite = finite && !w.inf;
      zr[v] = w.z;
    }
    if (finite) starts.push_back(zr);
  }
  starts.push_back(zt);

  for (std::size_t attempt = 0; attempt < starts.size(); ++attempt) {
    std::vector<cplx> z = starts[attempt];
    std::vector<Mink> nu(p.face_count());
    for (int f = 0; f < p.face_count(); ++f) {
      if (f == outer) {
        nu[f] = to_mink_plane(GenCircle::circle(0.0, 1.0, true));
        continue;
      }
      std::vector<cplx> pts;
      for (int v : p.faces[f]) pts.push_back(z[v]);
      nu[f] = to_mink_plane(fit_circle(pts));
    }

    std::vector<int> gauge;
    std::fill(c.pinned.begin(), c.pinned.end(), false);
    if (opt.gauge.empty()) {
      for (int i : {0, ok / 3, (2 * ok) / 3}) gauge.push_back(of[i]);
    } else {
      if (opt.gauge.size() != 3) throw Error(ErrorKind::InvalidInput, "gauge needs three vertices");
      std::array<ComplexPoint, 3> from, to;
      for (int i = 0; i < 3; ++i) {
        const auto& [v, pt] = opt.gauge[i];
        if (v < 0 || v >= p.vertex_count || pt.inf) throw Error(ErrorKind::InvalidInput, "bad gauge vertex");
        gauge.push_back(v);
        from[i] = z[v];
        to[i] = pt;
      }
      // move the whole starting pattern so the pins already sit on their targets
      const Mobius m = mobius_from_triple(from, to);
      for (auto& q : z) {
        const auto w = m(ComplexPoint(q));
        if (w.inf) throw Error(ErrorKind::InvalidInput, "gauge sends a vertex to infinity");
        q = w.z;
      }
      for (auto& n : nu) n = to_mink_plane(m(circle_from_mink(n)));
      for (int i = 0; i < 3; ++i) z[gauge[i]] = to[i].z;
    }
    for (int v : gauge) c.pinned[v] = true;

    const bool last = attempt + 1 == starts.size();
    try {
      const auto st = detail::solve(c, nu, z, opt.max_iterations, opt.tolerance);
      if (!st.converged)
        throw Error(ErrorKind::NoConvergence, "residual " + std::to_string(st.residual) + " after " +
                                                  std::to_string(st.iterations) + " iterations");
      detail::orient_and_check(c, nu, z);

      CirclePattern pat;
      pat.faces = p.faces;
      pat.normals = std::move(nu);
      for (const auto& q : z) pat.points.emplace_back(q);
      pat.gauge = gauge;
      pat.residual = st.residual;
      pat.iterations = st.iterations;
      return pat;
    } catch (const Error& e) {
      if (last || e.kind() != ErrorKind::NoConvergence) throw;
    }
  }
  throw Error(ErrorKind::NoConvergence, "no starting point converged");
}

std::vector<double> pattern_edge_angles(const CombPolyhedron& p, const CirclePattern& pat) {
  std::vector<double> out;
  for (const auto& e : edges_of(p))
    out.push_back(std::acos(std::clamp(-mink_dot(pat.normals[e.face_left], pat.normals[e.face_right]), -1.0, 1.0)));
  return out;
}

double incidence_residual(const CirclePattern& pat) {
  double worst = 0.0;
  for (int f = 0; f < pat.face_count(); ++f) {
    const auto& nu = pat.normals[f];
    worst = std::max(worst, std::abs(mink_dot(nu, nu) - 1.0));
    for (int v : pat.faces[f]) {
      const Mink x = v >= 0 ? ideal_point(pat.points[v]) : pat.finite[-1 - v];
      double s = std::abs(mink_dot(nu, x));
      if (v >= 0 && !pat.points[v].inf) s /= 0.5 * (1.0 + std::norm(pat.points[v].z));
      worst = std::max(worst, s);
    }
  }
  return worst;
}

double face_perp_length(const CirclePattern& pat, int face, int e1, int e2) {
  if (face < 0 || face >= pat.face_count()) throw Error(ErrorKind::InvalidInput, "no such face");
  const auto& f = pat.faces[face];
  const int n = static_cast<int>(f.size());
  if (e1 < 0 || e2 < 0 || e1 >= n || e2 >= n || e1 == e2) throw Error(ErrorKind::InvalidInput, "bad edge positions");
  const int a = f[e1], b = f[(e1 + 1) % n], c = f[e2], d = f[(e2 + 1) % n];
  if (a < 0 || b < 0 || c < 0 || d < 0) throw Error(ErrorKind::InvalidInput, "edge has a finite endpoint");
  return geodesic_distance(Geodesic(pat.points[a], pat.points[b]), Geodesic(pat.points[c], pat.points[d])).d;
}

CirclePattern transform(const CirclePattern& pat, const Mobius& m) {
  CirclePattern out = pat;
  for (auto& nu : out.normals) nu = to_mink_plane(m(circle_from_mink(nu)));
  for (auto& q : out.points) q = m(q);
  for (auto& x : out.finite) {
    // Poincare extension of z -> (az+b)/(cz+d), det 1
    const auto [z, h] = halfspace_coords(x);
    const cplx czd = m.c * z + m.d;
    const double den = std::norm(czd) + std::norm(m.c) * h * h;
    const cplx w = ((m.a * z + m.b) * std::conj(czd) + m.a * std::conj(m.c) * h * h) / den;
    x = halfspace_point(w, h / den);
  }
  return out;
}

}  // namespace hd
