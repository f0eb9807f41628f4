#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "hd/error.hpp"
#include "hd/pattern.hpp"

namespace hd {

namespace {

int default_apex(const CirclePattern& pat, int apex) {
  if (apex >= 0) {
    if (apex >= static_cast<int>(pat.points.size())) throw Error(ErrorKind::InvalidInput, "no such apex vertex");
    return apex;
  }
  for (const auto& f : pat.faces)
    for (int v : f)
      if (v >= 0) return v;
  throw Error(ErrorKind::InvalidInput, "pattern has no ideal vertex");
}

void require_accepted(const CirclePattern& pat) {
  const double r = incidence_residual(pat);
  if (!(r < 1e-8)) throw Error(ErrorKind::ResidualTooLarge, "pattern residual " + std::to_string(r));
}

bool contains(const std::vector<int>& f, int v) { return std::find(f.begin(), f.end(), v) != f.end(); }

// Corner of a projected face in coordinates scaled to its unit circle;
// `gap` is 1 - |u|^2, exactly zero for ideal corners.
struct Corner {
  cplx u;
  double gap;
};

// Integral over the triangle (0, P, Q) of dA / (2 (1 - |u|^2)), written as
// (1/2) int_0^1 -(1/2) log(1 - |X(t)|^2) (P x Q) / |X(t)|^2 dt along X = P + t (Q - P).
double wedge(const Corner& p, const Corner& q) {
  const double cross = p.u.real() * q.u.imag() - p.u.imag() * q.u.real();
  if (cross == 0.0) return 0.0;
  const cplx d = q.u - p.u;
  const double dd = std::norm(d);
  // 1 - |X|^2 = (1-t) gap_P + t gap_Q + t (1-t) |Q-P|^2, evaluated from the
  // nearer endpoint so that ideal corners keep full relative accuracy.
  // Near the centre -log(1-x)/x is taken through log1p, since the segment
  // may pass arbitrarily close to it.
  auto kernel = [&](double g, cplx x) {
    const double xx = std::norm(x);
    if (xx < 0.5) return xx == 0.0 ? 0.5 * cross : -0.5 * std::log1p(-xx) / xx * cross;
    if (!(g > 0.0)) return 0.0;  // underflow at the very end of an ideal corner
    return -0.5 * std::log(g) / xx * cross;
  };
  auto from_p = [&](double t) { return kernel((1.0 - t) * p.gap + t * q.gap + t * (1.0 - t) * dd, p.u + t * d); };
  auto from_q = [&](double s) { return kernel(s * p.gap + (1.0 - s) * q.gap + s * (1.0 - s) * dd, q.u - s * d); };
  // the default tolerance (sqrt eps) lets the refinement level, and with it
  // a ~1e-9 error, jump between neighbouring configurations
  boost::math::quadrature::tanh_sinh<double> ts;
  const double a = ts.integrate(from_p, 0.0, 0.5, 1e-14);
  const double b = ts.integrate(from_q, 0.0, 0.5, 1e-14);
  return 0.5 * (a + b);
}

}  // namespace

double polyhedron_volume(const CirclePattern& pat, int apex) {
  if (!pat.finite.empty()) return cone_volume(pat, apex);
  require_accepted(pat);
  const int a = default_apex(pat, apex);
  double total = 0.0;
  for (const auto& f : pat.faces) {
    if (contains(f, a)) continue;
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
      total += ideal_tet_volume(pat.points[a], pat.points[f[0]], pat.points[f[i]], pat.points[f[i + 1]]);
  }
  return std::abs(total);
}

double cone_volume(const CirclePattern& pat, int apex) {
  require_accepted(pat);
  const int a = default_apex(pat, apex);
  // two more ideal vertices fix the frame sending the apex to infinity
  std::vector<int> others;
  for (std::size_t v = 0; v < pat.points.size() && others.size() < 2; ++v) {
    if (static_cast<int>(v) == a) continue;
    bool used = false;
    for (const auto& f : pat.faces) used = used || contains(f, static_cast<int>(v));
    if (used) others.push_back(static_cast<int>(v));
  }
  if (others.size() < 2) throw Error(ErrorKind::InvalidInput, "too few ideal vertices");
  const Mobius m = mobius_from_triple({pat.points[a], pat.points[others[0]], pat.points[others[1]]},
                                      {ComplexPoint::infinity(), 0.0, 1.0});
  const CirclePattern up = transform(pat, m);

  double total = 0.0;
  for (int fi = 0; fi < up.face_count(); ++fi) {
    const auto& f = up.faces[fi];
    if (contains(f, a)) continue;
    const GenCircle c = up.circle(fi);
    if (c.is_line) throw Error(ErrorKind::InvalidInput, "face through the apex is not incident to it");
    std::vector<Corner> corners;
    for (int v : f) {
      if (v >= 0) {
        corners.push_back({(up.points[v].z - c.center) / c.radius, 0.0});
      } else {
        const auto [z, h] = halfspace_coords(up.finite[-1 - v]);
        corners.push_back({(z - c.center) / c.radius, (h / c.radius) * (h / c.radius)});
      }
    }
    double face = 0.0;
    for (std::size_t i = 0; i < corners.size(); ++i) face += wedge(corners[i], corners[(i + 1) % corners.size()]);
    total += std::abs(face);
  }
  return total;
}

}  // namespace hd
