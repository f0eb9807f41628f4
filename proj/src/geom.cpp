#include "hd/geom.hpp"

#include <cmath>
#include <initializer_list>
#include <iterator>
#include <numbers>

#include "hd/error.hpp"

namespace hd {

namespace {

constexpr double kPi = std::numbers::pi;

double g_dot(cplx u, cplx v) { return u.real() * v.real() + u.imag() * v.imag(); }

double cross2(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

void require_distinct(std::initializer_list<const ComplexPoint*> pts, const char* what) {
  for (auto i = pts.begin(); i != pts.end(); ++i)
    for (auto j = std::next(i); j != pts.end(); ++j)
      if (**i == **j) throw Error(ErrorKind::InvalidInput, std::string(what) + ": repeated point");
}

// Matrix sending (z1, z2, z3) to (0, 1, infinity).
Mobius to_standard(const ComplexPoint& z1, const ComplexPoint& z2, const ComplexPoint& z3) {
  require_distinct({&z1, &z2, &z3}, "degenerate triple");
  if (z1.inf) return Mobius::from_coeffs(0.0, z2.z - z3.z, 1.0, -z3.z);
  if (z2.inf) return Mobius::from_coeffs(1.0, -z1.z, 1.0, -z3.z);
  if (z3.inf) return Mobius::from_coeffs(1.0, -z1.z, 0.0, z2.z - z1.z);
  return Mobius::from_coeffs(z2.z - z3.z, -z1.z * (z2.z - z3.z), z2.z - z1.z, -z3.z * (z2.z - z1.z));
}

}  // namespace

GenCircle GenCircle::circle(cplx c, double r, bool flipped) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidInput, "radius must be positive");
  GenCircle g;
  g.center = c;
  g.radius = r;
  g.flipped = flipped;
  return g;
}

GenCircle GenCircle::line(cplx unit_normal, double offset) {
  const double n = std::abs(unit_normal);
  if (!(n > 0.0)) throw Error(ErrorKind::InvalidInput, "line normal must be nonzero");
  GenCircle g;
  g.is_line = true;
  g.normal = unit_normal / n;
  g.offset = offset / n;
  return g;
}

double GenCircle::side(cplx z) const {
  if (is_line) return g_dot(normal, z) - offset;
  const double s = radius - std::abs(z - center);
  return flipped ? -s : s;
}

GenCircle circle_through(const ComplexPoint& p, const ComplexPoint& q, const ComplexPoint& r) {
  require_distinct({&p, &q, &r}, "circle through points");
  auto line_along = [](cplx from, cplx dir) {
    const cplx n = cplx(0.0, 1.0) * dir / std::abs(dir);
    return GenCircle::line(n, g_dot(n, from));
  };
  if (p.inf) return line_along(q.z, r.z - q.z);
  if (q.inf) return line_along(r.z, p.z - r.z);
  if (r.inf) return line_along(p.z, q.z - p.z);

  const cplx u = q.z - p.z, v = r.z - p.z;
  const double det = cross2(u, v);
  if (std::abs(det) <= 1e-14 * std::abs(u) * std::abs(v)) {
    // collinear: the cyclic order decides the direction of travel
    const double s = (v / u).real();
    return line_along(p.z, (s > 0.0 && s < 1.0) ? -u : u);
  }
  const double uu = std::norm(u), vv = std::norm(v);
  const cplx c = p.z + cplx(v.imag() * uu - u.imag() * vv, u.real() * vv - v.real() * uu) / (2.0 * det);
  return GenCircle::circle(c, std::abs(p.z - c), det < 0.0);
}

Mobius Mobius::from_coeffs(cplx a, cplx b, cplx c, cplx d) {
  const cplx det = a * d - b * c;
  if (std::abs(det) == 0.0) throw Error(ErrorKind::InvalidInput, "singular Mobius matrix");
  const cplx s = std::sqrt(det);
  Mobius m;
  m.a = a / s;
  m.b = b / s;
  m.c = c / s;
  m.d = d / s;
  return m;
}

Mobius Mobius::inverse() const { return from_coeffs(d, -b, -c, a); }

Mobius Mobius::operator*(const Mobius& o) const {
  return from_coeffs(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

ComplexPoint Mobius::operator()(const ComplexPoint& p) const {
  if (p.inf) return std::abs(c) == 0.0 ? ComplexPoint::infinity() : ComplexPoint(a / c);
  const cplx num = a * p.z + b, den = c * p.z + d;
  if (std::abs(den) <= 1e-15 * std::abs(num)) return ComplexPoint::infinity();
  return ComplexPoint(num / den);
}

GenCircle Mobius::operator()(const GenCircle& g) const {
  // Orientation-preserving maps keep the disk on the left of the image of
  // a positively ordered triple.
  std::array<ComplexPoint, 3> pts;
  if (g.is_line) {
    const cplx p0 = g.normal * g.offset;
    const cplx t = cplx(0.0, -1.0) * g.normal;
    pts = {ComplexPoint(p0), ComplexPoint(p0 + t), ComplexPoint::infinity()};
  } else {
    const double r = g.radius;
    pts = {ComplexPoint(g.center + r), ComplexPoint(g.center + cplx(0.0, r)), ComplexPoint(g.center - r)};
    if (g.flipped) std::swap(pts[0], pts[2]);
  }
  return circle_through((*this)(pts[0]), (*this)(pts[1]), (*this)(pts[2]));
}

Mobius mobius_from_triple(const std::array<ComplexPoint, 3>& src, const std::array<ComplexPoint, 3>& dst) {
  return to_standard(dst[0], dst[1], dst[2]).inverse() * to_standard(src[0], src[1], src[2]);
}

ComplexPoint mobius_apply(const Mobius& m, const ComplexPoint& p) { return m(p); }
GenCircle mobius_apply(const Mobius& m, const GenCircle& g) { return m(g); }

cplx cross_ratio(const ComplexPoint& a, const ComplexPoint& b, const ComplexPoint& c, const ComplexPoint& d) {
  require_distinct({&a, &b, &c, &d}, "cross ratio");
  if (a.inf) return (b.z - d.z) / (b.z - c.z);
  if (b.inf) return (a.z - c.z) / (a.z - d.z);
  if (c.inf) return (b.z - d.z) / (a.z - d.z);
  if (d.inf) return (a.z - c.z) / (b.z - c.z);
  return (a.z - c.z) * (b.z - d.z) / ((a.z - d.z) * (b.z - c.z));
}

double mink_dot(const Mink& x, const Mink& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] - x[3] * y[3]; }

Mink mink_scale(const Mink& x, double s) { return {x[0] * s, x[1] * s, x[2] * s, x[3] * s}; }

Mink mink_add(const Mink& x, const Mink& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]}; }

Mink mink_cross(const Mink& a, const Mink& b, const Mink& c) {
  auto det3 = [&](int i, int j, int k) {
    return a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) + a[k] * (b[i] * c[j] - b[j] * c[i]);
  };
  const double e0 = det3(1, 2, 3), e1 = -det3(0, 2, 3), e2 = det3(0, 1, 3), e3 = -det3(0, 1, 2);
  return {e0, e1, e2, -e3};
}

ComplexPoint point_from_null(const Mink& x) {
  // x ~ (2z, |z|^2 - 1, |z|^2 + 1) up to scale
  const double below = x[3] - x[2], above = x[3] + x[2];
  if (std::abs(below) <= 1e-15 * std::abs(above)) return ComplexPoint::infinity();
  return ComplexPoint(cplx(x[0], x[1]) / below);
}

Mink to_mink_plane(const GenCircle& g) {
  if (g.is_line) return {g.normal.real(), g.normal.imag(), g.offset, g.offset};
  const double r = g.radius, cc = std::norm(g.center);
  Mink nu{g.center.real() / r, g.center.imag() / r, (cc - r * r - 1.0) / (2.0 * r), (cc - r * r + 1.0) / (2.0 * r)};
  return g.flipped ? mink_scale(nu, -1.0) : nu;
}

GenCircle circle_from_mink(const Mink& nu) {
  const double k = nu[3] - nu[2];  // 1/r, signed by orientation
  const double scale = std::abs(nu[0]) + std::abs(nu[1]) + std::abs(nu[2]) + std::abs(nu[3]);
  if (std::abs(k) <= 1e-13 * scale) return GenCircle::line(cplx(nu[0], nu[1]), nu[2]);
  const double r = 1.0 / std::abs(k);
  const double s = k > 0.0 ? 1.0 : -1.0;
  return GenCircle::circle(cplx(nu[0], nu[1]) * r * s, r, k < 0.0);
}

Mink ideal_point(const ComplexPoint& p) {
  if (p.inf) return {0.0, 0.0, 1.0, 1.0};
  const double zz = std::norm(p.z);
  return {2.0 * p.z.real(), 2.0 * p.z.imag(), zz - 1.0, zz + 1.0};
}

Mink halfspace_point(cplx z, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "height must be positive");
  const double s = std::norm(z) + h * h;
  return mink_scale({2.0 * z.real(), 2.0 * z.imag(), s - 1.0, s + 1.0}, 1.0 / (2.0 * h));
}

std::pair<cplx, double> halfspace_coords(const Mink& x) {
  const double h = 1.0 / (x[3] - x[2]);
  return {cplx(x[0], x[1]) * h, h};
}

PlanePair plane_pair_invariant(const Mink& nu1, const Mink& nu2, double tangent_tol) {
  PlanePair p;
  p.value = mink_dot(nu1, nu2);
  const double a = std::abs(p.value);
  if (a < 1.0 - tangent_tol) {
    p.tag = PairTag::Angle;
    p.measure = std::acos(-p.value);
  } else if (a <= 1.0 + tangent_tol) {
    p.tag = PairTag::Tangent;
  } else {
    p.tag = PairTag::Distance;
    p.measure = std::acosh(a);
  }
  return p;
}

Mink tri_plane_vertex(const Mink& nu1, const Mink& nu2, const Mink& nu3) {
  // rows J*nu so that row . x = <nu, x>
  const std::array<Mink, 3> m{Mink{nu1[0], nu1[1], nu1[2], -nu1[3]}, Mink{nu2[0], nu2[1], nu2[2], -nu2[3]},
                              Mink{nu3[0], nu3[1], nu3[2], -nu3[3]}};
  Mink x{};
  for (int k = 0; k < 4; ++k) {
    int cols[3], n = 0;
    for (int j = 0; j < 4; ++j)
      if (j != k) cols[n++] = j;
    const double det = m[0][cols[0]] * (m[1][cols[1]] * m[2][cols[2]] - m[1][cols[2]] * m[2][cols[1]]) -
                       m[0][cols[1]] * (m[1][cols[0]] * m[2][cols[2]] - m[1][cols[2]] * m[2][cols[0]]) +
                       m[0][cols[2]] * (m[1][cols[0]] * m[2][cols[1]] - m[1][cols[1]] * m[2][cols[0]]);
    x[k] = (k % 2 == 0) ? det : -det;
  }
  const double e = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  if (!(e > 1e-300)) throw Error(ErrorKind::NoVertex, "planes do not meet in a point");
  x = mink_scale(x, 1.0 / e);
  const double q = mink_dot(x, x);
  if (q > -1e-12) throw Error(ErrorKind::NoVertex, "planes meet at or beyond infinity");
  x = mink_scale(x, 1.0 / std::sqrt(-q));
  return x[3] < 0.0 ? mink_scale(x, -1.0) : x;
}

double mink_distance(const Mink& x, const Mink& y) { return std::acosh(std::max(1.0, -mink_dot(x, y))); }

Geodesic::Geodesic(ComplexPoint a_, ComplexPoint b_) : a(a_), b(b_) {
  if (a == b) throw Error(ErrorKind::InvalidInput, "geodesic endpoints must differ");
}

GeodesicDistance geodesic_distance(const Geodesic& g1, const Geodesic& g2) {
  GeodesicDistance out;
  if (g1.a == g2.a || g1.a == g2.b || g1.b == g2.a || g1.b == g2.b) {
    out.asymptotic = true;
    return out;
  }
  const cplx lam = cross_ratio(g1.a, g1.b, g2.a, g2.b);
  if (std::abs(lam.imag()) <= 1e-12 * (1.0 + std::abs(lam)) && lam.real() < 0.0) {
    out.crossing = true;
    return out;
  }
  // lam = tanh^2(delta/2) for the complex distance delta; the other
  // pairing gives 1/lam, whose atanh differs by i*pi/2 only.
  const cplx w = 2.0 * std::atanh(std::sqrt(lam));
  out.d = std::abs(w.real());
  return out;
}

std::pair<double, double> quad_perpendiculars(const std::array<ComplexPoint, 4>& q) {
  const cplx x = cross_ratio(q[0], q[1], q[2], q[3]);
  if (std::abs(x.imag()) > 1e-9 * (1.0 + std::abs(x)))
    throw Error(ErrorKind::InvalidInput, "quadrilateral vertices are not concircular");
  const auto d1 = geodesic_distance(Geodesic(q[0], q[1]), Geodesic(q[2], q[3]));
  const auto d2 = geodesic_distance(Geodesic(q[1], q[2]), Geodesic(q[3], q[0]));
  if (d1.crossing || d2.crossing) throw Error(ErrorKind::InvalidInput, "vertices are not in cyclic order");
  return {d1.d, d2.d};
}

double lobachevsky(double x) {
  // L(x) = Cl2(2x)/2 with Cl2(t) = t - t log|t| + sum_n zeta(2n) t^(2n+1) / (n (2n+1) (2pi)^(2n)),
  // convergent for |t| < 2 pi; we only use |t| <= pi.
  static const std::vector<double> coeff = [] {
    std::vector<double> c;
    for (int n = 1; n <= 60; ++n)
      c.push_back(std::riemann_zeta(2.0 * n) / (n * (2.0 * n + 1.0) * std::pow(2.0 * kPi, 2.0 * n)));
    return c;
  }();
  double y = std::remainder(x, kPi);
  const double t = 2.0 * y;
  if (t == 0.0) return 0.0;
  const double t2 = t * t;
  double sum = 0.0, pw = t * t2;
  for (double c : coeff) {
    const double term = c * pw;
    sum += term;
    if (std::abs(term) < 1e-18) break;
    pw *= t2;
  }
  return 0.5 * (t - t * std::log(std::abs(t)) + sum);
}

double ideal_tet_volume(const ComplexPoint& z0, const ComplexPoint& z1, const ComplexPoint& z2,
                        const ComplexPoint& z3) {
  const cplx w = cross_ratio(z3, z2, z1, z0);
  return lobachevsky(std::arg(w)) + lobachevsky(std::arg(1.0 / (1.0 - w))) + lobachevsky(std::arg(1.0 - 1.0 / w));
}

double visual_angle(double d) {
  if (!(d > 0.0)) throw Error(ErrorKind::InvalidParameter, "distance must be positive");
  return 2.0 * std::atan(1.0 / std::sinh(d));
}

namespace {

using V3 = std::array<double, 3>;  // (x, y, t) in R^{2,1}

V3 lin(double a, const V3& u, double b, const V3& v) {
  return {a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]};
}

// Left normal of the direction t at the point a.
V3 left_normal(const V3& a, const V3& t) {
  return {a[1] * t[2] - a[2] * t[1], a[2] * t[0] - a[0] * t[2], -(a[0] * t[1] - a[1] * t[0])};
}

Mink embed(const V3& v) { return {v[0], v[1], 0.0, v[2]}; }

}  // namespace

PolygonalCurve polygon_from_data(const std::vector<double>& angles, const std::vector<double>& lengths) {
  const std::size_t n = angles.size() + 1;
  if (angles.size() < 2 || lengths.size() + 2 != n)
    throw Error(ErrorKind::ConstructionFailed, "need n-1 angles and n-2 lengths");
  for (double a : angles)
    if (!(a > 0.0 && a < kPi)) throw Error(ErrorKind::ConstructionFailed, "angles must lie in (0, pi)");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorKind::ConstructionFailed, "lengths must be positive");

  PolygonalCurve out;
  V3 a{0.0, 0.0, 1.0};
  V3 t{1.0, 0.0, 0.0};  // direction of E_2 leaving A_1
  {
    const double ext = kPi - angles[0];
    const V3 back = lin(std::cos(ext), t, -std::sin(ext), left_normal(a, t));
    out.normals.push_back(embed(lin(-1.0, left_normal(a, back), 0.0, back)));
  }
  out.vertices.push_back(embed(a));
  for (std::size_t i = 0; i + 2 < n; ++i) {
    out.normals.push_back(embed(lin(-1.0, left_normal(a, t), 0.0, t)));
    const double s = lengths[i];
    const V3 a_next = lin(std::cosh(s), a, std::sinh(s), t);
    const V3 t_arr = lin(std::sinh(s), a, std::cosh(s), t);
    a = a_next;
    const double ext = kPi - angles[i + 1];
    t = lin(std::cos(ext), t_arr, std::sin(ext), left_normal(a, t_arr));
    out.vertices.push_back(embed(a));
  }
  out.normals.push_back(embed(lin(-1.0, left_normal(a, t), 0.0, t)));
  return out;
}

}  // namespace hd
