#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace hd {

using cplx = std::complex<double>;

/// Point of the extended complex plane.
struct ComplexPoint {
  cplx z{0.0, 0.0};
  bool inf = false;

  ComplexPoint() = default;
  ComplexPoint(cplx v) : z(v) {}
  ComplexPoint(double x) : z(x, 0.0) {}
  ComplexPoint(double x, double y) : z(x, y) {}
  static ComplexPoint infinity() {
    ComplexPoint p;
    p.inf = true;
    return p;
  }
  bool operator==(const ComplexPoint& o) const { return inf ? o.inf : (!o.inf && z == o.z); }
};

/// Circle or line with a marked side (the "disk"). For a circle the disk
/// is the inside unless `flipped`; for a line it is {normal . x > offset}.
struct GenCircle {
  bool is_line = false;
  cplx center{0.0, 0.0};
  double radius = 1.0;
  bool flipped = false;
  cplx normal{1.0, 0.0};
  double offset = 0.0;

  static GenCircle circle(cplx c, double r, bool flipped = false);
  static GenCircle line(cplx unit_normal, double offset);

  /// Positive inside the disk, negative outside, zero on the curve.
  double side(cplx z) const;
};

/// Circle or line through three points; the disk side is left of the
/// traversal p -> q -> r.
GenCircle circle_through(const ComplexPoint& p, const ComplexPoint& q, const ComplexPoint& r);

/// z -> (a z + b) / (c z + d), normalised to determinant 1.
struct Mobius {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Mobius from_coeffs(cplx a, cplx b, cplx c, cplx d);
  Mobius inverse() const;
  Mobius operator*(const Mobius& o) const;  ///< composition, o first
  ComplexPoint operator()(const ComplexPoint& p) const;
  GenCircle operator()(const GenCircle& g) const;
};

Mobius mobius_from_triple(const std::array<ComplexPoint, 3>& src, const std::array<ComplexPoint, 3>& dst);
ComplexPoint mobius_apply(const Mobius& m, const ComplexPoint& p);
GenCircle mobius_apply(const Mobius& m, const GenCircle& g);

/// (a-c)(b-d) / ((a-d)(b-c)), with the factors holding infinity cancelled.
cplx cross_ratio(const ComplexPoint& a, const ComplexPoint& b, const ComplexPoint& c, const ComplexPoint& d);

// Minkowski space R^{3,1}, signature (+,+,+,-). The hyperboloid model sits
// at <x,x> = -1, x[3] > 0; the sphere at infinity is the projectivised
// light cone.
using Mink = std::array<double, 4>;

double mink_dot(const Mink& x, const Mink& y);
Mink mink_scale(const Mink& x, double s);
Mink mink_add(const Mink& x, const Mink& y);
/// Vector Minkowski-orthogonal to a, b and c.
Mink mink_cross(const Mink& a, const Mink& b, const Mink& c);
/// Point of the sphere at infinity for a nonzero null vector.
ComplexPoint point_from_null(const Mink& x);

/// Unit normal of the plane over a generalised circle, pointing into the
/// disk side: <nu, ideal_point(z)> > 0 exactly when z is in the disk.
Mink to_mink_plane(const GenCircle& g);
GenCircle circle_from_mink(const Mink& nu);

/// Null vector of an ideal point.
Mink ideal_point(const ComplexPoint& p);
/// Hyperboloid point of (z, h) in the upper half-space.
Mink halfspace_point(cplx z, double h);
/// Inverse of halfspace_point.
std::pair<cplx, double> halfspace_coords(const Mink& x);

enum class PairTag { Angle, Tangent, Distance };

struct PlanePair {
  double value = 0.0;    ///< <nu1, nu2>
  PairTag tag = PairTag::Angle;
  double measure = 0.0;  ///< dihedral angle arccos(-value), 0 or distance
};

/// Classifies two unit plane normals. |value| within `tangent_tol` of 1
/// counts as tangent.
PlanePair plane_pair_invariant(const Mink& nu1, const Mink& nu2, double tangent_tol = 1e-9);

/// Common point of three planes, normalised onto the hyperboloid.
/// Throws no-vertex when the planes meet at or beyond infinity.
Mink tri_plane_vertex(const Mink& nu1, const Mink& nu2, const Mink& nu3);

double mink_distance(const Mink& x, const Mink& y);

struct Geodesic {
  ComplexPoint a, b;
  Geodesic(ComplexPoint a, ComplexPoint b);
};

struct GeodesicDistance {
  double d = 0.0;
  bool crossing = false;
  bool asymptotic = false;
};

GeodesicDistance geodesic_distance(const Geodesic& g1, const Geodesic& g2);

/// Lengths of the perpendiculars between opposite sides (q0q1, q2q3) and
/// (q1q2, q3q0) of an ideal quadrilateral.
std::pair<double, double> quad_perpendiculars(const std::array<ComplexPoint, 4>& q);

/// Lobachevsky function, -int_0^x log|2 sin t| dt.
double lobachevsky(double x);

/// Signed volume of the ideal tetrahedron; positive when z3 lies to the
/// left of the circle z0 -> z1 -> z2 seen from the image z0 = infinity.
double ideal_tet_volume(const ComplexPoint& z0, const ComplexPoint& z1, const ComplexPoint& z2,
                        const ComplexPoint& z3);

/// Angle subtended at a point by a geodesic at distance d.
double visual_angle(double d);

/// Polygonal curve in the hyperbolic plane {x[2] = 0}.
struct PolygonalCurve {
  std::vector<Mink> normals;   ///< outward unit normals of E_1..E_n
  std::vector<Mink> vertices;  ///< A_1..A_{n-1}
};

/// Builds E_1..E_n from interior angles at A_1..A_{n-1} and the lengths of
/// the sides on E_2..E_{n-1}, traversed counterclockwise.
PolygonalCurve polygon_from_data(const std::vector<double>& angles, const std::vector<double>& lengths);

}  // namespace hd
