#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hd/combin.hpp"
#include "hd/pattern.hpp"

namespace hd {

/// Side `side` of polygon `poly`; side i runs from corner i to corner i+1.
struct SideRef {
  int poly = -1;
  int side = -1;
  auto operator<=>(const SideRef&) const = default;
};

/// Spherical polygon with explicit vertex ids at its corners.
struct ConePolygon {
  std::string name;
  std::vector<int> corners;
  std::vector<double> sides;
  std::vector<double> angles;
  bool hemisphere = false;  ///< all sides lie on the equator of a hemisphere
  bool bigon = false;       ///< one of the two triangles of an inserted bigon
};

/// Closed spherical cone surface given by polygons and an orientation
/// reversing side gluing. Never embedded; every check is intrinsic.
struct ConeSurface {
  std::vector<ConePolygon> polygons;
  std::vector<std::vector<SideRef>> glue;  ///< partner of every side
  std::vector<std::string> vertex_names;

  int vertex_count() const { return static_cast<int>(vertex_names.size()); }
  SideRef partner(SideRef s) const { return glue[s.poly][s.side]; }
};

struct SurfaceReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Gluing symmetry, matching lengths (1e-10) and endpoints, polygon
/// feasibility, single-cycle vertex links and Euler characteristic 2.
SurfaceReport check_surface(const ConeSurface& s);

/// Hemisphere per ideal vertex, one equator corner per incident face, sides
/// pi minus the dihedral angle. Polygon k belongs to vertex k and vertex id f
/// is dual to face f.
ConeSurface dual_of(const CombPolyhedron& p, const AngleAssignment& angles = {});

/// The side of hemisphere u dual to the edge (u, v) of `p`.
SideRef dual_side(const ConeSurface& s, const CombPolyhedron& p, int u, int v);

/// Cuts the path e1* + e2* (which meet at one vertex) open and fills the slit
/// with two triangles of sides (pi/2, pi/2, pi - theta) glued along g*.
/// The shared vertex keeps its id on one side of the slit; the other side
/// gets a new id at the end.
ConeSurface insert_bigon(const ConeSurface& s, SideRef e1, SideRef e2, double theta);

/// S_theta for the bend of `p` along the perpendicular of `b`.
ConeSurface bent_dual(const CombPolyhedron& p, const SurgerySpec& b, double theta);

/// Removes degenerate bigon triangles (zero base, zero apex) and merges the
/// endpoints of the collapsed base.
ConeSurface prune_degenerate(const ConeSurface& s);

/// Same polygons, corners, gluing and names, with lengths and angles within tol.
bool same_gluing(const ConeSurface& a, const ConeSurface& b, double tol = 1e-12);

/// Scales every side outside the bigon by (1 + t) and cones each hemisphere
/// off from a new pole vertex, with legs pi/2.
ConeSurface scale_and_polarize(const ConeSurface& s, double t);

struct ConeAngles {
  std::vector<double> angles;  ///< per vertex
  std::vector<int> deficient;  ///< cone points with angle below 2 pi
};

ConeAngles cone_angles(const ConeSurface& s);

/// Sum of polygon areas (angle sum minus (k-2) pi).
double surface_area(const ConeSurface& s);

/// area - 4 pi - sum(cone angle - 2 pi); zero for a closed cone sphere.
double gauss_bonnet_defect(const ConeSurface& s);

struct EdgeGeodesic {
  double length = 0.0;
  std::vector<int> vertices;  ///< closed path, first vertex not repeated
  std::vector<SideRef> edges;
};

/// Shortest closed edge path of at most `budget` edges that turns by at
/// least pi on both sides at every vertex. Ties go to the lexicographically
/// smallest edge sequence.
std::optional<EdgeGeodesic> edge_geodesic_search(const ConeSurface& s, int budget);

}  // namespace hd
