#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hd/combin.hpp"
#include "hd/geom.hpp"

namespace hd {

/// Dihedral angle per edge; edges not listed get `default_angle`.
struct AngleAssignment {
  double default_angle = 1.5707963267948966;
  std::map<std::pair<int, int>, double> special;  ///< keyed by (min, max)

  double at(int u, int v) const;
  void set(int u, int v, double angle);
};

/// Circle pattern of a (possibly bent) polyhedron. Face entries >= 0 are
/// ideal vertices; entry -1-k is the finite vertex `finite[k]`.
struct CirclePattern {
  std::vector<std::vector<int>> faces;
  std::vector<Mink> normals;                ///< outward unit normal per face
  std::vector<ComplexPoint> points;         ///< ideal vertex positions
  std::vector<Mink> finite;                 ///< finite vertices on the hyperboloid
  std::vector<int> gauge;                   ///< pinned ideal vertices
  double residual = 0.0;
  int iterations = 0;

  GenCircle circle(int face) const { return circle_from_mink(normals[face]); }
  int face_count() const { return static_cast<int>(faces.size()); }
};

struct RealizeOptions {
  int max_iterations = 200;
  double tolerance = 1e-9;
  /// Pinned vertices and targets. Empty: three vertices of the largest
  /// face at their unit-circle start positions.
  std::vector<std::pair<int, ComplexPoint>> gauge;
};

/// Realizes an ideal polyhedron with the given dihedral angles.
CirclePattern realize(const CombPolyhedron& p, const AngleAssignment& angles = {}, const RealizeOptions& opt = {});

/// Interior dihedral angle along each edge of edges_of(p), recomputed from the pattern.
std::vector<double> pattern_edge_angles(const CombPolyhedron& p, const CirclePattern& pat);

/// Largest violation of incidence and normalisation constraints.
double incidence_residual(const CirclePattern& pat);

/// Volume by fanning ideal tetrahedra from `apex` (default: vertex of
/// face 0). Requires an ideal pattern; bent patterns go through
/// cone_volume.
double polyhedron_volume(const CirclePattern& pat, int apex = -1);

/// Volume as the cone from an ideal apex over all other faces, integrated
/// face by face in the upper half-space with the apex at infinity. Handles
/// finite vertices.
double cone_volume(const CirclePattern& pat, int apex = -1);

/// Length of the common perpendicular of edges e1, e2 of a face.
double face_perp_length(const CirclePattern& pat, int face, int e1, int e2);

/// Applies a Mobius map to every circle, ideal point and finite vertex.
CirclePattern transform(const CirclePattern& pat, const Mobius& m);

using BendSpec = SurgerySpec;

struct BentResult {
  CirclePattern pattern;  ///< faces of P with the split face replaced by F1, F2
  double theta = 0.0;
  double l = 0.0;         ///< distance between the finite vertices
  double volume = 0.0;
  int face_f1 = -1, face_f2 = -1;
};

/// Realizes P with face b.face bent along the perpendicular of e1, e2 at
/// interior dihedral angle theta in (0, pi/2]. Continues from the pinched
/// polyhedron unless `warm` supplies a nearby solution.
BentResult bent_realize(const CombPolyhedron& p, const BendSpec& b, double theta, const BentResult* warm = nullptr);

struct DeformationSample {
  double theta = 0.0;
  double l = 0.0;
  double volume = 0.0;
};

std::vector<DeformationSample> deform_family(const CombPolyhedron& p, const BendSpec& b,
                                             const std::vector<double>& grid);

/// max over interior samples of |centred dV/dtheta + l/2|.
double schlafli_residual(const std::vector<DeformationSample>& fam);

/// Deterministic SVG of the pattern.
std::string render_svg(const CirclePattern& pat);
void render_svg(const CirclePattern& pat, const std::string& path);

}  // namespace hd
