#pragma once

#include <array>
#include <string>
#include <vector>

#include "hd/combin.hpp"
#include "hd/geom.hpp"
#include "hd/pattern.hpp"

namespace hd {

/// Five circles: C0 the unit circle, C1/C1' of radius r on the real axis and
/// C2/C2' of radius 1/r on the imaginary axis, all orthogonal to C0.
struct BasePattern {
  double r = 2.0;
  GenCircle c0, c1, c1p, c2, c2p;
};

BasePattern base_pattern(double r);

/// The larger root of k^2 - 2 r^2 k + 1 = 0.
double expansion_factor(double r);

/// z -> k_r i z.
Mobius expansion_map(double r);

struct LabeledCircle {
  std::string label;
  Mink nu{};  ///< unit normal pointing into the covered disk
  GenCircle circle() const { return circle_from_mink(nu); }
};

enum class Contact { Tangent, Orthogonal, Disjoint, Crossing, Overlap };

struct Incidence {
  int a = 0, b = 0;
  PlanePair pair;
  Contact contact = Contact::Disjoint;
  ComplexPoint point;  ///< tangency point, only for Contact::Tangent
};

/// Circles with their pairwise contacts. Tangent means the two disks touch
/// from outside; internal tangency counts as overlap.
struct TangencyGraph {
  std::vector<LabeledCircle> circles;
  std::vector<Incidence> incidences;  ///< every pair a < b, in order

  static TangencyGraph from_circles(std::vector<LabeledCircle> circles);
  int find(const std::string& label) const;  ///< -1 if absent
  const Incidence& between(int a, int b) const;
};

Contact classify_contact(const Mink& a, const Mink& b, double tol = 1e-9);

/// C_r together with its image under expansion_map; M(C0) covers the outside.
/// Throws r-too-small unless the only cross-family contacts are the four
/// tangencies between C1, C1' and M(C1), M(C1'). Circles are reported after
/// applying `frame`.
TangencyGraph extended_pattern(double r, const Mobius& frame = {});

/// Circular quadrilateral. Sides run counterclockwise around the region:
/// left, bottom, right, top. corners[i] is where side i meets side i+1.
struct QuadRegion {
  std::array<Mink, 4> sides{};
  std::array<std::string, 4> labels;
  std::array<ComplexPoint, 4> corners;
  Mink region{};  ///< circle through the corners, positive on the region

  enum Side { Left = 0, Bottom = 1, Right = 2, Top = 3 };
};

QuadRegion transform(const QuadRegion& q, const Mobius& m);

/// |cross ratio| of the corners in order.
double corner_modulus(const QuadRegion& q);

/// Uncovered quadrilaterals of the extended pattern, upper one first. Each
/// is labelled with the family-2 circle on the left.
std::vector<QuadRegion> funnel_quads(double r, const Mobius& frame = {});
QuadRegion funnel_quad(double r);

struct CFracDigits {
  std::vector<int> digits;
  bool terminated = false;
  double value() const;
};

struct GreedyPacking {
  CFracDigits cf;
  std::vector<Mink> circles;  ///< in packing order
};

/// Greedy packing by rows; see greedy_cfrac. `max_per_digit` caps runaway rows.
GreedyPacking greedy_packing(const QuadRegion& q, int max_digits = 12, int max_per_digit = 100000);
CFracDigits greedy_cfrac(const QuadRegion& q, int max_digits = 12);

/// Circle inside q tangent to sides a, b and c.
Mink apollonius_in_region(const QuadRegion& q, int a, int b, int c);

struct SolveOptions {
  double r_min = 1.05;
  double r_max = 1e3;
  double tol = 1e-12;  ///< final bracket width in r
};

/// r with c(Q_r) = n by bisection on whether n circles fit left to right.
double solve_r(int n, const SolveOptions& opt = {});

/// Adds the circle through the corners of every triangular interstice,
/// covering it. Throws non-triangular if a cusp is still open afterwards.
TangencyGraph truncate_interstices(const TangencyGraph& g);

struct Extracted {
  CombPolyhedron poly;
  CirclePattern pattern;  ///< face f is circle f of the graph
};

/// Faces are the circles, vertices the points where exactly four circles
/// meet (opposite ones tangent, neighbours orthogonal).
Extracted extract_polyhedron(const TangencyGraph& g);

/// z -> z / sqrt(k_r). C0 and M(C0) get reciprocal radii, which keeps the
/// plane normals of the packed circles small.
Mobius balanced_frame(double r);

/// Lives in balanced_frame(r).
struct BuiltPn {
  int n = 0;
  double r = 0.0;
  TangencyGraph graph;
  CombPolyhedron poly;
  CirclePattern pattern;
  int face_c0 = -1;
  SurgerySpec pinch;  ///< C0 face, edges along C2 and C2'
};

BuiltPn build_Pn(int n, const SolveOptions& opt = {});

struct FamilyRow {
  int n = 0;
  double r = 0.0;
  double l = 0.0;
  double v = 0.0;
  double v_prime = 0.0;
  double dv = 0.0;
  double k_bound = 0.0;
  double ratio = 0.0;  ///< dv / l^a
};

std::vector<FamilyRow> family_experiment(const std::vector<int>& ns, double a = 1.0, int jobs = 1);
std::string family_csv(const std::vector<FamilyRow>& rows);

}  // namespace hd
