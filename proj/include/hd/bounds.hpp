#pragma once

#include <string>
#include <vector>

#include "hd/combin.hpp"
#include "hd/pattern.hpp"

namespace hd {

struct ThinPolygonReport {
  int n = 0;
  double l = 0.0;
  int e3 = -1, e4 = -1;  ///< closest pair separated by g, by position in the face
  double d = 0.0;
  double lhs = 0.0;  ///< sinh(d/2) sinh((pi-2) l / (2 pi (n-3)))
  bool pass = false;

  // filled only when asked for
  bool has_aux = false;
  double epsilon = 0.0;  ///< l sinh(epsilon) = (n-2) pi
  double l0 = 0.0, l1 = 0.0, l2 = 0.0;
};

/// Lemma check on one face of a realized pattern; e1, e2 are edge positions
/// as in face_perp_length. `samples` points along g resolve l0, l1, l2.
ThinPolygonReport thin_polygon_check(const CirclePattern& pat, int face, int e1, int e2, bool aux = false,
                                     int samples = 4000);

/// (2 pi (n-3) / (pi-2)) asinh(tan(phi/2)), phi the interior angle between
/// the two bent halves.
double bend_bound(double phi, int n);

/// (pi/(pi-2)) int_0^pi asinh(tan(phi/2)) dphi by tanh-sinh quadrature.
double combinatorial_K(int max_refinements = 15);

struct DrillVerdict {
  std::string code;  ///< canonical code of P, hex
  SurgerySpec spec;
  int face_n = 0;
  double v_before = 0.0, v_after = 0.0;
  double dv = 0.0;
  double l = 0.0;
  double bound_pi = 0.0;  ///< (pi/2) l
  double bound_k = 0.0;   ///< K (n-3)
  double dv_cover = 0.0;  ///< 4 dv
  double big_l = 0.0;     ///< 2 l
  bool pass_positive = false;
  bool pass_pi = false;
  bool pass_k = false;
  bool pass_cover = false;
};

DrillVerdict drill_report(const CombPolyhedron& p, const SurgerySpec& s);

/// Every admissible surgery of every polyhedron, in input order.
std::vector<DrillVerdict> drill_inventory(const std::vector<CombPolyhedron>& polys, int jobs = 1);

/// Header plus one row per verdict.
std::string drill_csv(const std::vector<DrillVerdict>& rows);

}  // namespace hd
