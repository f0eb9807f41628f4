#pragma once

#include <functional>
#include <tuple>
#include <vector>

#include "hd/combin.hpp"
#include "hd/geom.hpp"

namespace hd::detail {

/// Constraint system of a circle pattern: unit normals, ideal vertices on
/// their faces, and prescribed angles between face pairs.
struct Constraints {
  int faces = 0;
  int vertices = 0;
  std::vector<std::vector<int>> incident;              ///< ideal vertices per face
  std::vector<std::tuple<int, int, double>> pairs;     ///< (face, face, dihedral angle)
  std::vector<bool> pinned;                            ///< per vertex
  std::vector<bool> active;                            ///< vertex takes part at all
};

struct SolveStats {
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

/// Levenberg-Marquardt on the joint system, starting from the given state.
SolveStats solve(const Constraints& c, std::vector<Mink>& normals, std::vector<cplx>& points, int max_iterations,
                 double tolerance);

double max_residual(const Constraints& c, const std::vector<Mink>& normals, const std::vector<cplx>& points);

/// Flips each normal so that the vertices off its face sit on the
/// polyhedron side, then checks strict convexity and that every
/// prescribed angle is recovered. Throws no-convergence otherwise.
void orient_and_check(const Constraints& c, std::vector<Mink>& normals, const std::vector<cplx>& points);

/// Starting positions from Rivin's variational principle: v_inf goes to
/// infinity, the other faces are fanned into triangles whose angles maximise
/// the volume. Faces come out counterclockwise. False if it does not settle.
bool rivin_layout(const CombPolyhedron& p, const std::function<double(int, int)>& alpha, int v_inf,
                  std::vector<cplx>& z);

}  // namespace hd::detail
