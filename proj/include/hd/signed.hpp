#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hd/combin.hpp"

namespace hd {

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

char to_char(Sign s);
Sign sign_from_char(char c);

/// Trivalent polyhedron with one sign per edge. `signs[i]` belongs to
/// edges_of(base)[i].
struct SignedPolyhedron {
  CombPolyhedron base;
  std::vector<Sign> signs;

  Sign sign_of(int u, int v) const;
};

/// Builds the signed polyhedron and checks trivalence and sign count.
SignedPolyhedron make_signed(CombPolyhedron base, std::vector<Sign> signs);

/// Number of sign changes around a cyclic word, zero entries skipped.
int sign_changes(const std::vector<Sign>& word);

/// Index of a vertex from its cyclic sign word, in quarters: 4 minus 1 per
/// change and 2 per repeat between cyclically adjacent edges.
int vertex_index_quarters(const std::vector<Sign>& word);

/// Index of a face centre with 2n sign changes, 1 - n/2, in quarters.
int face_index_quarters(const std::vector<Sign>& word);

struct IndexReport {
  std::vector<int> vertex_quarters;
  std::vector<int> face_quarters;
  int total_quarters = 0;
  double total() const { return total_quarters / 4.0; }
};

/// Throws must-collapse-first if any edge carries 0.
IndexReport sign_indices(const SignedPolyhedron& sp);

/// One sphere of the bouquet left after collapsing zero edges. Cell i is
/// the image of original face `original_faces[i]`.
struct SphereComponent {
  std::vector<int> original_faces;
  std::vector<std::vector<Sign>> cell_words;
  std::vector<std::vector<Sign>> vertex_words;
  std::vector<std::vector<int>> vertex_members;
  int edge_count = 0;

  bool trivial() const { return edge_count == 0; }
  int euler() const {
    return static_cast<int>(vertex_words.size()) - edge_count + static_cast<int>(cell_words.size());
  }
  int index_quarters() const;
};

struct CollapseResult {
  std::vector<SphereComponent> components;
  std::vector<int> face_component;  ///< original face -> component
  std::vector<int> face_cell;       ///< original face -> cell inside it
};

CollapseResult collapse_zero_edges(const SignedPolyhedron& sp);

struct RigidityVerdict {
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
  int nontrivial_spheres = 0;
  std::string witness;
};

/// Checks the zero-collapse dichotomy for the pair of exceptional faces.
RigidityVerdict check_rigidity_dichotomy(const SignedPolyhedron& sp, int f1, int f2);

/// Cube with faces 0 (bottom) and 1 (top) opposite.
CombPolyhedron cube();
CombPolyhedron tetrahedron();

}  // namespace hd
