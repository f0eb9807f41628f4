#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hd {

/// Oriented cell complex on the 2-sphere. Faces are cyclic vertex lists,
/// counterclockwise seen from outside; edges are derived from the faces.
struct CombPolyhedron {
  int vertex_count = 0;
  std::vector<std::vector<int>> faces;

  int face_count() const { return static_cast<int>(faces.size()); }
  int edge_count() const;

  bool operator==(const CombPolyhedron&) const = default;
};

/// Undirected edge with the two faces it borders. `face_left` contains the
/// dart u->v, `face_right` contains v->u.
struct Edge {
  int u = 0;
  int v = 0;
  int face_left = -1;
  int face_right = -1;
};

/// Edges sorted by (min(u,v), max(u,v)). Fails silently on broken complexes;
/// run validate() first when the input is untrusted.
std::vector<Edge> edges_of(const CombPolyhedron& p);

/// Valence per vertex (number of darts leaving it).
std::vector<int> valences(const CombPolyhedron& p);

/// Neighbours of each vertex in cyclic rotation order.
std::vector<std::vector<int>> rotation_system(const CombPolyhedron& p);

/// Two edges of one face, referenced by position: edge i of a face is
/// (f[i], f[i+1 mod n]).
struct SurgerySpec {
  int face = 0;
  int e1 = 0;
  int e2 = 0;
  bool operator==(const SurgerySpec&) const = default;
};

struct ValidationReport {
  bool ok = true;
  bool is_basic = false;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  std::vector<std::string> failures;
};

/// Checks Euler characteristic, two faces per edge, orientation consistency
/// and single-cycle rotations. With `require_basic` the valence-4 and
/// face-size conditions become failures too.
ValidationReport validate(const CombPolyhedron& p, bool require_basic = false);

/// Antiprism on 2n vertices: top n-gon is face 0, bottom n-gon is face 1.
CombPolyhedron drum(int n);

/// Every admissible surgery: faces with >= 4 sides, unordered pairs of
/// non-adjacent edges (e1 < e2).
std::vector<SurgerySpec> admissible_surgeries(const CombPolyhedron& p);

bool is_admissible(const CombPolyhedron& p, const SurgerySpec& s);

/// Bookkeeping of one pinch.
struct SurgeryResult {
  CombPolyhedron poly;
  int new_vertex = -1;
  int face_a = -1;      ///< half of the split face kept at the old index
  int face_b = -1;      ///< appended half
  int across_e1 = -1;   ///< face on the other side of e1
  int across_e2 = -1;   ///< face on the other side of e2
  int e1_u = -1, e1_v = -1;  ///< endpoints of e1 in face order
  int e2_u = -1, e2_v = -1;
};

/// Pinches e1 and e2 of the face together into a new 4-valent vertex.
SurgeryResult surgery_detail(const CombPolyhedron& p, const SurgerySpec& s);
CombPolyhedron surgery(const CombPolyhedron& p, const SurgerySpec& s);

/// Isomorphism class under relabelling and reflection.
struct CanonicalCode {
  std::vector<std::uint32_t> words;

  std::string hex() const;
  auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const CombPolyhedron& p);

/// Relabels vertices: vertex i becomes perm[i].
CombPolyhedron relabel(const CombPolyhedron& p, const std::vector<int>& perm);

/// Orientation reversal (every face cycle reversed).
CombPolyhedron mirror(const CombPolyhedron& p);

struct Enumerated {
  CanonicalCode code;
  CombPolyhedron rep;
};

/// Closure of the seeds under `generations` rounds of surgery, deduplicated
/// by canonical code and sorted by it. `jobs` > 1 fans the surgeries of each
/// round out across threads; the result does not depend on it.
std::vector<Enumerated> enumerate_basic(const std::vector<CombPolyhedron>& seeds,
                                        int generations, int jobs = 1);

}  // namespace hd
