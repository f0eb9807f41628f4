#include "hd/dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include "hd/error.hpp"

namespace hd {

namespace {

constexpr double kPi = std::numbers::pi;

std::pair<int, int> ends(const ConeSurface& s, SideRef r) {
  const auto& p = s.polygons[r.poly];
  return {p.corners[r.side], p.corners[(r.side + 1) % p.corners.size()]};
}

double length(const ConeSurface& s, SideRef r) { return s.polygons[r.poly].sides[r.side]; }

SideRef edge_key(const ConeSurface& s, SideRef r) { return std::min(r, s.partner(r)); }

bool valid_ref(const ConeSurface& s, SideRef r) {
  return r.poly >= 0 && r.poly < static_cast<int>(s.polygons.size()) && r.side >= 0 &&
         r.side < static_cast<int>(s.polygons[r.poly].sides.size());
}

struct Corner {
  int poly;
  int index;
};

// Corners around vertex v in rotation order; corner k is followed by the
// edge leaving it along its outgoing side.
std::vector<Corner> link(const ConeSurface& s, Corner start) {
  std::vector<Corner> out;
  Corner c = start;
  do {
    out.push_back(c);
    const SideRef q = s.partner({c.poly, c.index});
    c = {q.poly, static_cast<int>((q.side + 1) % s.polygons[q.poly].corners.size())};
  } while ((c.poly != start.poly || c.index != start.index) && out.size() <= 100000);
  return out;
}

std::vector<Corner> first_corners(const ConeSurface& s) {
  std::vector<Corner> first(s.vertex_count(), Corner{-1, -1});
  for (int p = 0; p < static_cast<int>(s.polygons.size()); ++p)
    for (int i = 0; i < static_cast<int>(s.polygons[p].corners.size()); ++i) {
      const int v = s.polygons[p].corners[i];
      if (v >= 0 && v < s.vertex_count() && first[v].poly < 0) first[v] = {p, i};
    }
  return first;
}

bool triangle_consistent(const ConePolygon& t, double tol) {
  for (int i = 0; i < 3; ++i) {
    const double a = t.sides[(i + 1) % 3], b = t.sides[(i + 2) % 3], c = t.sides[i];
    if (std::abs(std::cos(a) - (std::cos(b) * std::cos(c) + std::sin(b) * std::sin(c) * std::cos(t.angles[i]))) > tol)
      return false;
  }
  return true;
}

}  // namespace

SurfaceReport check_surface(const ConeSurface& s) {
  SurfaceReport rep;
  auto fail = [&](std::string m) {
    rep.ok = false;
    rep.failures.push_back(std::move(m));
  };
  if (s.glue.size() != s.polygons.size()) {
    fail("gluing table does not match the polygons");
    return rep;
  }
  int sides = 0;
  std::vector<int> uses(s.vertex_count(), 0);
  for (int p = 0; p < static_cast<int>(s.polygons.size()); ++p) {
    const auto& poly = s.polygons[p];
    const std::size_t k = poly.corners.size();
    if (k < 2 || poly.sides.size() != k || poly.angles.size() != k || s.glue[p].size() != k) {
      fail(poly.name + ": malformed polygon");
      return rep;
    }
    sides += static_cast<int>(k);
    for (int v : poly.corners) {
      if (v < 0 || v >= s.vertex_count()) {
        fail(poly.name + ": vertex id out of range");
        return rep;
      }
      ++uses[v];
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (poly.sides[i] < 0.0 || poly.sides[i] > kPi + 1e-12) fail(poly.name + ": side length outside [0, pi]");
      if (poly.angles[i] < 0.0 || poly.angles[i] > kPi + 1e-12) fail(poly.name + ": corner angle outside [0, pi]");
    }
    if (poly.hemisphere) {
      double total = 0.0;
      for (double x : poly.sides) total += x;
      if (std::abs(total - 2.0 * kPi) > 1e-10) fail(poly.name + ": equator is not 2 pi long");
      for (double a : poly.angles)
        if (std::abs(a - kPi) > 1e-12) fail(poly.name + ": equator corner is not straight");
    } else if (k == 3 && !triangle_consistent(poly, 1e-10)) {
      fail(poly.name + ": violates the spherical law of cosines");
    }
    for (int i = 0; i < static_cast<int>(k); ++i) {
      const SideRef me{p, i};
      const SideRef q = s.glue[p][i];
      if (!valid_ref(s, q)) {
        fail(poly.name + ": side glued to nothing");
        continue;
      }
      if (q == me || s.partner(q) != me) fail(poly.name + ": gluing is not an involution");
      if (std::abs(length(s, me) - length(s, q)) > 1e-10) fail(poly.name + ": glued sides differ in length");
      const auto [a, b] = ends(s, me);
      const auto [c, d] = ends(s, q);
      if (a != d || b != c) fail(poly.name + ": glued sides disagree on endpoints");
    }
  }
  if (!rep.ok) return rep;
  for (int v = 0; v < s.vertex_count(); ++v)
    if (uses[v] == 0) fail("vertex " + s.vertex_names[v] + " is unused");
  if (!rep.ok) return rep;
  const auto first = first_corners(s);
  for (int v = 0; v < s.vertex_count(); ++v)
    if (static_cast<int>(link(s, first[v]).size()) != uses[v]) fail("link of " + s.vertex_names[v] + " is not one cycle");
  const int euler = s.vertex_count() - sides / 2 + static_cast<int>(s.polygons.size());
  if (euler != 2) fail("Euler characteristic " + std::to_string(euler));
  return rep;
}

ConeSurface dual_of(const CombPolyhedron& p, const AngleAssignment& angles) {
  const auto rep = validate(p);
  if (!rep.ok) throw Error(ErrorKind::InvalidInput, rep.failures.front());
  // per vertex: face -> (vertex before, vertex after) along that face
  std::vector<std::map<int, std::pair<int, int>>> around(p.vertex_count);
  for (int f = 0; f < p.face_count(); ++f) {
    const auto& fc = p.faces[f];
    const int n = static_cast<int>(fc.size());
    for (int i = 0; i < n; ++i) around[fc[i]][f] = {fc[(i + n - 1) % n], fc[(i + 1) % n]};
  }
  ConeSurface s;
  for (int f = 0; f < p.face_count(); ++f) s.vertex_names.push_back("f" + std::to_string(f));
  std::map<std::pair<int, int>, SideRef> side_of;  // dart (v, w) -> side of h_v
  for (int v = 0; v < p.vertex_count; ++v) {
    ConePolygon h;
    h.name = "h" + std::to_string(v);
    h.hemisphere = true;
    int f = around[v].begin()->first;
    for (std::size_t k = 0; k < around[v].size(); ++k) {
      const int w = around[v].at(f).second;
      h.corners.push_back(f);
      h.sides.push_back(kPi - angles.at(v, w));
      h.angles.push_back(kPi);
      side_of[{v, w}] = {v, static_cast<int>(k)};
      // the next face around v enters v from w
      int next = -1;
      for (const auto& [g, io] : around[v])
        if (io.first == w) next = g;
      f = next;
    }
    double total = 0.0;
    for (double x : h.sides) total += x;
    if (std::abs(total - 2.0 * kPi) > 1e-9)
      throw Error(ErrorKind::InadmissibleAngles, "exterior angles at vertex " + std::to_string(v) + " do not sum to 2 pi");
    s.polygons.push_back(std::move(h));
  }
  s.glue.resize(s.polygons.size());
  for (int v = 0; v < p.vertex_count; ++v) s.glue[v].resize(s.polygons[v].sides.size());
  for (const auto& [dart, ref] : side_of) s.glue[ref.poly][ref.side] = side_of.at({dart.second, dart.first});
  return s;
}

SideRef dual_side(const ConeSurface& s, const CombPolyhedron& p, int u, int v) {
  std::vector<int> shared;
  for (int f = 0; f < p.face_count(); ++f) {
    const auto& fc = p.faces[f];
    if (std::count(fc.begin(), fc.end(), u) && std::count(fc.begin(), fc.end(), v)) shared.push_back(f);
  }
  if (u < 0 || u >= static_cast<int>(s.polygons.size()) || shared.size() != 2)
    throw Error(ErrorKind::InvalidInput, "not an edge of the polyhedron");
  const auto& h = s.polygons[u];
  const int k = static_cast<int>(h.corners.size());
  for (int i = 0; i < k; ++i) {
    const int a = h.corners[i], b = h.corners[(i + 1) % k];
    if ((a == shared[0] && b == shared[1]) || (a == shared[1] && b == shared[0])) return {u, i};
  }
  throw Error(ErrorKind::InvalidInput, "edge not found on its hemisphere");
}

ConeSurface insert_bigon(const ConeSurface& s, SideRef e1, SideRef e2, double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw Error(ErrorKind::InvalidParameter, "bigon angle must lie in [0, pi]");
  if (!valid_ref(s, e1) || !valid_ref(s, e2)) throw Error(ErrorKind::InvalidInput, "no such side");
  const SideRef f1 = s.partner(e1), f2 = s.partner(e2);
  for (int a : {e1.poly, f1.poly})
    for (int b : {e2.poly, f2.poly})
      if (a == b) throw Error(ErrorKind::AdjacentDualEdges, "dual edges bound a common polygon");
  for (SideRef r : {e1, e2})
    if (std::abs(length(s, r) - kPi / 2) > 1e-10) throw Error(ErrorKind::InvalidInput, "slit edges must have length pi/2");
  const auto [a1, b1] = ends(s, e1);
  const auto [a2, b2] = ends(s, e2);
  int c = -1, g1 = -1, g2 = -1, shared = 0;
  for (auto [x, y] : {std::pair{a1, b1}, std::pair{b1, a1}})
    for (auto [u, w] : {std::pair{a2, b2}, std::pair{b2, a2}})
      if (x == u) {
        c = x;
        g1 = y;
        g2 = w;
        ++shared;
      }
  if (shared != 1 || g1 == g2) throw Error(ErrorKind::InvalidInput, "dual edges must meet in exactly one vertex");

  ConeSurface out = s;
  const auto first = first_corners(s);
  const auto cyc = link(s, first[c]);
  const int m = static_cast<int>(cyc.size());
  const SideRef k1 = edge_key(s, e1), k2 = edge_key(s, e2);
  int pa = -1, pb = -1;
  for (int i = 0; i < m; ++i) {
    const SideRef k = edge_key(s, {cyc[i].poly, cyc[i].index});
    if (k == k1) pa = i;
    if (k == k2) pb = i;
  }
  if (pa < 0 || pb < 0) throw Error(ErrorKind::ConstructionFailed, "slit edges missing from the vertex link");
  // corners after edge 2 up to the one before edge 1 move to the new vertex
  const int nc = s.vertex_count();
  out.vertex_names.push_back(s.vertex_names[c] + "'");
  for (int i = (pb + 1) % m;; i = (i + 1) % m) {
    out.polygons[cyc[i].poly].corners[cyc[i].index] = nc;
    if (i == pa) break;
  }

  const int t1 = static_cast<int>(out.polygons.size()), t2 = t1 + 1;
  auto make = [&](const std::string& name, int apex, SideRef x, SideRef y, int index) {
    // reversed copies of x and y, ordered into apex
    auto rx = ends(out, x), ry = ends(out, y);
    std::swap(rx.first, rx.second);
    std::swap(ry.first, ry.second);
    if (rx.second != apex) {
      std::swap(rx, ry);
      std::swap(x, y);
    }
    if (rx.second != apex || ry.first != apex) throw Error(ErrorKind::ConstructionFailed, "slit sides do not meet at the apex");
    ConePolygon t;
    t.name = name;
    t.bigon = true;
    t.corners = {rx.first, apex, ry.second};
    t.sides = {kPi / 2, kPi / 2, kPi - theta};
    t.angles = {kPi / 2, kPi - theta, kPi / 2};
    out.polygons.push_back(t);
    out.glue.push_back({x, y, SideRef{index == t1 ? t2 : t1, 2}});
    out.glue[x.poly][x.side] = {index, 0};
    out.glue[y.poly][y.side] = {index, 1};
  };
  make("T1", g1, e1, f1, t1);
  make("T2", g2, e2, f2, t2);
  const auto& p1 = out.polygons[t1].corners;
  const auto& p2 = out.polygons[t2].corners;
  if (p1[2] != p2[0] || p1[0] != p2[2]) throw Error(ErrorKind::ConstructionFailed, "bigon halves do not close up");
  return out;
}

ConeSurface bent_dual(const CombPolyhedron& p, const SurgerySpec& b, double theta) {
  if (!is_admissible(p, b)) throw Error(ErrorKind::InvalidSurgery, "not an admissible pair of edges");
  const ConeSurface s = dual_of(p);
  const auto& f = p.faces[b.face];
  const int n = static_cast<int>(f.size());
  const SideRef e1 = dual_side(s, p, f[b.e1], f[(b.e1 + 1) % n]);
  const SideRef e2 = dual_side(s, p, f[b.e2], f[(b.e2 + 1) % n]);
  return insert_bigon(s, e1, e2, theta);
}

ConeSurface prune_degenerate(const ConeSurface& s) {
  constexpr double tol = 1e-14;
  std::vector<bool> drop(s.polygons.size(), false);
  std::vector<int> merge(s.vertex_count());
  for (int v = 0; v < s.vertex_count(); ++v) merge[v] = v;
  std::function<int(int)> root = [&](int v) { return merge[v] == v ? v : merge[v] = root(merge[v]); };
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    const auto& t = s.polygons[p];
    if (!t.bigon || t.sides[2] > tol || t.angles[1] > tol) continue;
    drop[p] = true;
    const int a = root(t.corners[0]), b = root(t.corners[2]);
    merge[std::max(a, b)] = std::min(a, b);
  }
  ConeSurface out = s;
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    if (!drop[p]) continue;
    const SideRef x = s.glue[p][0], y = s.glue[p][1];
    out.glue[x.poly][x.side] = y;
    out.glue[y.poly][y.side] = x;
  }
  std::vector<int> new_poly(s.polygons.size(), -1), new_vertex(s.vertex_count(), -1);
  ConeSurface res;
  for (int v = 0; v < s.vertex_count(); ++v)
    if (root(v) == v) {
      new_vertex[v] = res.vertex_count();
      res.vertex_names.push_back(s.vertex_names[v]);
    }
  for (std::size_t p = 0; p < s.polygons.size(); ++p)
    if (!drop[p]) new_poly[p] = static_cast<int>(res.polygons.size()), res.polygons.push_back(s.polygons[p]);
  for (auto& poly : res.polygons)
    for (int& v : poly.corners) v = new_vertex[root(v)];
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    if (drop[p]) continue;
    std::vector<SideRef> g;
    for (SideRef r : out.glue[p]) g.push_back({new_poly[r.poly], r.side});
    res.glue.push_back(std::move(g));
  }
  return res;
}

bool same_gluing(const ConeSurface& a, const ConeSurface& b, double tol) {
  if (a.vertex_names != b.vertex_names || a.glue != b.glue || a.polygons.size() != b.polygons.size()) return false;
  for (std::size_t p = 0; p < a.polygons.size(); ++p) {
    const auto &x = a.polygons[p], &y = b.polygons[p];
    if (x.name != y.name || x.corners != y.corners || x.hemisphere != y.hemisphere || x.bigon != y.bigon ||
        x.sides.size() != y.sides.size())
      return false;
    for (std::size_t i = 0; i < x.sides.size(); ++i)
      if (std::abs(x.sides[i] - y.sides[i]) > tol || std::abs(x.angles[i] - y.angles[i]) > tol) return false;
  }
  return true;
}

ConeSurface scale_and_polarize(const ConeSurface& s, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "scale parameter must be non-negative");
  ConeSurface out;
  out.vertex_names = s.vertex_names;
  std::vector<std::vector<SideRef>> moved(s.polygons.size());  // old side -> new side
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    const auto& poly = s.polygons[p];
    const int k = static_cast<int>(poly.corners.size());
    std::vector<double> sides = poly.sides;
    for (int i = 0; i < k; ++i) {
      const SideRef q = s.glue[p][i];
      if (!poly.bigon && !s.polygons[q.poly].bigon) sides[i] *= 1.0 + t;
    }
    if (!poly.hemisphere) {
      moved[p].clear();
      for (int i = 0; i < k; ++i) moved[p].push_back({static_cast<int>(out.polygons.size()), i});
      ConePolygon c = poly;
      c.sides = sides;
      out.polygons.push_back(std::move(c));
      continue;
    }
    const int pole = out.vertex_count();
    out.vertex_names.push_back("p" + poly.name);
    const int base = static_cast<int>(out.polygons.size());
    for (int i = 0; i < k; ++i) {
      ConePolygon tri;
      tri.name = poly.name + "." + std::to_string(i);
      tri.corners = {poly.corners[i], poly.corners[(i + 1) % k], pole};
      tri.sides = {sides[i], kPi / 2, kPi / 2};
      tri.angles = {kPi / 2, kPi / 2, sides[i]};
      out.polygons.push_back(std::move(tri));
      moved[p].push_back({base + i, 0});
    }
  }
  out.glue.resize(out.polygons.size());
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    const int k = static_cast<int>(s.polygons[p].corners.size());
    for (int i = 0; i < k; ++i) {
      const SideRef me = moved[p][i];
      const SideRef q = s.glue[p][i];
      out.glue[me.poly].resize(out.polygons[me.poly].sides.size());
      out.glue[me.poly][me.side] = moved[q.poly][q.side];
    }
    if (s.polygons[p].hemisphere) {
      const int base = moved[p][0].poly;
      for (int i = 0; i < k; ++i) {
        out.glue[base + i][1] = {base + (i + 1) % k, 2};
        out.glue[base + (i + 1) % k][2] = {base + i, 1};
      }
    }
  }
  return out;
}

ConeAngles cone_angles(const ConeSurface& s) {
  ConeAngles r;
  r.angles.assign(s.vertex_count(), 0.0);
  for (const auto& poly : s.polygons)
    for (std::size_t i = 0; i < poly.corners.size(); ++i) r.angles[poly.corners[i]] += poly.angles[i];
  for (int v = 0; v < s.vertex_count(); ++v)
    if (r.angles[v] < 2.0 * kPi - 1e-10) r.deficient.push_back(v);
  return r;
}

double surface_area(const ConeSurface& s) {
  double area = 0.0;
  for (const auto& poly : s.polygons) {
    double sum = 0.0;
    for (double a : poly.angles) sum += a;
    area += sum - (static_cast<double>(poly.angles.size()) - 2.0) * kPi;
  }
  return area;
}

double gauss_bonnet_defect(const ConeSurface& s) {
  double excess = 0.0;
  for (double a : cone_angles(s).angles) excess += a - 2.0 * kPi;
  return surface_area(s) - 4.0 * kPi - excess;
}

std::optional<EdgeGeodesic> edge_geodesic_search(const ConeSurface& s, int budget) {
  if (budget < 1) throw Error(ErrorKind::InvalidParameter, "budget must be positive");
  const auto first = first_corners(s);
  // per vertex: the rotation of outgoing sides with the corner angle before each
  struct Slot {
    SideRef out;
    int to;
    double offset;  // total corner angle from slot 0 to here
  };
  std::vector<std::vector<Slot>> rot(s.vertex_count());
  std::vector<double> total(s.vertex_count(), 0.0);
  for (int v = 0; v < s.vertex_count(); ++v) {
    double acc = 0.0;
    for (const auto& c : link(s, first[v])) {
      const SideRef out{c.poly, c.index};
      acc += s.polygons[c.poly].angles[c.index];
      rot[v].push_back({out, ends(s, out).second, acc});
    }
    total[v] = acc;
  }
  // position of each edge in the rotation of each of its endpoints
  std::map<std::pair<SideRef, int>, int> slot_of;
  for (int v = 0; v < s.vertex_count(); ++v)
    for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) slot_of[{edge_key(s, rot[v][i].out), v}] = i;

  auto straight = [&](int v, int in_slot, int out_slot) {
    if (in_slot == out_slot) return false;
    double a = rot[v][out_slot].offset - rot[v][in_slot].offset;
    if (a < 0.0) a += total[v];
    return a >= kPi - 1e-12 && total[v] - a >= kPi - 1e-12;
  };

  std::optional<EdgeGeodesic> best;
  std::vector<SideRef> path;
  std::vector<int> verts;
  std::function<void(int, int, double)> walk = [&](int v, int in_slot, double len) {
    for (int o = 0; o < static_cast<int>(rot[v].size()); ++o) {
      if (!straight(v, in_slot, o)) continue;
      const SideRef e = rot[v][o].out;
      const double l = len + length(s, e);
      if (best && l > best->length + 1e-12) continue;
      const int w = rot[v][o].to;
      const int arrive = slot_of.at({edge_key(s, e), w});
      path.push_back(e);
      if (w == verts.front() && straight(w, arrive, slot_of.at({edge_key(s, path.front()), w}))) {
        bool better = !best || l < best->length - 1e-12;
        if (!better && std::abs(l - best->length) <= 1e-12) better = path < best->edges;
        if (better) best = EdgeGeodesic{l, verts, path};
      }
      if (static_cast<int>(path.size()) < budget) {
        verts.push_back(w);
        walk(w, arrive, l);
        verts.pop_back();
      }
      path.pop_back();
    }
  };
  for (int v = 0; v < s.vertex_count(); ++v) {
    for (int o = 0; o < static_cast<int>(rot[v].size()); ++o) {
      const SideRef e = rot[v][o].out;
      if (best && length(s, e) > best->length + 1e-12) continue;
      const int w = rot[v][o].to;
      verts = {v};
      path = {e};
      if (w == v && straight(v, slot_of.at({edge_key(s, e), v}), o)) {
        if (!best || length(s, e) < best->length - 1e-12) best = EdgeGeodesic{length(s, e), verts, path};
      }
      if (budget > 1) {
        verts.push_back(w);
        walk(w, slot_of.at({edge_key(s, e), w}), length(s, e));
      }
    }
  }
  return best;
}

}  // namespace hd
