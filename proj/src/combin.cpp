#include "hd/combin.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <future>
#include <map>
#include <set>
#include <utility>

#include "hd/error.hpp"

namespace hd {

namespace {

using Dart = std::pair<int, int>;

}  // namespace

int CombPolyhedron::edge_count() const {
  int darts = 0;
  for (const auto& f : faces) darts += static_cast<int>(f.size());
  return darts / 2;
}

std::vector<Edge> edges_of(const CombPolyhedron& p) {
  std::map<Dart, Edge> out;
  for (int f = 0; f < p.face_count(); ++f) {
    const auto& cyc = p.faces[f];
    const int n = static_cast<int>(cyc.size());
    for (int i = 0; i < n; ++i) {
      const int a = cyc[i], b = cyc[(i + 1) % n];
      auto key = Dart{std::min(a, b), std::max(a, b)};
      auto [it, fresh] = out.try_emplace(key, Edge{key.first, key.second, -1, -1});
      if (a == key.first)
        it->second.face_left = f;
      else
        it->second.face_right = f;
    }
  }
  std::vector<Edge> res;
  res.reserve(out.size());
  for (auto& [k, e] : out) res.push_back(e);
  return res;
}

std::vector<int> valences(const CombPolyhedron& p) {
  std::vector<int> val(p.vertex_count, 0);
  for (const auto& f : p.faces)
    for (int v : f)
      if (v >= 0 && v < p.vertex_count) ++val[v];
  return val;
}

std::vector<std::vector<int>> rotation_system(const CombPolyhedron& p) {
  // For consecutive darts y->x->z of a face, z and y are consecutive around x.
  std::vector<std::map<int, int>> next(p.vertex_count);
  for (const auto& cyc : p.faces) {
    const int n = static_cast<int>(cyc.size());
    for (int i = 0; i < n; ++i) {
      const int y = cyc[(i + n - 1) % n], x = cyc[i], z = cyc[(i + 1) % n];
      next[x][z] = y;
    }
  }
  std::vector<std::vector<int>> rot(p.vertex_count);
  for (int x = 0; x < p.vertex_count; ++x) {
    if (next[x].empty()) continue;
    const int start = next[x].begin()->first;
    int cur = start;
    do {
      rot[x].push_back(cur);
      auto it = next[x].find(cur);
      if (it == next[x].end()) break;
      cur = it->second;
    } while (cur != start && rot[x].size() <= next[x].size());
  }
  return rot;
}

ValidationReport validate(const CombPolyhedron& p, bool require_basic) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.failures.push_back(std::move(msg));
  };
  rep.vertices = p.vertex_count;
  rep.faces = p.face_count();

  std::map<Dart, int> darts;
  for (int f = 0; f < p.face_count(); ++f) {
    const auto& cyc = p.faces[f];
    const int n = static_cast<int>(cyc.size());
    if (n == 0) {
      fail("face " + std::to_string(f) + " is empty");
      continue;
    }
    for (int i = 0; i < n; ++i) {
      const int a = cyc[i], b = cyc[(i + 1) % n];
      if (a < 0 || a >= p.vertex_count) {
        fail("face " + std::to_string(f) + " references vertex " + std::to_string(a));
        continue;
      }
      if (a == b) fail("face " + std::to_string(f) + " has a loop at " + std::to_string(a));
      if (!darts.emplace(Dart{a, b}, f).second)
        fail("dart " + std::to_string(a) + "->" + std::to_string(b) + " used twice");
    }
  }
  if (!rep.ok) return rep;

  std::set<Dart> undirected;
  for (const auto& [d, f] : darts) {
    undirected.insert({std::min(d.first, d.second), std::max(d.first, d.second)});
    auto it = darts.find({d.second, d.first});
    if (it == darts.end()) {
      fail("edge " + std::to_string(d.first) + "-" + std::to_string(d.second) + " has one face");
    } else if (it->second == f) {
      fail("edge " + std::to_string(d.first) + "-" + std::to_string(d.second) +
           " borders face " + std::to_string(f) + " twice");
    }
  }
  rep.edges = static_cast<int>(undirected.size());

  const auto val = valences(p);
  const auto rot = rotation_system(p);
  for (int v = 0; v < p.vertex_count; ++v) {
    if (val[v] == 0) {
      fail("vertex " + std::to_string(v) + " is isolated");
    } else if (rep.ok && static_cast<int>(rot[v].size()) != val[v]) {
      fail("rotation at vertex " + std::to_string(v) + " is not a single cycle");
    }
  }

  const int euler = rep.vertices - rep.edges + rep.faces;
  if (euler != 2) fail("Euler characteristic " + std::to_string(euler) + " != 2");

  bool basic = rep.ok;
  for (int v = 0; v < p.vertex_count && basic; ++v) basic = val[v] == 4;
  for (const auto& f : p.faces) basic = basic && f.size() >= 3;
  rep.is_basic = basic;
  if (require_basic && rep.ok && !basic) {
    for (int v = 0; v < p.vertex_count; ++v)
      if (val[v] != 4) fail("vertex " + std::to_string(v) + " has valence " + std::to_string(val[v]));
    for (int f = 0; f < p.face_count(); ++f)
      if (p.faces[f].size() < 3) fail("face " + std::to_string(f) + " has fewer than 3 sides");
  }
  return rep;
}

CombPolyhedron drum(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidParameter, "drum needs n >= 3, got " + std::to_string(n));
  CombPolyhedron p;
  p.vertex_count = 2 * n;
  std::vector<int> top(n), bottom(n);
  for (int i = 0; i < n; ++i) {
    top[i] = i;
    bottom[i] = 2 * n - 1 - i;
  }
  p.faces.push_back(top);
  p.faces.push_back(bottom);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    p.faces.push_back({j, i, n + i});
    p.faces.push_back({n + i, n + j, j});
  }
  return p;
}

bool is_admissible(const CombPolyhedron& p, const SurgerySpec& s) {
  if (s.face < 0 || s.face >= p.face_count()) return false;
  const int n = static_cast<int>(p.faces[s.face].size());
  if (n < 4) return false;
  if (s.e1 < 0 || s.e1 >= n || s.e2 < 0 || s.e2 >= n || s.e1 == s.e2) return false;
  const int gap = (s.e2 - s.e1 + n) % n;
  return gap != 1 && gap != n - 1;
}

std::vector<SurgerySpec> admissible_surgeries(const CombPolyhedron& p) {
  std::vector<SurgerySpec> out;
  for (int f = 0; f < p.face_count(); ++f) {
    const int n = static_cast<int>(p.faces[f].size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (is_admissible(p, {f, i, j})) out.push_back({f, i, j});
  }
  return out;
}

SurgeryResult surgery_detail(const CombPolyhedron& p, const SurgerySpec& s) {
  if (!is_admissible(p, s)) {
    throw Error(ErrorKind::InvalidSurgery, "face " + std::to_string(s.face) + " edges " +
                                               std::to_string(s.e1) + "," + std::to_string(s.e2) +
                                               " cannot be pinched");
  }
  const auto& f = p.faces[s.face];
  const int n = static_cast<int>(f.size());
  const int a = f[s.e1], b = f[(s.e1 + 1) % n];
  const int c = f[s.e2], d = f[(s.e2 + 1) % n];
  const int v = p.vertex_count;

  std::vector<int> half1{v}, half2{v};
  for (int i = (s.e1 + 1) % n;; i = (i + 1) % n) {
    half1.push_back(f[i]);
    if (i == s.e2) break;
  }
  for (int i = (s.e2 + 1) % n;; i = (i + 1) % n) {
    half2.push_back(f[i]);
    if (i == s.e1) break;
  }

  SurgeryResult r;
  r.e1_u = a;
  r.e1_v = b;
  r.e2_u = c;
  r.e2_v = d;
  r.new_vertex = v;
  r.poly.vertex_count = p.vertex_count + 1;
  r.poly.faces = p.faces;

  // Faces across e1 and e2 contain the reversed darts b->a and d->c.
  auto insert_into = [&](int from, int to) {
    for (int g = 0; g < p.face_count(); ++g) {
      if (g == s.face) continue;
      auto& cyc = r.poly.faces[g];
      const int m = static_cast<int>(cyc.size());
      for (int i = 0; i < m; ++i) {
        if (cyc[i] == from && cyc[(i + 1) % m] == to) {
          cyc.insert(cyc.begin() + i + 1, v);
          return g;
        }
      }
    }
    throw Error(ErrorKind::InvalidInput, "edge has no opposite face");
  };
  r.across_e1 = insert_into(b, a);
  r.across_e2 = insert_into(d, c);

  auto min_orig = [](const std::vector<int>& h) {
    return *std::min_element(h.begin() + 1, h.end());
  };
  if (min_orig(half2) < min_orig(half1)) std::swap(half1, half2);
  r.poly.faces[s.face] = half1;
  r.poly.faces.push_back(half2);
  r.face_a = s.face;
  r.face_b = p.face_count();
  return r;
}

CombPolyhedron surgery(const CombPolyhedron& p, const SurgerySpec& s) {
  return surgery_detail(p, s).poly;
}

std::string CanonicalCode::hex() const {
  std::string out;
  char buf[16];
  for (auto w : words) {
    std::snprintf(buf, sizeof buf, "%04x", static_cast<unsigned>(w & 0xffffu));
    out += buf;
  }
  return out;
}

namespace {

// BFS relabelling from root dart (u -> v); `forward` selects the rotation
// direction. Emits [degree, neighbour labels...] per vertex in BFS order.
// Aborts early (returning false) once the prefix exceeds `best`.
bool bfs_code(const std::vector<std::vector<int>>& rot,
              const std::vector<std::map<int, int>>& pos, int u, int v, bool forward,
              std::vector<std::uint32_t>& out, const std::vector<std::uint32_t>* best) {
  const int nv = static_cast<int>(rot.size());
  std::vector<int> label(nv, -1), ref(nv, -1);
  std::deque<int> queue;
  int next_label = 0;
  label[u] = next_label++;
  ref[u] = v;
  queue.push_back(u);
  out.clear();
  out.push_back(static_cast<std::uint32_t>(nv));
  bool tie = best != nullptr;

  auto emit = [&](std::uint32_t w) {
    out.push_back(w);
    if (tie) {
      const std::size_t k = out.size() - 1;
      if (k < best->size()) {
        if (w > (*best)[k]) return false;
        if (w < (*best)[k]) tie = false;
      }
    }
    return true;
  };

  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    const auto& r = rot[x];
    const int deg = static_cast<int>(r.size());
    if (!emit(static_cast<std::uint32_t>(deg))) return false;
    const int start = pos[x].at(ref[x]);
    for (int k = 0; k < deg; ++k) {
      const int idx = forward ? (start + k) % deg : (start - k + deg) % deg;
      const int y = r[idx];
      if (label[y] < 0) {
        label[y] = next_label++;
        ref[y] = x;
        queue.push_back(y);
      }
      if (!emit(static_cast<std::uint32_t>(label[y]))) return false;
    }
  }
  return true;
}

}  // namespace

CanonicalCode canonical_code(const CombPolyhedron& p) {
  const auto rep = validate(p);
  if (!rep.ok) throw Error(ErrorKind::InvalidInput, "canonical_code on invalid complex: " + rep.failures.front());

  const auto rot = rotation_system(p);
  std::vector<std::map<int, int>> pos(p.vertex_count);
  for (int x = 0; x < p.vertex_count; ++x)
    for (int k = 0; k < static_cast<int>(rot[x].size()); ++k) pos[x][rot[x][k]] = k;

  std::vector<std::uint32_t> best, cur;
  bool have = false;
  for (int u = 0; u < p.vertex_count; ++u) {
    for (int v : rot[u]) {
      for (bool forward : {true, false}) {
        if (!bfs_code(rot, pos, u, v, forward, cur, have ? &best : nullptr)) continue;
        if (!have || cur < best) {
          best = cur;
          have = true;
        }
      }
    }
  }
  return CanonicalCode{best};
}

CombPolyhedron relabel(const CombPolyhedron& p, const std::vector<int>& perm) {
  CombPolyhedron q = p;
  for (auto& f : q.faces)
    for (int& v : f) v = perm.at(v);
  return q;
}

CombPolyhedron mirror(const CombPolyhedron& p) {
  CombPolyhedron q = p;
  for (auto& f : q.faces) std::reverse(f.begin(), f.end());
  return q;
}

std::vector<Enumerated> enumerate_basic(const std::vector<CombPolyhedron>& seeds, int generations,
                                        int jobs) {
  std::map<CanonicalCode, CombPolyhedron> found;
  std::vector<CanonicalCode> frontier;
  for (const auto& s : seeds) {
    auto code = canonical_code(s);
    if (found.emplace(code, s).second) frontier.push_back(code);
  }
  std::sort(frontier.begin(), frontier.end());

  for (int g = 0; g < generations && !frontier.empty(); ++g) {
    auto expand = [&found](const CanonicalCode& code) {
      std::vector<Enumerated> out;
      const auto& p = found.at(code);
      for (const auto& s : admissible_surgeries(p)) {
        auto q = surgery(p, s);
        out.push_back({canonical_code(q), std::move(q)});
      }
      return out;
    };

    std::vector<std::vector<Enumerated>> batches(frontier.size());
    if (jobs > 1) {
      std::vector<std::future<std::vector<Enumerated>>> futs;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        futs.push_back(std::async(std::launch::async, expand, std::cref(frontier[i])));
        if (futs.size() == static_cast<std::size_t>(jobs) || i + 1 == frontier.size()) {
          const std::size_t base = i + 1 - futs.size();
          for (std::size_t k = 0; k < futs.size(); ++k) batches[base + k] = futs[k].get();
          futs.clear();
        }
      }
    } else {
      for (std::size_t i = 0; i < frontier.size(); ++i) batches[i] = expand(frontier[i]);
    }

    std::vector<CanonicalCode> next;
    for (auto& batch : batches)
      for (auto& e : batch)
        if (found.emplace(e.code, e.rep).second) next.push_back(e.code);
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }

  std::vector<Enumerated> out;
  for (auto& [code, rep] : found) out.push_back({code, rep});
  return out;
}

}  // namespace hd
