#include "hd/signed.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hd/error.hpp"

namespace hd {

char to_char(Sign s) {
  switch (s) {
    case Sign::Plus: return '+';
    case Sign::Minus: return '-';
    case Sign::Zero: return '0';
  }
  return '?';
}

Sign sign_from_char(char c) {
  switch (c) {
    case '+': return Sign::Plus;
    case '-': return Sign::Minus;
    case '0': return Sign::Zero;
    default: throw Error(ErrorKind::InvalidInput, std::string("bad sign '") + c + "'");
  }
}

namespace {

struct EdgeLookup {
  std::vector<std::pair<int, int>> keys;

  explicit EdgeLookup(const CombPolyhedron& p) {
    for (const auto& e : edges_of(p)) keys.emplace_back(e.u, e.v);
  }
  int operator()(int u, int v) const {
    const std::pair<int, int> k{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) throw Error(ErrorKind::InvalidInput, "not an edge");
    return static_cast<int>(it - keys.begin());
  }
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

Sign SignedPolyhedron::sign_of(int u, int v) const { return signs.at(EdgeLookup(base)(u, v)); }

SignedPolyhedron make_signed(CombPolyhedron base, std::vector<Sign> signs) {
  const auto rep = validate(base);
  if (!rep.ok) throw Error(ErrorKind::InvalidInput, rep.failures.front());
  for (int v : valences(base))
    if (v != 3) throw Error(ErrorKind::InvalidInput, "signed polyhedra must be trivalent");
  if (static_cast<int>(signs.size()) != rep.edges)
    throw Error(ErrorKind::InvalidInput, "one sign per edge required");
  return SignedPolyhedron{std::move(base), std::move(signs)};
}

int sign_changes(const std::vector<Sign>& word) {
  std::vector<Sign> nz;
  for (Sign s : word)
    if (s != Sign::Zero) nz.push_back(s);
  int changes = 0;
  for (std::size_t i = 0; i < nz.size(); ++i)
    if (nz[i] != nz[(i + 1) % nz.size()]) ++changes;
  return changes;
}

int vertex_index_quarters(const std::vector<Sign>& word) {
  int q = 4;
  const std::size_t n = word.size();
  for (std::size_t i = 0; i < n; ++i) q -= (word[i] != word[(i + 1) % n]) ? 1 : 2;
  return q;
}

int face_index_quarters(const std::vector<Sign>& word) { return 4 - sign_changes(word); }

IndexReport sign_indices(const SignedPolyhedron& sp) {
  for (Sign s : sp.signs)
    if (s == Sign::Zero) throw Error(ErrorKind::MustCollapseFirst, "zero edge present");
  const EdgeLookup lookup(sp.base);
  IndexReport rep;
  const auto rot = rotation_system(sp.base);
  for (int x = 0; x < sp.base.vertex_count; ++x) {
    std::vector<Sign> word;
    for (int y : rot[x]) word.push_back(sp.signs[lookup(x, y)]);
    rep.vertex_quarters.push_back(vertex_index_quarters(word));
  }
  for (const auto& f : sp.base.faces) {
    std::vector<Sign> word;
    for (std::size_t i = 0; i < f.size(); ++i) word.push_back(sp.signs[lookup(f[i], f[(i + 1) % f.size()])]);
    rep.face_quarters.push_back(face_index_quarters(word));
  }
  rep.total_quarters = std::accumulate(rep.vertex_quarters.begin(), rep.vertex_quarters.end(), 0) +
                       std::accumulate(rep.face_quarters.begin(), rep.face_quarters.end(), 0);
  return rep;
}

int SphereComponent::index_quarters() const {
  int q = 0;
  for (const auto& w : vertex_words) q += w.empty() ? 4 : vertex_index_quarters(w);
  for (const auto& w : cell_words) q += face_index_quarters(w);
  return q;
}

CollapseResult collapse_zero_edges(const SignedPolyhedron& sp) {
  const auto& p = sp.base;
  const EdgeLookup lookup(p);
  const int nf = p.face_count();

  // Darts numbered face by face; each remembers its edge sign and reverse.
  std::vector<int> face_start(nf + 1, 0);
  for (int f = 0; f < nf; ++f) face_start[f + 1] = face_start[f] + static_cast<int>(p.faces[f].size());
  const int nd = face_start[nf];
  std::vector<int> tail(nd), head(nd), dface(nd), reverse(nd, -1);
  std::vector<Sign> dsign(nd);
  std::map<std::pair<int, int>, int> by_ends;
  for (int f = 0; f < nf; ++f) {
    const auto& cyc = p.faces[f];
    const int n = static_cast<int>(cyc.size());
    for (int i = 0; i < n; ++i) {
      const int d = face_start[f] + i;
      tail[d] = cyc[i];
      head[d] = cyc[(i + 1) % n];
      dface[d] = f;
      dsign[d] = sp.signs[lookup(tail[d], head[d])];
      by_ends[{tail[d], head[d]}] = d;
    }
  }
  for (int d = 0; d < nd; ++d) reverse[d] = by_ends.at({head[d], tail[d]});

  // Faces glued across non-zero edges share a region.
  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  for (int d = 0; d < nd; ++d)
    if (dsign[d] != Sign::Zero) parent[find_root(parent, dface[d])] = find_root(parent, dface[reverse[d]]);

  // phi: next non-zero dart along the same face.
  std::vector<int> phi(nd, -1);
  for (int f = 0; f < nf; ++f) {
    const int n = face_start[f + 1] - face_start[f];
    for (int i = 0; i < n; ++i) {
      const int d = face_start[f] + i;
      if (dsign[d] == Sign::Zero) continue;
      for (int k = 1; k <= n; ++k) {
        const int e = face_start[f] + (i + k) % n;
        if (dsign[e] != Sign::Zero) {
          phi[d] = e;
          break;
        }
      }
    }
  }

  CollapseResult res;
  res.face_component.assign(nf, -1);
  res.face_cell.assign(nf, -1);
  std::map<int, int> comp_of_root;
  for (int f = 0; f < nf; ++f) {
    const int r = find_root(parent, f);
    auto [it, fresh] = comp_of_root.emplace(r, static_cast<int>(res.components.size()));
    if (fresh) res.components.emplace_back();
    auto& comp = res.components[it->second];
    res.face_component[f] = it->second;
    res.face_cell[f] = static_cast<int>(comp.original_faces.size());
    comp.original_faces.push_back(f);
    std::vector<Sign> word;
    for (int d = face_start[f]; d < face_start[f + 1]; ++d)
      if (dsign[d] != Sign::Zero) word.push_back(dsign[d]);
    comp.cell_words.push_back(std::move(word));
  }

  std::vector<bool> seen(nd, false);
  for (auto& comp : res.components) {
    int darts = 0;
    for (int f : comp.original_faces) {
      for (int d = face_start[f]; d < face_start[f + 1]; ++d) {
        if (dsign[d] == Sign::Zero) continue;
        ++darts;
        if (seen[d]) continue;
        // sigma = phi o reverse walks the darts leaving one collapsed vertex
        std::vector<Sign> word;
        std::vector<int> members;
        int cur = d;
        do {
          seen[cur] = true;
          word.push_back(dsign[cur]);
          members.push_back(tail[cur]);
          cur = phi[reverse[cur]];
        } while (cur != d);
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        comp.vertex_words.push_back(std::move(word));
        comp.vertex_members.push_back(std::move(members));
      }
    }
    comp.edge_count = darts / 2;
    if (comp.edge_count == 0) {
      // zero region: its whole boundary becomes the single point of a disc
      std::vector<int> members;
      for (int f : comp.original_faces) members.insert(members.end(), p.faces[f].begin(), p.faces[f].end());
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      comp.vertex_words.push_back({});
      comp.vertex_members.push_back(std::move(members));
    }
  }
  return res;
}

namespace {

bool allowed_vertex_type(const std::vector<Sign>& w) {
  if (w.size() == 3) {
    const int plus = static_cast<int>(std::count(w.begin(), w.end(), Sign::Plus));
    return plus == 1 || plus == 2;
  }
  if (w.size() == 4) return sign_changes(w) == 4;
  return false;
}

std::string word_string(const std::vector<Sign>& w) {
  std::string s = "(";
  for (Sign x : w) s += to_char(x);
  return s + ")";
}

}  // namespace

RigidityVerdict check_rigidity_dichotomy(const SignedPolyhedron& sp, int f1, int f2) {
  RigidityVerdict v;
  const auto& p = sp.base;
  const EdgeLookup lookup(p);
  if (f1 == f2 || f1 < 0 || f2 < 0 || f1 >= p.face_count() || f2 >= p.face_count()) {
    v.witness = "exceptional faces must be two distinct faces";
    return v;
  }
  for (int a : p.faces[f1]) {
    if (std::find(p.faces[f2].begin(), p.faces[f2].end(), a) != p.faces[f2].end()) {
      v.witness = "exceptional faces share vertex " + std::to_string(a);
      return v;
    }
  }

  v.hypothesis_holds = true;
  for (int f = 0; f < p.face_count() && v.hypothesis_holds; ++f) {
    if (f == f1 || f == f2) continue;
    std::vector<Sign> word;
    const auto& cyc = p.faces[f];
    for (std::size_t i = 0; i < cyc.size(); ++i) word.push_back(sp.signs[lookup(cyc[i], cyc[(i + 1) % cyc.size()])]);
    const bool zero_face = std::all_of(word.begin(), word.end(), [](Sign s) { return s == Sign::Zero; });
    if (!zero_face && sign_changes(word) < 4) {
      v.hypothesis_holds = false;
      v.witness = "face " + std::to_string(f) + " has " + std::to_string(sign_changes(word)) + " sign changes";
    }
  }

  const auto col = collapse_zero_edges(sp);
  int nontrivial = -1;
  for (std::size_t c = 0; c < col.components.size(); ++c) {
    if (col.components[c].trivial()) continue;
    ++v.nontrivial_spheres;
    nontrivial = static_cast<int>(c);
  }

  auto fail = [&v](std::string why) {
    v.conclusion_holds = false;
    if (v.hypothesis_holds) v.witness = std::move(why);
  };
  v.conclusion_holds = true;
  if (v.nontrivial_spheres > 1) {
    fail(std::to_string(v.nontrivial_spheres) + " non-trivial spheres");
    return v;
  }
  if (v.nontrivial_spheres == 0) return v;

  const auto& s = col.components[nontrivial];
  for (std::size_t i = 0; i < s.original_faces.size(); ++i) {
    const int f = s.original_faces[i];
    const int changes = sign_changes(s.cell_words[i]);
    if ((f == f1 || f == f2) ? changes != 0 : changes != 4) {
      fail("cell of face " + std::to_string(f) + " has " + std::to_string(changes) + " sign changes");
      return v;
    }
  }
  if (col.face_component[f1] != nontrivial || col.face_component[f2] != nontrivial) {
    fail("an exceptional face left the non-trivial sphere");
    return v;
  }
  for (const auto& w : s.vertex_words) {
    if (!allowed_vertex_type(w)) {
      fail("vertex of type " + word_string(w));
      return v;
    }
  }
  return v;
}

CombPolyhedron cube() {
  return CombPolyhedron{8,
                        {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}}};
}

CombPolyhedron tetrahedron() { return CombPolyhedron{4, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}}}; }

}  // namespace hd
