#include "hd/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hd/error.hpp"

namespace hd {

using nlohmann::json;

namespace {

double round12(double x) { return std::stod(fmt12(x)); }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad json: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad json: ") + e.what());
  }
}

json poly_to(const CombPolyhedron& p) { return json{{"vertices", p.vertex_count}, {"faces", p.faces}}; }

CombPolyhedron poly_from(const json& j) {
  CombPolyhedron p;
  p.vertex_count = j.at("vertices").get<int>();
  p.faces = j.at("faces").get<std::vector<std::vector<int>>>();
  return p;
}

}  // namespace

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string polyhedron_json(const CombPolyhedron& p) { return poly_to(p).dump(); }

CombPolyhedron polyhedron_from_json(const std::string& text) {
  return guarded([&] { return poly_from(parse(text)); });
}

std::string signed_json(const SignedPolyhedron& sp) {
  json j = poly_to(sp.base);
  json signs = json::object();
  const auto edges = edges_of(sp.base);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int u = std::min(edges[i].u, edges[i].v), v = std::max(edges[i].u, edges[i].v);
    signs[std::to_string(u) + "-" + std::to_string(v)] = std::string(1, to_char(sp.signs[i]));
  }
  j["signs"] = signs;
  return j.dump();
}

SignedPolyhedron signed_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text);
    CombPolyhedron p = poly_from(j);
    const auto edges = edges_of(p);
    const auto& signs = j.at("signs");
    if (signs.size() != edges.size()) throw Error(ErrorKind::InvalidInput, "one sign per edge expected");
    std::vector<Sign> s;
    for (const auto& e : edges) {
      const std::string key = std::to_string(std::min(e.u, e.v)) + "-" + std::to_string(std::max(e.u, e.v));
      const std::string c = signs.at(key).get<std::string>();
      if (c.size() != 1) throw Error(ErrorKind::InvalidInput, "bad sign for edge " + key);
      s.push_back(sign_from_char(c[0]));
    }
    return make_signed(std::move(p), std::move(s));
  });
}

std::string pattern_json(const CirclePattern& pat) {
  json circles = json::array();
  for (int f = 0; f < pat.face_count(); ++f) {
    const GenCircle c = pat.circle(f);
    json e{{"face", f}};
    if (c.is_line) {
      e["line"] = {round12(c.normal.real()), round12(c.normal.imag()), round12(c.offset)};
    } else {
      e["center"] = {round12(c.center.real()), round12(c.center.imag())};
      e["radius"] = round12(c.radius);
      if (c.flipped) e["outer"] = true;
    }
    circles.push_back(e);
  }
  json vertices = json::array();
  for (std::size_t v = 0; v < pat.points.size(); ++v) {
    const auto& p = pat.points[v];
    json pt = p.inf ? json(nullptr) : json{round12(p.z.real()), round12(p.z.imag())};
    vertices.push_back({{"id", v}, {"point", pt}});
  }
  return json{{"circles", circles}, {"vertices", vertices}, {"residual", round12(pat.residual)}}.dump();
}

std::string cone_surface_json(const ConeSurface& s) {
  json polys = json::array();
  for (const auto& p : s.polygons)
    polys.push_back({{"name", p.name},
                     {"corners", p.corners},
                     {"sides", p.sides},
                     {"angles", p.angles},
                     {"hemisphere", p.hemisphere},
                     {"bigon", p.bigon}});
  json glue = json::array();
  for (const auto& row : s.glue) {
    json r = json::array();
    for (const auto& g : row) r.push_back({g.poly, g.side});
    glue.push_back(r);
  }
  return json{{"vertex_names", s.vertex_names}, {"polygons", polys}, {"glue", glue}}.dump();
}

ConeSurface cone_surface_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text);
    ConeSurface s;
    s.vertex_names = j.at("vertex_names").get<std::vector<std::string>>();
    for (const auto& p : j.at("polygons")) {
      ConePolygon cp;
      cp.name = p.at("name").get<std::string>();
      cp.corners = p.at("corners").get<std::vector<int>>();
      cp.sides = p.at("sides").get<std::vector<double>>();
      cp.angles = p.at("angles").get<std::vector<double>>();
      cp.hemisphere = p.at("hemisphere").get<bool>();
      cp.bigon = p.at("bigon").get<bool>();
      s.polygons.push_back(std::move(cp));
    }
    for (const auto& row : j.at("glue")) {
      std::vector<SideRef> r;
      for (const auto& g : row) r.push_back({g.at(0).get<int>(), g.at(1).get<int>()});
      s.glue.push_back(std::move(r));
    }
    return s;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace hd
