#include <json.hpp>
#include <random>

#include "doctest.h"
#include "hd/error.hpp"
#include "hd/io.hpp"

using namespace hd;

TEST_CASE("polyhedron json") {
  const auto p = drum(5);
  const auto text = polyhedron_json(p);
  const auto q = polyhedron_from_json(text);
  CHECK(q.vertex_count == p.vertex_count);
  CHECK(q.faces == p.faces);
  CHECK(polyhedron_json(q) == text);
  CHECK(polyhedron_json(polyhedron_from_json(R"({"vertices": 4, "faces": [[0,1,2],[0,2,3],[0,3,1],[1,3,2]]})")) ==
        R"({"faces":[[0,1,2],[0,2,3],[0,3,1],[1,3,2]],"vertices":4})");
  try {
    polyhedron_from_json("{\"vertices\": 3");
    FAIL("accepted truncated json");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("signed json") {
  std::mt19937 rng(3);
  const auto c = cube();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Sign> s(edges_of(c).size());
    for (auto& x : s) x = static_cast<Sign>(static_cast<int>(rng() % 3) - 1);
    const auto sp = make_signed(c, s);
    const auto text = signed_json(sp);
    const auto back = signed_from_json(text);
    CHECK(back.signs == sp.signs);
    CHECK(signed_json(back) == text);
  }
  auto j = nlohmann::json::parse(signed_json(make_signed(c, std::vector<Sign>(12, Sign::Plus))));
  CHECK(j["signs"].size() == 12);
  CHECK(j["signs"]["0-1"] == "+");
  j["signs"].erase("0-1");
  try {
    signed_from_json(j.dump());
    FAIL("accepted missing sign");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("pattern json") {
  const auto pat = realize(drum(3));
  const auto j = nlohmann::json::parse(pattern_json(pat));
  CHECK(j["circles"].size() == 8);
  CHECK(j["vertices"].size() == 6);
  CHECK(j["residual"].get<double>() < 1e-9);
  for (const auto& c : j["circles"]) {
    const int f = c["face"];
    const GenCircle g = pat.circle(f);
    if (g.is_line) {
      CHECK(c.contains("line"));
      continue;
    }
    CHECK(std::abs(c["radius"].get<double>() - g.radius) < 1e-11 * g.radius);
    CHECK(c.contains("outer") == g.flipped);
  }
}

TEST_CASE("cone surface json") {
  const auto s = bent_dual(drum(4), admissible_surgeries(drum(4)).front(), 1.0);
  const auto text = cone_surface_json(s);
  const auto back = cone_surface_from_json(text);
  CHECK(same_gluing(s, back, 0.0));
  CHECK(cone_surface_json(back) == text);
  CHECK(check_surface(back).ok);
}
