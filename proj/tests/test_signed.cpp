#include <algorithm>

#include "doctest.h"
#include "hd/error.hpp"
#include "hd/signed.hpp"

using namespace hd;

namespace {

std::vector<Sign> decode(long code, int edges, int base) {
  std::vector<Sign> s(edges);
  for (int i = 0; i < edges; ++i) {
    const int d = static_cast<int>(code % base);
    code /= base;
    s[i] = base == 2 ? (d ? Sign::Plus : Sign::Minus) : static_cast<Sign>(d - 1);
  }
  return s;
}

long power(int b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("local index words") {
  using S = Sign;
  CHECK(vertex_index_quarters({S::Plus, S::Minus, S::Plus, S::Minus}) == 0);
  CHECK(vertex_index_quarters({S::Plus, S::Plus, S::Plus}) == -2);
  CHECK(vertex_index_quarters({S::Plus, S::Plus, S::Minus}) == 0);
  CHECK(face_index_quarters({S::Plus, S::Minus, S::Plus, S::Minus}) == 0);
  CHECK(face_index_quarters({S::Plus, S::Plus, S::Plus, S::Plus}) == 4);
  CHECK(sign_changes({S::Plus, S::Zero, S::Minus, S::Zero}) == 2);
  CHECK(sign_changes({}) == 0);
  CHECK(sign_from_char('-') == S::Minus);
  CHECK_THROWS_AS(sign_from_char('x'), Error);
}

TEST_CASE("sign_indices rejects zero edges and non-trivalent input") {
  auto sp = make_signed(cube(), std::vector<Sign>(12, Sign::Plus));
  sp.signs[3] = Sign::Zero;
  try {
    sign_indices(sp);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MustCollapseFirst);
  }
  CHECK_THROWS_AS(make_signed(drum(4), std::vector<Sign>(16, Sign::Plus)), Error);
  CHECK_THROWS_AS(make_signed(cube(), std::vector<Sign>(11, Sign::Plus)), Error);
}

TEST_CASE("index sum equals Euler characteristic on every nonzero labelling") {
  for (const auto& poly : {cube(), tetrahedron()}) {
    const int ne = poly.edge_count();
    for (long c = 0; c < power(2, ne); ++c) {
      const auto sp = make_signed(poly, decode(c, ne, 2));
      REQUIRE(sign_indices(sp).total_quarters == 8);
    }
  }
}

TEST_CASE("collapsed spheres keep Euler characteristic 2") {
  for (const auto& poly : {cube(), tetrahedron()}) {
    const int ne = poly.edge_count();
    for (long c = 0; c < power(3, ne); ++c) {
      const auto sp = make_signed(poly, decode(c, ne, 3));
      const auto col = collapse_zero_edges(sp);
      int faces = 0;
      for (const auto& comp : col.components) {
        faces += static_cast<int>(comp.original_faces.size());
        if (!comp.trivial()) {
          REQUIRE(comp.euler() == 2);
          REQUIRE(comp.index_quarters() == 8);
        }
      }
      REQUIRE(faces == poly.face_count());
    }
  }
}

TEST_CASE("rigidity dichotomy holds exhaustively on the cube") {
  const auto c = cube();
  long hypothesis = 0;
  for (long code = 0; code < power(3, 12); ++code) {
    const auto sp = make_signed(c, decode(code, 12, 3));
    const auto v = check_rigidity_dichotomy(sp, 0, 1);
    if (!v.hypothesis_holds) continue;
    ++hypothesis;
    INFO("labelling " << code << ": " << v.witness);
    REQUIRE(v.conclusion_holds);
  }
  CHECK(hypothesis > 0);
}

TEST_CASE("dichotomy rejects adjacent exceptional faces") {
  const auto sp = make_signed(cube(), std::vector<Sign>(12, Sign::Plus));
  const auto v = check_rigidity_dichotomy(sp, 0, 2);
  CHECK_FALSE(v.hypothesis_holds);
  CHECK(v.witness.find("share") != std::string::npos);
}

TEST_CASE("all-zero labelling collapses to trivial spheres") {
  const auto sp = make_signed(cube(), std::vector<Sign>(12, Sign::Zero));
  const auto col = collapse_zero_edges(sp);
  CHECK(col.components.size() == 6);
  for (const auto& comp : col.components) CHECK(comp.trivial());
  const auto v = check_rigidity_dichotomy(sp, 0, 1);
  CHECK(v.hypothesis_holds);
  CHECK(v.conclusion_holds);
  CHECK(v.nontrivial_spheres == 0);
}
