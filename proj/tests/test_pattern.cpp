#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "hd/error.hpp"
#include "hd/pattern.hpp"
#include "hd/signed.hpp"

using namespace hd;
using std::numbers::pi;

namespace {

double lob_quadrature(double x) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([](double t) { return -std::log(std::abs(2.0 * std::sin(t))); }, 0.0, x);
}

std::vector<CombPolyhedron> inventory() {
  std::vector<CombPolyhedron> out;
  for (const auto& e : enumerate_basic({drum(3), drum(4), drum(5)}, 1)) out.push_back(e.rep);
  return out;
}

Mobius some_mobius(int k) {
  std::mt19937 rng(77 + k);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (;;) {
    cplx a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
    if (std::abs(a * d - b * c) > 0.3) return Mobius::from_coeffs(a, b, c, d);
  }
}

}  // namespace

TEST_CASE("octahedron") {
  const auto p = drum(3);
  const auto pat = realize(p);
  CHECK(pat.residual < 1e-9);
  CHECK(incidence_residual(pat) < 1e-9);
  for (double a : pattern_edge_angles(p, pat)) CHECK(std::abs(a - pi / 2) < 1e-8);

  const double want = 8.0 * lob_quadrature(pi / 4);
  CHECK(std::abs(polyhedron_volume(pat) - want) < 1e-8);
  CHECK(std::abs(polyhedron_volume(pat) - 3.6638624) < 1e-7);

  // four circles per vertex: neighbours orthogonal, opposite ones tangent
  const auto edges = edges_of(p);
  for (int v = 0; v < p.vertex_count; ++v) {
    std::vector<int> around;
    for (int f = 0; f < p.face_count(); ++f)
      if (std::find(p.faces[f].begin(), p.faces[f].end(), v) != p.faces[f].end()) around.push_back(f);
    REQUIRE(around.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        bool share = false;
        for (const auto& e : edges)
          if ((e.u == v || e.v == v) && ((e.face_left == around[i] && e.face_right == around[j]) ||
                                         (e.face_left == around[j] && e.face_right == around[i])))
            share = true;
        const double ip = mink_dot(pat.normals[around[i]], pat.normals[around[j]]);
        if (share) {
          CHECK(std::abs(ip) < 1e-9);
        } else {
          CHECK(std::abs(ip + 1.0) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("gauge vertices land on their targets") {
  RealizeOptions opt;
  opt.gauge = {{0, ComplexPoint(0.0)}, {2, ComplexPoint(1.0)}, {4, ComplexPoint(0.3, 0.8)}};
  const auto pat = realize(drum(4), {}, opt);
  CHECK(pat.points[0].z == cplx(0.0));
  CHECK(pat.points[2].z == cplx(1.0));
  CHECK(pat.points[4].z == cplx(0.3, 0.8));
  CHECK(std::abs(polyhedron_volume(pat) - polyhedron_volume(realize(drum(4)))) < 1e-9);
}

TEST_CASE("square faces of drum(4) are ultraparallel") {
  const auto pat = realize(drum(4));
  const auto pp = plane_pair_invariant(pat.normals[0], pat.normals[1]);
  CHECK(pp.tag == PairTag::Distance);
}

TEST_CASE("volume is apex independent, Mobius invariant and agrees with the cone integral") {
  for (const auto& p : inventory()) {
    const auto pat = realize(p);
    const double v = polyhedron_volume(pat);
    for (int a = 0; a < p.vertex_count; ++a) CHECK(std::abs(polyhedron_volume(pat, a) - v) < 1e-9);
    CHECK(std::abs(cone_volume(pat) - v) < 1e-9);
    CHECK(std::abs(cone_volume(pat, p.vertex_count - 1) - v) < 1e-9);
    for (int k = 0; k < 3; ++k) {
      const auto moved = transform(pat, some_mobius(k));
      CHECK(std::abs(polyhedron_volume(moved) - v) < 1e-8);
    }
  }
}

TEST_CASE("deeper inventory realizes with consistent volumes") {
  const auto all = enumerate_basic({drum(3), drum(4), drum(5), drum(6)}, 3);
  CHECK(all.size() > 50);
  for (const auto& e : all) {
    const auto pat = realize(e.rep);
    CHECK(std::abs(cone_volume(pat) - polyhedron_volume(pat)) < 1e-9);
  }
}

TEST_CASE("drilling increases volume") {
  std::set<CanonicalCode> seen;
  for (const auto& p : {drum(4), drum(5), drum(6)}) {
    const double v = polyhedron_volume(realize(p));
    for (const auto& s : admissible_surgeries(p)) {
      const auto q = surgery(p, s);
      if (!seen.insert(canonical_code(q)).second) continue;
      CHECK(polyhedron_volume(realize(q)) > v);
    }
  }
  CHECK(seen.size() >= 3);
}

TEST_CASE("face perpendiculars") {
  const auto pat = realize(drum(4));
  const double d1 = face_perp_length(pat, 0, 0, 2);
  const double d2 = face_perp_length(pat, 0, 1, 3);
  CHECK(std::abs(d1 - 2.0 * std::log(1.0 + std::sqrt(2.0))) < 1e-9);
  CHECK(std::abs(std::sinh(d1 / 2) * std::sinh(d2 / 2) - 1.0) < 1e-9);
  CHECK(face_perp_length(pat, 0, 0, 1) == 0.0);
  const auto moved = transform(pat, some_mobius(5));
  CHECK(std::abs(face_perp_length(moved, 0, 0, 2) - d1) < 1e-10);
}

TEST_CASE("inadmissible angle data") {
  try {
    realize(cube());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InadmissibleAngles);
  }
  AngleAssignment bad;
  bad.set(0, 1, 3.5);
  CHECK_THROWS_AS(realize(drum(4), bad), Error);
}

TEST_CASE("bent drum(4)") {
  const auto p = drum(4);
  const BendSpec b{0, 0, 2};
  const double v_pinched = polyhedron_volume(realize(surgery(p, b)));

  const auto top = bent_realize(p, b, pi / 2);
  CHECK(top.l > 0.0);
  CHECK(std::abs(top.l - 0.806399) < 1e-5);  // regression fixture
  const double g = std::acos(-mink_dot(top.pattern.normals[top.face_f1], top.pattern.normals[top.face_f2]));
  CHECK(std::abs(g - pi / 2) < 1e-8);
  CHECK(incidence_residual(top.pattern) < 1e-9);
  CHECK(top.volume < v_pinched);
  CHECK(top.volume > polyhedron_volume(realize(p)));

  const auto low = bent_realize(p, b, 0.05);
  CHECK(v_pinched - low.volume > 0.0);
  CHECK(v_pinched - low.volume <= 0.5 * 0.05 * low.l);
  const double g_low = std::acos(-mink_dot(low.pattern.normals[low.face_f1], low.pattern.normals[low.face_f2]));
  CHECK(std::abs(g_low - 0.05) < 1e-8);

  // Mobius invariance with finite vertices
  const auto moved = transform(top.pattern, some_mobius(3));
  CHECK(std::abs(cone_volume(moved) - top.volume) < 1e-8);
  CHECK(std::abs(mink_distance(moved.finite[0], moved.finite[1]) - top.l) < 1e-9);

  CHECK_THROWS_AS(bent_realize(p, b, 2.0), Error);
  CHECK_THROWS_AS(bent_realize(p, b, 0.0), Error);
}

TEST_CASE("deformation family") {
  const auto p = drum(4);
  const BendSpec b{0, 0, 2};
  std::vector<double> grid;
  for (int k = 10; k <= 157; k += 7) grid.push_back(0.01 * k);
  grid.push_back(pi / 2);
  const auto fam = deform_family(p, b, grid);
  REQUIRE(fam.size() == grid.size());
  for (std::size_t i = 1; i < fam.size(); ++i) {
    CHECK(fam[i].l > fam[i - 1].l);
    CHECK(fam[i].volume < fam[i - 1].volume);
  }
  const double v_pinched = polyhedron_volume(realize(surgery(p, b)));
  CHECK(fam[0].volume < v_pinched);
  CHECK(v_pinched - fam[0].volume < 0.5 * fam[0].theta * fam[0].l);

  const auto again = deform_family(p, b, grid);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    CHECK(again[i].volume == fam[i].volume);
    CHECK(again[i].l == fam[i].l);
  }
}

TEST_CASE("Schlafli residual") {
  const auto p = drum(4);
  const BendSpec b{0, 0, 2};
  std::vector<double> coarse, fine;
  for (int k = 0; k <= 4; ++k) coarse.push_back(0.8 + 0.01 * k);
  for (int k = 0; k <= 40; ++k) fine.push_back(0.8 + 0.001 * k);
  const double rc = schlafli_residual(deform_family(p, b, coarse));
  const double rf = schlafli_residual(deform_family(p, b, fine));
  CHECK(rc < 1e-4);
  CHECK(rf * 10.0 <= rc);

  std::vector<DeformationSample> synthetic;
  for (int k = 0; k < 10; ++k) synthetic.push_back({0.1 * (k + 1), 0.7, -0.1 * (k + 1) * 0.7 / 2});
  CHECK(schlafli_residual(synthetic) < 1e-12);
  CHECK_THROWS_AS(schlafli_residual({synthetic[0], synthetic[1]}), Error);
}

TEST_CASE("volume is smooth along the bending family") {
  // fourth differences of a smooth V at step 1e-3 are ~1e-12
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(0.2248 + 0.001 * k);
  const auto fam = deform_family(drum(4), {0, 0, 2}, grid);
  for (std::size_t i = 2; i + 2 < fam.size(); ++i) {
    const double d4 = fam[i - 2].volume - 4 * fam[i - 1].volume + 6 * fam[i].volume - 4 * fam[i + 1].volume +
                      fam[i + 2].volume;
    CHECK(std::abs(d4) < 1e-11);
  }
}

TEST_CASE("svg rendering") {
  const auto pat = realize(drum(3));
  const std::string a = render_svg(pat), b = render_svg(pat);
  CHECK(a == b);
  std::size_t count = 0;
  for (std::size_t pos = a.find("<circle"); pos != std::string::npos; pos = a.find("<circle", pos + 1)) ++count;
  CHECK(count == 8);
}
