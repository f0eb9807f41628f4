#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hd/error.hpp"
#include "hd/geom.hpp"

using namespace hd;
using std::numbers::pi;

namespace {

std::mt19937 rng(20240601);

double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Mobius random_mobius() {
  for (;;) {
    cplx a(uni(-2, 2), uni(-2, 2)), b(uni(-2, 2), uni(-2, 2)), c(uni(-1, 1), uni(-1, 1)), d(uni(-2, 2), uni(-2, 2));
    if (std::abs(a * d - b * c) > 0.3) return Mobius::from_coeffs(a, b, c, d);
  }
}

ComplexPoint random_point() { return ComplexPoint(uni(-3, 3), uni(-3, 3)); }

// Four points in cyclic order on a random circle.
std::array<ComplexPoint, 4> random_quad() {
  std::array<double, 4> t;
  for (auto& x : t) x = uni(0, 2 * pi);
  std::sort(t.begin(), t.end());
  const cplx c(uni(-2, 2), uni(-2, 2));
  const double r = uni(0.3, 3);
  std::array<ComplexPoint, 4> q;
  for (int i = 0; i < 4; ++i) q[i] = ComplexPoint(c + r * std::polar(1.0, t[i]));
  return q;
}

double lob_quadrature(double x) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([](double t) { return -std::log(std::abs(2.0 * std::sin(t))); }, 0.0, x);
}

// E_1 and E_n meet and close the curve into a compact convex polygon.
bool closes_convexly(const PolygonalCurve& c) {
  Mink last;
  try {
    last = tri_plane_vertex(c.normals.front(), c.normals.back(), Mink{0.0, 0.0, 1.0, 0.0});
  } catch (const Error&) {
    return false;
  }
  auto verts = c.vertices;
  verts.push_back(last);
  for (const auto& nu : c.normals)
    for (const auto& v : verts)
      if (mink_dot(nu, v) > 1e-12) return false;
  return true;
}

}  // namespace

TEST_CASE("cross ratio") {
  const auto inf = ComplexPoint::infinity();
  // (b - d)/(a - d) once the infinite factors cancel
  CHECK(std::abs(cross_ratio(0.0, 1.0, inf, -1.0) - cplx(2.0)) < 1e-15);
  CHECK(std::abs(cross_ratio(1.0, inf, 0.0, -1.0) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(cross_ratio(1.0, -1.0, cplx(0, 1), cplx(0, -1)) - cplx(-1.0)) < 1e-15);
  CHECK_THROWS_AS(cross_ratio(1.0, 1.0, 0.0, 2.0), Error);
  CHECK_THROWS_AS(cross_ratio(inf, inf, 0.0, 2.0), Error);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_mobius();
    const auto a = random_point(), b = random_point(), c = random_point(), d = random_point();
    const cplx before = cross_ratio(a, b, c, d);
    const cplx after = cross_ratio(m(a), m(b), m(c), m(d));
    CHECK(std::abs(before - after) < 1e-12 * (1.0 + std::abs(before)));
  }
}

TEST_CASE("Mobius maps") {
  const auto inf = ComplexPoint::infinity();
  const auto id = mobius_from_triple({0.0, 1.0, inf}, {0.0, 1.0, inf});
  CHECK(std::abs(id.b) < 1e-15);
  CHECK(std::abs(id.c) < 1e-15);
  CHECK(std::abs(id.a / id.d - 1.0) < 1e-15);

  const auto scale = Mobius::from_coeffs(cplx(0, 2), 0.0, 0.0, 1.0);
  const auto img = scale(GenCircle::circle(0.0, 1.0));
  CHECK_FALSE(img.is_line);
  CHECK(std::abs(img.center) < 1e-14);
  CHECK(img.radius == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_FALSE(img.flipped);

  const std::array<ComplexPoint, 3> src{1.0, cplx(0, 1), -1.0};
  const auto m = mobius_from_triple(src, {0.0, 1.0, inf});
  for (int i = 0; i < 3; ++i) {
    const auto w = m(src[i]);
    if (i == 2) {
      CHECK(w.inf);
    } else {
      CHECK(std::abs(w.z - cplx(i)) < 1e-12);
    }
  }
  for (const cplx z : {cplx(0, -1), cplx(0.3, 0.7), cplx(-2, 5)}) {
    const cplx expect = cross_ratio(z, cplx(0, 1), 1.0, -1.0);
    CHECK(std::abs(m(z).z - expect) < 1e-12);
  }

  for (int t = 0; t < 50; ++t) {
    const std::array<ComplexPoint, 3> s{random_point(), random_point(), random_point()};
    const std::array<ComplexPoint, 3> d{random_point(), random_point(), random_point()};
    const auto mm = mobius_from_triple(s, d);
    CHECK(std::abs(mm.a * mm.d - mm.b * mm.c - 1.0) < 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(mm(s[i]).z - d[i].z) < 1e-10 * (1.0 + std::abs(d[i].z)));
  }
  CHECK_THROWS_AS(mobius_from_triple({0.0, 0.0, 1.0}, {0.0, 1.0, inf}), Error);
}

TEST_CASE("circle images keep their disk side") {
  for (int t = 0; t < 100; ++t) {
    const auto m = random_mobius();
    const auto g = GenCircle::circle(cplx(uni(-1, 1), uni(-1, 1)), uni(0.2, 2), t % 2 == 1);
    const auto h = m(g);
    for (int k = 0; k < 10; ++k) {
      const cplx z(uni(-3, 3), uni(-3, 3));
      if (std::abs(g.side(z)) < 1e-3) continue;
      const auto w = m(ComplexPoint(z));
      if (w.inf) continue;
      CHECK((g.side(z) > 0) == (h.side(w.z) > 0));
    }
  }
  const auto l = GenCircle::line(cplx(0, 1), 0.5);
  const auto back = circle_from_mink(to_mink_plane(l));
  CHECK(back.is_line);
  CHECK(std::abs(back.normal - cplx(0, 1)) < 1e-15);
  CHECK(back.offset == doctest::Approx(0.5));
}

TEST_CASE("Minkowski planes") {
  const auto unit = to_mink_plane(GenCircle::circle(0.0, 1.0));
  CHECK(mink_dot(unit, unit) == doctest::Approx(1.0).epsilon(1e-15));

  const auto orth = plane_pair_invariant(unit, to_mink_plane(GenCircle::circle(std::sqrt(2.0), 1.0)));
  CHECK(std::abs(orth.value) < 1e-15);
  CHECK(orth.tag == PairTag::Angle);
  CHECK(orth.measure == doctest::Approx(pi / 2));

  const auto tan = plane_pair_invariant(unit, to_mink_plane(GenCircle::circle(2.0, 1.0)));
  CHECK(std::abs(std::abs(tan.value) - 1.0) < 1e-12);
  CHECK(tan.tag == PairTag::Tangent);

  const auto dist = plane_pair_invariant(unit, to_mink_plane(GenCircle::circle(0.0, std::exp(1.0))));
  CHECK(dist.tag == PairTag::Distance);
  CHECK(std::abs(dist.measure - 1.0) < 1e-12);

  // perturbing the tangency flips the tag
  CHECK(plane_pair_invariant(unit, to_mink_plane(GenCircle::circle(2.0 - 1e-6, 1.0))).tag == PairTag::Angle);
  CHECK(plane_pair_invariant(unit, to_mink_plane(GenCircle::circle(2.0 + 1e-6, 1.0))).tag == PairTag::Distance);

  // disk side agrees with the sign of <nu, p>
  for (int t = 0; t < 200; ++t) {
    const auto g = GenCircle::circle(cplx(uni(-1, 1), uni(-1, 1)), uni(0.2, 2), t % 3 == 0);
    const auto nu = to_mink_plane(g);
    const cplx z(uni(-3, 3), uni(-3, 3));
    const double lhs = mink_dot(nu, ideal_point(z));
    CHECK((lhs > 0) == (g.side(z) > 0));
    const auto round = circle_from_mink(nu);
    CHECK(std::abs(round.center - g.center) < 1e-12);
    CHECK(round.radius == doctest::Approx(g.radius).epsilon(1e-12));
    CHECK(round.flipped == g.flipped);
  }
  CHECK(mink_dot(to_mink_plane(GenCircle::circle(0.0, 1.0)), ideal_point(ComplexPoint::infinity())) < 0);
}

TEST_CASE("three planes and a point") {
  // three planes through the top of the unit hemisphere
  const cplx p(0.2, -0.1);
  const double h = 0.7;
  const auto x0 = halfspace_point(p, h);
  CHECK(mink_dot(x0, x0) == doctest::Approx(-1.0).epsilon(1e-14));
  std::array<Mink, 3> nus;
  for (int i = 0; i < 3; ++i) {
    // vertical plane through p with direction angle 2 pi i / 3 is a line
    const cplx n = std::polar(1.0, 2 * pi * i / 3.0);
    nus[i] = to_mink_plane(GenCircle::line(n, n.real() * p.real() + n.imag() * p.imag()));
  }
  // add a hemisphere through x0 instead of one vertical plane
  const double r = std::sqrt(std::norm(p - cplx(1.0, 0.5)) + h * h);
  nus[2] = to_mink_plane(GenCircle::circle(cplx(1.0, 0.5), r));
  const auto x = tri_plane_vertex(nus[0], nus[1], nus[2]);
  for (const auto& nu : nus) CHECK(std::abs(mink_dot(nu, x)) < 1e-12);
  CHECK(mink_distance(x, x0) < 1e-7);
  const auto [z, hh] = halfspace_coords(x);
  CHECK(std::abs(z - p) < 1e-10);
  CHECK(hh == doctest::Approx(h));

  // three parallel lines meet only at infinity
  const auto l1 = to_mink_plane(GenCircle::line(1.0, 0.0));
  const auto l2 = to_mink_plane(GenCircle::line(1.0, 1.0));
  const auto l3 = to_mink_plane(GenCircle::line(1.0, 2.0));
  CHECK_THROWS_AS(tri_plane_vertex(l1, l2, l3), Error);
  // three disjoint circles have no common point either
  try {
    tri_plane_vertex(to_mink_plane(GenCircle::circle(0.0, 1.0)), to_mink_plane(GenCircle::circle(5.0, 1.0)),
                     to_mink_plane(GenCircle::circle(cplx(0, 5), 1.0)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoVertex);
  }
}

TEST_CASE("geodesic distance") {
  const double e = std::exp(1.0);
  const auto d = geodesic_distance(Geodesic(-1.0, 1.0), Geodesic(-e, e));
  CHECK(std::abs(d.d - 1.0) < 1e-12);
  CHECK_FALSE(d.crossing);

  // same pairs, reversed orientation
  CHECK(std::abs(geodesic_distance(Geodesic(-1.0, 1.0), Geodesic(e, -e)).d - 1.0) < 1e-12);

  // skew: concentric hemispheres in perpendicular vertical planes
  const auto skew = geodesic_distance(Geodesic(-1.0, 1.0), Geodesic(cplx(0, -e), cplx(0, e)));
  CHECK(std::abs(skew.d - 1.0) < 1e-12);

  const auto shared = geodesic_distance(Geodesic(0.0, 1.0), Geodesic(1.0, 5.0));
  CHECK(shared.asymptotic);
  CHECK(shared.d == 0.0);

  const auto cross = geodesic_distance(Geodesic(-1.0, 1.0), Geodesic(0.0, ComplexPoint::infinity()));
  CHECK(cross.crossing);
  CHECK(cross.d == 0.0);

  CHECK_THROWS_AS(Geodesic(1.0, 1.0), Error);

  // half-plane oracle: concentric semicircles of radii r1 < r2 are ln(r2/r1) apart
  for (int t = 0; t < 100; ++t) {
    const double r1 = uni(0.1, 3), r2 = r1 * uni(1.01, 20);
    const cplx c(uni(-2, 2), 0.0);
    const Geodesic g1(c - r1, c + r1), g2(c - r2, c + r2);
    const double want = std::log(r2 / r1);
    CHECK(std::abs(geodesic_distance(g1, g2).d - want) < 1e-10);
    const auto m = random_mobius();
    const double moved = geodesic_distance(Geodesic(m(g1.a), m(g1.b)), Geodesic(m(g2.a), m(g2.b))).d;
    CHECK(std::abs(moved - want) < 1e-10);
  }
  // skew oracle: the vertical axis against a hemisphere centred on it at angle
  for (int t = 0; t < 100; ++t) {
    const auto m = random_mobius();
    const Geodesic g1(random_point(), random_point()), g2(random_point(), random_point());
    const double before = geodesic_distance(g1, g2).d;
    const double after = geodesic_distance(Geodesic(m(g1.a), m(g1.b)), Geodesic(m(g2.a), m(g2.b))).d;
    CHECK(std::abs(before - after) < 1e-9 * (1.0 + before));
  }
}

TEST_CASE("ideal quadrilateral perpendiculars") {
  const auto [d1, d2] = quad_perpendiculars({1.0, cplx(0, 1), -1.0, cplx(0, -1)});
  const double want = 2.0 * std::log(1.0 + std::sqrt(2.0));
  CHECK(std::abs(d1 - want) < 1e-12);
  CHECK(std::abs(d2 - want) < 1e-12);

  for (int t = 0; t < 1000; ++t) {
    const auto q = random_quad();
    const auto [a, b] = quad_perpendiculars(q);
    REQUIRE(std::abs(std::sinh(a / 2) * std::sinh(b / 2) - 1.0) < 1e-10);
  }

  const std::array<ComplexPoint, 4> pinched{1.0, std::polar(1.0, 1e-3), -1.0, cplx(0, -1)};
  const auto [p1, p2] = quad_perpendiculars(pinched);
  CHECK(std::max(p1, p2) > 7.0);
  CHECK(std::abs(std::sinh(p1 / 2) * std::sinh(p2 / 2) - 1.0) < 1e-8);

  CHECK_THROWS_AS(quad_perpendiculars({0.0, 1.0, cplx(0, 1), cplx(5, 3)}), Error);
  CHECK_THROWS_AS(quad_perpendiculars({1.0, 1.0, -1.0, cplx(0, 1)}), Error);
}

TEST_CASE("Lobachevsky function") {
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::abs(lobachevsky(pi / 6) - lob_quadrature(pi / 6)) < 1e-12);
  CHECK(std::abs(lobachevsky(pi / 6) - 0.5074708) < 1e-7);
  for (double x : {0.05, 0.3, 0.7, 1.0, 1.3, 1.5}) CHECK(std::abs(lobachevsky(x) - lob_quadrature(x)) < 1e-12);
  for (int t = 0; t < 200; ++t) {
    const double x = uni(-10, 10);
    CHECK(std::abs(lobachevsky(x + pi) - lobachevsky(x)) < 1e-12);
    CHECK(std::abs(lobachevsky(-x) + lobachevsky(x)) < 1e-12);
  }
  // maximum at pi/6
  for (int k = 0; k <= 100; ++k) CHECK(lobachevsky(k * pi / 100) <= lobachevsky(pi / 6) + 1e-15);
}

TEST_CASE("ideal tetrahedra") {
  const auto inf = ComplexPoint::infinity();
  const cplx w = std::polar(1.0, pi / 3);
  const double v = ideal_tet_volume(0.0, 1.0, inf, w);
  CHECK(std::abs(v - 3.0 * lob_quadrature(pi / 3)) < 1e-12);
  CHECK(std::abs(v - 1.0149416) < 1e-7);
  CHECK(std::abs(ideal_tet_volume(1.0, 0.0, inf, w) + v) < 1e-12);
  CHECK(std::abs(ideal_tet_volume(0.0, 1.0, inf, 0.5 - 3.0 * w) + ideal_tet_volume(1.0, 0.0, inf, 0.5 - 3.0 * w)) <
        1e-12);
  CHECK(std::abs(ideal_tet_volume(1.0, cplx(0, 1), -1.0, std::polar(1.0, 4.0))) < 1e-12);
  CHECK_THROWS_AS(ideal_tet_volume(0.0, 0.0, 1.0, 2.0), Error);

  for (int t = 0; t < 100; ++t) {
    std::array<ComplexPoint, 5> z;
    for (auto& p : z) p = random_point();
    if (t % 4 == 0) z[t % 5] = inf;
    double alt = 0.0;
    for (int drop = 0; drop < 5; ++drop) {
      std::array<ComplexPoint, 4> q;
      int k = 0;
      for (int i = 0; i < 5; ++i)
        if (i != drop) q[k++] = z[i];
      alt += (drop % 2 == 0 ? 1.0 : -1.0) * ideal_tet_volume(q[0], q[1], q[2], q[3]);
    }
    CHECK(std::abs(alt) < 1e-10);

    const auto m = random_mobius();
    const double before = ideal_tet_volume(z[0], z[1], z[2], z[3]);
    const double after = ideal_tet_volume(m(z[0]), m(z[1]), m(z[2]), m(z[3]));
    CHECK(std::abs(before - after) < 1e-10);
  }
}

TEST_CASE("visual angle") {
  CHECK(std::abs(visual_angle(std::asinh(1.0)) - pi / 2) < 1e-15);
  double last = pi;
  for (int k = 1; k <= 200; ++k) {
    const double d = 0.05 * k;
    const double phi = visual_angle(d);
    CHECK(std::abs(std::tan(phi / 2) * std::sinh(d) - 1.0) < 1e-12);
    CHECK(phi < last);
    last = phi;
  }
  CHECK_THROWS_AS(visual_angle(0.0), Error);
}

TEST_CASE("polygonal curves") {
  SUBCASE("reconstruction") {
    const std::vector<double> angles{pi / 2, pi / 2, pi / 3, 2.0};
    const std::vector<double> lengths{0.8, 1.3, 0.4};
    const auto c = polygon_from_data(angles, lengths);
    REQUIRE(c.normals.size() == 5);
    REQUIRE(c.vertices.size() == 4);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const auto pp = plane_pair_invariant(c.normals[i], c.normals[i + 1]);
      CHECK(pp.tag == PairTag::Angle);
      CHECK(std::abs(pp.measure - angles[i]) < 1e-10);
      CHECK(std::abs(mink_dot(c.normals[i], c.vertices[i])) < 1e-12);
      CHECK(std::abs(mink_dot(c.normals[i + 1], c.vertices[i])) < 1e-12);
    }
    for (std::size_t i = 0; i < lengths.size(); ++i)
      CHECK(std::abs(mink_distance(c.vertices[i], c.vertices[i + 1]) - lengths[i]) < 1e-10);
  }
  SUBCASE("Lambert quadrilateral") {
    // three right angles; the fourth angle closes the curve at E_1 cap E_4
    const double a = 0.7, b = 0.9;
    const auto c = polygon_from_data({pi / 2, pi / 2, pi / 2}, {a, b});
    const double cos_fourth = std::sinh(a) * std::sinh(b);
    CHECK(std::abs(-mink_dot(c.normals[0], c.normals[3]) - cos_fourth) < 1e-12);
  }
  SUBCASE("lengthening sides does not raise the end inner product") {
    for (int n : {4, 5}) {
      int compact = 0;
      for (int t = 0; t < 4000 && compact < 300; ++t) {
        std::vector<double> angles(n - 1), lengths(n - 2);
        for (auto& x : angles) x = uni(0.3, pi - 0.3);
        for (auto& x : lengths) x = uni(0.05, 1.5);
        auto longer = lengths;
        const int grow = static_cast<int>(uni(0, n - 2));
        longer[grow] += uni(0.0, 0.5);
        const auto c = polygon_from_data(angles, lengths);
        const auto c2 = polygon_from_data(angles, longer);
        if (!closes_convexly(c) || !closes_convexly(c2)) continue;
        ++compact;
        const double ip = mink_dot(c.normals.front(), c.normals.back());
        const double ip2 = mink_dot(c2.normals.front(), c2.normals.back());
        CHECK(ip2 <= ip + 1e-12);
        const auto c3 = polygon_from_data(angles, lengths);
        CHECK(std::abs(mink_dot(c3.normals.front(), c3.normals.back()) - ip) < 1e-12);
      }
      CHECK(compact >= 100);
    }
  }
  CHECK_THROWS_AS(polygon_from_data({pi / 2, 4.0}, {1.0}), Error);
  CHECK_THROWS_AS(polygon_from_data({pi / 2, pi / 2}, {-1.0}), Error);
}
