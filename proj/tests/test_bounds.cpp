#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hd/bounds.hpp"
#include "hd/error.hpp"

using namespace hd;
using std::numbers::pi;

namespace {

double lob_quadrature(double x) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([](double t) { return -std::log(std::abs(2.0 * std::sin(t))); }, 0.0, x);
}

// Volume of the ideal antiprism with right angles.
double antiprism_volume(int n) {
  return 2 * n * (lob_quadrature(pi / 4 + pi / (2 * n)) + lob_quadrature(pi / 4 - pi / (2 * n)));
}

}  // namespace

TEST_CASE("regular ideal square") {
  const auto pat = realize(drum(4));
  const auto r = thin_polygon_check(pat, 0, 0, 2);
  const double l = 2 * std::log(1 + std::sqrt(2.0));
  CHECK(r.n == 4);
  CHECK(std::abs(r.l - l) < 1e-9);
  CHECK(std::abs(r.d - l) < 1e-9);
  CHECK(std::abs(r.lhs - std::sinh((pi - 2) / (2 * pi) * l)) < 1e-9);
  CHECK(std::abs(r.lhs - 0.326) < 1e-3);
  CHECK(r.pass);
  CHECK(((r.e3 == 1 && r.e4 == 3) || (r.e3 == 3 && r.e4 == 1)));
}

TEST_CASE("thin polygon lemma on the inventory") {
  int checked = 0;
  for (const auto& e : enumerate_basic({drum(4), drum(5), drum(6)}, 1)) {
    const auto pat = realize(e.rep);
    for (int f = 0; f < pat.face_count(); ++f) {
      const int n = static_cast<int>(pat.faces[f].size());
      if (n < 4) {
        CHECK_THROWS_AS(thin_polygon_check(pat, f, 0, 2), Error);
        continue;
      }
      for (int a = 0; a < n; ++a)
        for (int b = a + 2; b < n; ++b) {
          if (a == 0 && b == n - 1) continue;
          const auto r = thin_polygon_check(pat, f, a, b, true, 2000);
          CHECK(r.pass);
          CHECK(std::abs(r.l * std::sinh(r.epsilon) - (n - 2) * pi) < 1e-12 * (n - 2) * pi);
          CHECK(std::abs(r.l0 + r.l1 + r.l2 - r.l) < 1e-9);
          // l2 >= (pi-2)/pi * l, up to one sample of slack
          CHECK(r.l2 >= (pi - 2) / pi * r.l - r.l / 2000 * 2);
          ++checked;
        }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("triangles are outside the lemma") {
  const auto pat = realize(drum(3));
  try {
    thin_polygon_check(pat, 0, 0, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LemmaInapplicable);
  }
}

TEST_CASE("bend bound") {
  CHECK(std::abs(bend_bound(pi / 2, 4) - 2 * pi / (pi - 2) * std::log(1 + std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(bend_bound(pi / 2, 4) - 4.851) < 1e-3);
  double prev = 0.0;
  for (int k = 1; k < 300; ++k) {
    const double phi = pi * k / 300;
    const double b = bend_bound(phi, 4);
    CHECK(b > prev);
    prev = b;
    for (int n = 5; n <= 8; ++n) CHECK(std::abs(bend_bound(phi, n) - (n - 3) * b) < 1e-12 * n * b);
  }
  CHECK(bend_bound(1e-9, 4) < 1e-8);
  CHECK_THROWS_AS(bend_bound(pi, 4), Error);
  CHECK_THROWS_AS(bend_bound(1.0, 3), Error);

  // realized bending family against the bound
  std::vector<double> grid;
  for (int k = 1; k <= 15; ++k) grid.push_back(0.1 * k);
  grid.push_back(pi / 2);
  for (const auto& s : deform_family(drum(4), {0, 0, 2}, grid)) {
    CHECK(s.l <= bend_bound(s.theta, 4));
    CHECK(s.l <= bend_bound(pi - s.theta, 4));
  }
}

TEST_CASE("the constant K") {
  const double catalan = boost::math::constants::catalan<double>();
  // int_0^pi asinh(tan(phi/2)) dphi = int_0^inf 2 asinh(u) / (1 + u^2) du
  boost::math::quadrature::exp_sinh<double> es;
  const double integral = es.integrate([](double u) { return 2 * std::asinh(u) / (1 + u * u); }, 0.0,
                                       std::numeric_limits<double>::infinity());
  CHECK(std::abs(integral - 4 * catalan) < 1e-10);
  CHECK(std::abs(integral - 3.6638624) < 1e-7);
  const double k = combinatorial_K();
  CHECK(std::abs(k - pi / (pi - 2) * integral) < 1e-10);
  CHECK(std::abs(k - 10.083) < 1e-3);
  CHECK(std::abs(combinatorial_K(7) - combinatorial_K(14)) < 1e-10);
}

TEST_CASE("drilling drum(4) across its square") {
  const auto v = drill_report(drum(4), {0, 0, 2});
  CHECK(std::abs(v.v_before - antiprism_volume(4)) < 1e-9);
  CHECK(v.dv > 0.0);
  CHECK(v.dv <= pi / 2 * v.l);
  CHECK(v.dv <= combinatorial_K() * (4 - 3));
  CHECK(v.dv_cover == 4 * v.dv);
  CHECK(v.big_l == 2 * v.l);
  CHECK(v.dv_cover <= pi * v.big_l);
  CHECK(v.pass_positive);
  CHECK(v.pass_pi);
  CHECK(v.pass_k);
  CHECK(v.pass_cover);
}

TEST_CASE("drilling inventory") {
  const std::vector<CombPolyhedron> polys{drum(4), drum(5), drum(6)};
  const auto rows = drill_inventory(polys, 1);
  const double k = combinatorial_K();
  std::size_t expect = 0;
  for (const auto& p : polys) expect += admissible_surgeries(p).size();
  REQUIRE(rows.size() == expect);
  for (const auto& r : rows) {
    CHECK(r.dv > 0.0);
    CHECK(r.dv <= std::min(pi / 2 * r.l, k * (r.face_n - 3)) + 1e-8);
    CHECK(r.pass_pi);
    CHECK(r.pass_k);
  }
  for (int n = 4; n <= 6; ++n) {
    bool found = false;
    for (const auto& r : rows)
      if (std::abs(r.v_before - antiprism_volume(n)) < 1e-9) found = true;
    CHECK(found);
  }
  const auto par = drill_inventory(polys, 4);
  REQUIRE(par.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(par[i].dv == rows[i].dv);
    CHECK(par[i].l == rows[i].l);
  }

  const std::string csv = drill_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "polyhedron_code,face_n,l,dV,pi_bound,K_bound,pass_pi,pass_K");
  std::size_t count = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    CHECK(std::abs(std::stod(cells[3]) - rows[count].dv) < 1e-11 * rows[count].dv);
    CHECK(cells[6] == "1");
    ++count;
  }
  CHECK(count == rows.size());
}
