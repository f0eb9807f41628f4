#include "hd/brooks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "brooks_detail.hpp"
#include "hd/error.hpp"

namespace hd {

namespace detail {

std::array<Mink, 2> apollonius(const Mink& a, const Mink& b, const Mink& c) {
  const std::array<Mink, 3> n{a, b, c};
  Eigen::Matrix3d gram;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) gram(i, j) = mink_dot(n[i], n[j]);
  const Eigen::Vector3d w = gram.fullPivLu().solve(Eigen::Vector3d::Constant(-1.0));
  Mink x0{};
  for (int i = 0; i < 3; ++i) x0 = mink_add(x0, mink_scale(n[i], w[i]));
  const Mink perp = mink_cross(a, b, c);
  const double pp = mink_dot(perp, perp);
  const double s2 = (1.0 - mink_dot(x0, x0)) / pp;
  if (!(s2 >= 0.0) || !std::isfinite(s2)) throw Error(ErrorKind::ConstructionFailed, "no circle tangent to all three");
  const double s = std::sqrt(s2);
  return {mink_add(x0, mink_scale(perp, s)), mink_add(x0, mink_scale(perp, -s))};
}

Mink apollonius_toward(const Mink& a, const Mink& b, const Mink& c, const Mink& region) {
  const auto cand = apollonius(a, b, c);
  const double s0 = mink_dot(region, touch(cand[0], a)), s1 = mink_dot(region, touch(cand[1], a));
  if (std::max(s0, s1) <= 0.0) throw Error(ErrorKind::ConstructionFailed, "no tangent circle inside the region");
  return s0 > s1 ? cand[0] : cand[1];
}


std::vector<Mink> ring(const Mink& nu, int m) {
  std::vector<Mink> all{nu};
  for (const Mink& s : {Mink{0, 0, 0, 1}, Mink{1, 0, 0, 0}, Mink{0, 1, 0, 0}, Mink{0, 0, 1, 0}}) {
    Mink v = s;
    for (const auto& b : all) v = mink_add(v, mink_scale(b, -mink_dot(v, b) / mink_dot(b, b)));
    if (std::abs(mink_dot(v, v)) < 1e-8) continue;
    all.push_back(unit(v));
    if (all.size() == 4) break;
  }
  Mink time{}, e[2]{};
  int k = 0;
  for (std::size_t i = 1; i < all.size(); ++i) (mink_dot(all[i], all[i]) < 0 ? time : e[k++]) = all[i];
  std::vector<Mink> pts;
  for (int j = 0; j < m; ++j) {
    const double t = 2 * std::numbers::pi * j / m;
    pts.push_back(mink_add(time, mink_add(mink_scale(e[0], std::cos(t)), mink_scale(e[1], std::sin(t)))));
  }
  return pts;
}

}  // namespace detail

using detail::touch;
using detail::unit;

BasePattern base_pattern(double r) {
  if (!(r > 1.0)) throw Error(ErrorKind::InvalidParameter, "r must exceed 1");
  BasePattern b;
  b.r = r;
  const double a = std::sqrt(1 + r * r), c = std::sqrt(1 + 1 / (r * r));
  b.c0 = GenCircle::circle(0.0, 1.0);
  b.c1 = GenCircle::circle(a, r);
  b.c1p = GenCircle::circle(-a, r);
  b.c2 = GenCircle::circle(cplx(0, c), 1 / r);
  b.c2p = GenCircle::circle(cplx(0, -c), 1 / r);
  return b;
}

double expansion_factor(double r) {
  if (!(r >= 1.0)) throw Error(ErrorKind::InvalidParameter, "no real expansion for r < 1");
  const double r2 = r * r;
  return r2 + std::sqrt((r2 - 1) * (r2 + 1));
}

Mobius expansion_map(double r) { return Mobius::from_coeffs(cplx(0, expansion_factor(r)), 0.0, 0.0, 1.0); }

Contact classify_contact(const Mink& a, const Mink& b, double tol) {
  const double x = mink_dot(a, b);
  if (std::abs(x + 1) <= tol) return Contact::Tangent;
  if (std::abs(x) <= tol) return Contact::Orthogonal;
  if (x < -1) return Contact::Disjoint;
  if (x >= 1 - tol) return Contact::Overlap;
  return Contact::Crossing;
}

TangencyGraph TangencyGraph::from_circles(std::vector<LabeledCircle> circles) {
  TangencyGraph g;
  g.circles = std::move(circles);
  const int n = static_cast<int>(g.circles.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Incidence inc;
      inc.a = a;
      inc.b = b;
      inc.pair = plane_pair_invariant(g.circles[a].nu, g.circles[b].nu);
      inc.contact = classify_contact(g.circles[a].nu, g.circles[b].nu);
      if (inc.contact == Contact::Tangent) inc.point = point_from_null(touch(g.circles[a].nu, g.circles[b].nu));
      g.incidences.push_back(inc);
    }
  return g;
}

int TangencyGraph::find(const std::string& label) const {
  for (int i = 0; i < static_cast<int>(circles.size()); ++i)
    if (circles[i].label == label) return i;
  return -1;
}

const Incidence& TangencyGraph::between(int a, int b) const {
  if (a > b) std::swap(a, b);
  const int n = static_cast<int>(circles.size());
  if (a < 0 || b >= n || a == b) throw Error(ErrorKind::InvalidInput, "no such pair");
  // pairs are stored row by row
  return incidences[static_cast<std::size_t>(a) * (2 * n - a - 1) / 2 + (b - a - 1)];
}

Mobius balanced_frame(double r) { return Mobius::from_coeffs(1.0, 0.0, 0.0, std::sqrt(expansion_factor(r))); }

TangencyGraph extended_pattern(double r, const Mobius& frame) {
  const BasePattern b = base_pattern(r);
  const Mobius m = expansion_map(r);
  const std::array<std::pair<const char*, GenCircle>, 5> base{
      {{"C0", b.c0}, {"C1", b.c1}, {"C1'", b.c1p}, {"C2", b.c2}, {"C2'", b.c2p}}};
  std::vector<LabeledCircle> cs;
  for (const auto& [name, c] : base) cs.push_back({name, to_mink_plane(frame(c))});
  for (const auto& [name, c] : base) cs.push_back({std::string("M(") + name + ")", to_mink_plane(frame(m(c)))});
  cs[5].nu = mink_scale(cs[5].nu, -1.0);  // M(C0) covers the outside
  TangencyGraph g = TangencyGraph::from_circles(std::move(cs));

  auto want = [&](int i, int j, Contact c, double tol) {
    if (std::abs(mink_dot(g.circles[i].nu, g.circles[j].nu) - (c == Contact::Tangent ? -1.0 : 0.0)) > tol)
      throw Error(ErrorKind::ConstructionViolated, g.circles[i].label + " and " + g.circles[j].label);
  };
  for (int f : {0, 5})
    for (int i = 1; i <= 4; ++i) want(f, f + i, Contact::Orthogonal, 1e-10);
  for (int f : {0, 5})
    for (int i : {1, 2})
      for (int j : {3, 4}) want(f + i, f + j, Contact::Tangent, 1e-10);

  const std::set<std::pair<int, int>> cross_tangent{{1, 6}, {1, 7}, {2, 6}, {2, 7}};
  for (int i = 0; i < 5; ++i)
    for (int j = 5; j < 10; ++j) {
      const Contact c = g.between(i, j).contact;
      const Contact expected = cross_tangent.count({i, j}) ? Contact::Tangent : Contact::Disjoint;
      if (c != expected)
        throw Error(ErrorKind::RTooSmall, g.circles[i].label + " meets " + g.circles[j].label + " at r = " +
                                              std::to_string(r));
    }
  return g;
}

namespace {

std::array<Mink, 4> corner_nulls(const std::array<Mink, 4>& s) {
  std::array<Mink, 4> t;
  for (int i = 0; i < 4; ++i) t[i] = touch(s[i], s[(i + 1) % 4]);
  return t;
}

void refresh_corners(QuadRegion& q) {
  const auto t = corner_nulls(q.sides);
  for (int i = 0; i < 4; ++i) q.corners[i] = point_from_null(t[i]);
}

// Replaces the left side by `d`, which touches it from inside the region.
void advance(QuadRegion& q, const Mink& d, const std::string& label) {
  const Mink old = q.sides[0];
  q.sides[0] = d;
  q.labels[0] = label;
  const auto t = corner_nulls(q.sides);
  Mink k = unit(mink_cross(t[0], t[1], t[2]));
  if (mink_dot(k, touch(d, old)) > 0.0) k = mink_scale(k, -1.0);
  q.region = k;
  refresh_corners(q);
}

// Left becomes the old top, so the next row packs from the top down.
void rotate_roles(QuadRegion& q) {
  std::rotate(q.sides.begin(), q.sides.begin() + 3, q.sides.end());
  std::rotate(q.labels.begin(), q.labels.begin() + 3, q.labels.end());
  refresh_corners(q);
}

bool inside(const QuadRegion& q, Mink p) {
  if (p[3] < 0) p = mink_scale(p, -1.0);
  p = mink_scale(p, 2.0 / p[3]);
  if (!(mink_dot(q.region, p) > 1e-9)) return false;
  for (const auto& s : q.sides)
    if (!(mink_dot(s, p) < -1e-9)) return false;
  return true;
}

bool uncovered(const TangencyGraph& g, const QuadRegion& q, const std::array<int, 4>& idx) {
  const auto t = corner_nulls(q.sides);
  for (int c = 0; c < static_cast<int>(g.circles.size()); ++c) {
    if (std::find(idx.begin(), idx.end(), c) != idx.end()) continue;
    const Mink& nu = g.circles[c].nu;
    for (const auto& corner : t)
      if (std::abs(mink_dot(nu, corner)) < 1e-9 && mink_dot(nu, q.region) > 0.0) return false;
  }
  for (int c = 0; c < static_cast<int>(g.circles.size()); ++c) {
    if (std::find(idx.begin(), idx.end(), c) != idx.end()) continue;
    for (const auto& p : detail::ring(g.circles[c].nu, 64))
      if (inside(q, p)) return false;
  }
  // a circle that fits inside the region must not meet any other disk
  int fitting = 0;
  for (int i = 0; i < 4; ++i) {
    Mink d;
    try {
      d = detail::apollonius_toward(q.sides[i], q.sides[(i + 1) % 4], q.sides[(i + 3) % 4], q.region);
    } catch (const Error&) {
      return false;
    }
    if (mink_dot(d, q.sides[(i + 2) % 4]) > -1 + 1e-9) continue;
    ++fitting;
    for (int c = 0; c < static_cast<int>(g.circles.size()); ++c) {
      if (std::find(idx.begin(), idx.end(), c) != idx.end()) continue;
      if (mink_dot(d, g.circles[c].nu) > -1 + 1e-9) return false;
    }
  }
  return fitting > 0;
}

bool family_two(const std::string& label) { return label.find('2') != std::string::npos; }

}  // namespace

QuadRegion transform(const QuadRegion& q, const Mobius& m) {
  QuadRegion out = q;
  for (int i = 0; i < 4; ++i) out.sides[i] = to_mink_plane(m(circle_from_mink(q.sides[i])));
  out.region = to_mink_plane(m(circle_from_mink(q.region)));
  refresh_corners(out);
  return out;
}

double corner_modulus(const QuadRegion& q) {
  return std::abs(cross_ratio(q.corners[0], q.corners[1], q.corners[2], q.corners[3]));
}

std::vector<QuadRegion> funnel_quads(double r, const Mobius& frame) {
  const TangencyGraph g = extended_pattern(r, frame);
  const int n = static_cast<int>(g.circles.size());
  auto tangent = [&](int a, int b) { return g.between(a, b).contact == Contact::Tangent; };
  std::vector<QuadRegion> found;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int d = b + 1; d < n; ++d)
        for (int c = a + 1; c < n; ++c) {
          if (c == b || c == d) continue;
          if (!(tangent(a, b) && tangent(b, c) && tangent(c, d) && tangent(d, a))) continue;
          if (g.between(a, c).contact != Contact::Disjoint || g.between(b, d).contact != Contact::Disjoint) continue;
          std::array<int, 4> idx{a, b, c, d};
          QuadRegion q;
          for (int i = 0; i < 4; ++i) q.sides[i] = g.circles[idx[i]].nu;
          const auto t = corner_nulls(q.sides);
          const Mink k = unit(mink_cross(t[0], t[1], t[2]));
          for (double sign : {1.0, -1.0}) {
            q.region = mink_scale(k, sign);
            if (!uncovered(g, q, idx)) continue;
            refresh_corners(q);
            // counterclockwise means the region is left of the corner sequence
            const Mink left = to_mink_plane(circle_through(q.corners[0], q.corners[1], q.corners[2]));
            std::array<int, 4> order = idx;
            if (mink_dot(left, q.region) < 0.0) order = {a, d, c, b};
            const auto start = std::find_if(order.begin(), order.end(),
                                            [&](int i) { return family_two(g.circles[i].label); });
            if (start == order.end()) throw Error(ErrorKind::ConstructionViolated, "funnel without a family-2 side");
            std::rotate(order.begin(), start, order.end());
            QuadRegion f;
            f.region = q.region;
            for (int i = 0; i < 4; ++i) {
              f.sides[i] = g.circles[order[i]].nu;
              f.labels[i] = g.circles[order[i]].label;
            }
            refresh_corners(f);
            found.push_back(f);
          }
        }
  if (found.size() != 4) throw Error(ErrorKind::ConstructionViolated, "expected four funnels");
  const auto upper = std::find_if(found.begin(), found.end(), [](const QuadRegion& q) {
    return q.labels[0] == "C2" && q.labels[2] == "M(C1)" &&
           std::set<std::string>{q.labels[1], q.labels[3]} == std::set<std::string>{"C1", "C1'"};
  });
  if (upper == found.end()) throw Error(ErrorKind::ConstructionViolated, "no funnel bounded by C1, C2, C1', M(C1)");
  std::rotate(found.begin(), upper, upper + 1);
  const double mod = corner_modulus(found[0]);
  for (const auto& q : found) {
    for (int i = 0; i < 4; ++i) {
      if (classify_contact(q.sides[i], q.sides[(i + 1) % 4], 1e-10) != Contact::Tangent ||
          classify_contact(q.sides[i], q.sides[(i + 2) % 4]) != Contact::Disjoint)
        throw Error(ErrorKind::ConstructionViolated, "funnel is not a 4-cusp quadrilateral");
    }
    if (std::abs(corner_modulus(q) - mod) > 1e-9 * std::max(1.0, mod))
      throw Error(ErrorKind::ConstructionViolated, "funnels are not Mobius-equivalent");
  }
  return found;
}

QuadRegion funnel_quad(double r) { return funnel_quads(r).front(); }

double CFracDigits::value() const {
  double v = 0.0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (it == digits.rbegin()) {
      v = *it;
      continue;
    }
    v = *it + (v == 0.0 ? 0.0 : 1.0 / v);
  }
  return v;
}

GreedyPacking greedy_packing(const QuadRegion& q0, int max_digits, int max_per_digit) {
  constexpr double band = 1e-9;
  GreedyPacking out;
  QuadRegion q = q0;
  for (int digit = 0; digit < max_digits; ++digit) {
    int count = 0;
    while (true) {
      if (count >= max_per_digit) {
        out.cf.digits.push_back(count);
        return out;
      }
      const Mink d = apollonius_in_region(q, QuadRegion::Left, QuadRegion::Bottom, QuadRegion::Top);
      const double clearance = -(mink_dot(d, q.sides[QuadRegion::Right]) + 1.0);
      if (clearance < -band) break;
      out.circles.push_back(d);
      ++count;
      advance(q, d, "D" + std::to_string(out.circles.size()));
      if (clearance <= band) {
        out.cf.digits.push_back(count);
        out.cf.terminated = true;
        return out;
      }
    }
    out.cf.digits.push_back(count);
    if (count == 0 && digit > 0) return out;
    rotate_roles(q);
  }
  return out;
}

CFracDigits greedy_cfrac(const QuadRegion& q, int max_digits) { return greedy_packing(q, max_digits).cf; }

Mink apollonius_in_region(const QuadRegion& q, int a, int b, int c) {
  return detail::apollonius_toward(q.sides[a], q.sides[b], q.sides[c], q.region);
}

namespace {

// True when n circles fit in a row from the left of Q_r.
bool row_fits(double r, int n) {
  QuadRegion q;
  try {
    q = funnel_quad(r);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::RTooSmall) return false;
    throw;
  }
  for (int i = 0; i < n; ++i) {
    const Mink d = apollonius_in_region(q, QuadRegion::Left, QuadRegion::Bottom, QuadRegion::Top);
    if (mink_dot(d, q.sides[QuadRegion::Right]) + 1.0 > 0.0) return false;
    advance(q, d, "D");
  }
  return true;
}

}  // namespace

double solve_r(int n, const SolveOptions& opt) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be positive");
  double lo = opt.r_min;
  if (row_fits(lo, n)) throw Error(ErrorKind::BracketNotFound, "n circles already fit at r_min");
  double hi = lo;
  do {
    lo = hi;
    hi *= 1.5;
    if (hi > opt.r_max) throw Error(ErrorKind::BracketNotFound, "no bracket below r_max");
  } while (!row_fits(hi, n));
  while (hi - lo > opt.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (row_fits(mid, n) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace hd
