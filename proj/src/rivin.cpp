#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "solver.hpp"

namespace hd::detail {

namespace {

constexpr double kPi = std::numbers::pi;

struct Tri {
  std::array<int, 3> v;  // counterclockwise
};

struct System {
  std::vector<Tri> tris;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

// Angle of corner k of triangle t as a linear form in the free variables
// (two per triangle, the third corner is pi minus both).
void add_corner(Eigen::MatrixXd& a, Eigen::VectorXd& b, int row, int t, int k, double coef) {
  if (k < 2) {
    a(row, 2 * t + k) += coef;
  } else {
    a(row, 2 * t) -= coef;
    a(row, 2 * t + 1) -= coef;
    b(row) -= coef * kPi;
  }
}

System build(const CombPolyhedron& p, const std::function<double(int, int)>& alpha, int v_inf) {
  System s;
  std::vector<bool> vertical(p.face_count(), false);
  std::vector<int> on_vertical(p.vertex_count, 0);
  for (int f = 0; f < p.face_count(); ++f) {
    const auto& face = p.faces[f];
    vertical[f] = std::find(face.begin(), face.end(), v_inf) != face.end();
    if (vertical[f])
      for (int v : face) ++on_vertical[v];
  }
  // edge key -> (triangle, corner opposite the edge)
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> opposite;
  std::map<std::pair<int, int>, bool> diagonal;
  auto key = [](int u, int v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
  for (int f = 0; f < p.face_count(); ++f) {
    if (vertical[f]) continue;
    const auto& face = p.faces[f];
    const int k = static_cast<int>(face.size());
    for (int i = 1; i + 1 < k; ++i) {
      const int t = static_cast<int>(s.tris.size());
      s.tris.push_back({{face[0], face[i], face[i + 1]}});
      for (int c = 0; c < 3; ++c) {
        const int u = s.tris[t].v[(c + 1) % 3], w = s.tris[t].v[(c + 2) % 3];
        opposite[key(u, w)].emplace_back(t, c);
      }
      if (i > 1) diagonal[key(face[0], face[i])] = true;
    }
  }
  std::vector<std::vector<std::pair<int, int>>> rows;  // (triangle, corner)
  std::vector<double> rhs;
  for (int v = 0; v < p.vertex_count; ++v) {
    if (v == v_inf) continue;
    std::vector<std::pair<int, int>> row;
    for (int t = 0; t < static_cast<int>(s.tris.size()); ++t)
      for (int c = 0; c < 3; ++c)
        if (s.tris[t].v[c] == v) row.emplace_back(t, c);
    double target = 2 * kPi;
    if (on_vertical[v] == 2)
      target = alpha(v, v_inf);
    else if (on_vertical[v] == 1)
      target = kPi;
    rows.push_back(row);
    rhs.push_back(target);
  }
  for (const auto& [e, opp] : opposite) {
    const bool diag = diagonal.count(e) > 0;
    rows.push_back(opp);
    rhs.push_back(diag ? kPi : alpha(e.first, e.second));
  }
  const int m = 2 * static_cast<int>(s.tris.size());
  const int n = static_cast<int>(rows.size());
  s.a = Eigen::MatrixXd::Zero(n, m);
  s.b = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < n; ++r) {
    s.b(r) = rhs[r];
    for (const auto& [t, c] : rows[r]) add_corner(s.a, s.b, r, t, c, 1.0);
  }
  return s;
}

bool in_domain(const Eigen::VectorXd& x) {
  for (int t = 0; t < x.size() / 2; ++t)
    if (!(x(2 * t) > 0 && x(2 * t + 1) > 0 && kPi - x(2 * t) - x(2 * t + 1) > 0)) return false;
  return true;
}

double dlob(double x) { return -std::log(2 * std::sin(x)); }

// Gradient and 2x2 Hessian blocks of -(sum of Lobachevsky) - mu * log barrier.
void derivatives(const Eigen::VectorXd& x, double mu, Eigen::VectorXd& g, std::vector<Eigen::Matrix2d>& h) {
  const int t_count = static_cast<int>(x.size() / 2);
  g.resize(x.size());
  h.resize(t_count);
  for (int t = 0; t < t_count; ++t) {
    const double a = x(2 * t), b = x(2 * t + 1), c = kPi - a - b;
    g(2 * t) = -(dlob(a) - dlob(c)) - mu * (1 / a - 1 / c);
    g(2 * t + 1) = -(dlob(b) - dlob(c)) - mu * (1 / b - 1 / c);
    const double cc = 1 / std::tan(c) + mu / (c * c);
    h[t] << 1 / std::tan(a) + mu / (a * a) + cc, cc, cc, 1 / std::tan(b) + mu / (b * b) + cc;
  }
}

}  // namespace

bool rivin_layout(const CombPolyhedron& p, const std::function<double(int, int)>& alpha, int v_inf,
                  std::vector<cplx>& z) {
  const System s = build(p, alpha, v_inf);
  const int t_count = static_cast<int>(s.tris.size());
  const int m = 2 * t_count;
  if (m == 0) return false;
  Eigen::VectorXd x = Eigen::VectorXd::Constant(m, kPi / 3);
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(s.a.rows());

  auto residual = [&](const Eigen::VectorXd& xx, const Eigen::VectorXd& vv, double mu) {
    Eigen::VectorXd g;
    std::vector<Eigen::Matrix2d> h;
    derivatives(xx, mu, g, h);
    return std::sqrt((g + s.a.transpose() * vv).squaredNorm() + (s.a * xx - s.b).squaredNorm());
  };

  for (double mu = 1.0;; mu *= 0.2) {
    const bool last = mu < 1e-14;
    const double barrier = last ? 0.0 : mu;
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXd g;
      std::vector<Eigen::Matrix2d> h;
      derivatives(x, barrier, g, h);
      const Eigen::VectorXd rp = s.a * x - s.b;
      const double r0 = std::sqrt((g + s.a.transpose() * nu).squaredNorm() + rp.squaredNorm());
      if (r0 < 1e-11) break;
      // P^{-1} applied blockwise
      Eigen::MatrixXd pinv_at(m, s.a.rows());
      Eigen::VectorXd pinv_g(m);
      for (int t = 0; t < t_count; ++t) {
        const Eigen::Matrix2d inv = h[t].inverse();
        pinv_at.middleRows(2 * t, 2) = inv * s.a.middleCols(2 * t, 2).transpose();
        pinv_g.segment(2 * t, 2) = inv * g.segment(2 * t, 2);
      }
      const Eigen::MatrixXd schur = s.a * pinv_at;
      const Eigen::VectorXd rhs = -(s.a * pinv_g) + rp;
      const Eigen::VectorXd nu_new = schur.completeOrthogonalDecomposition().solve(rhs);
      const Eigen::VectorXd dx = -pinv_g - pinv_at * nu_new;
      const Eigen::VectorXd dnu = nu_new - nu;
      double step = 1.0;
      while (step > 1e-12) {
        const Eigen::VectorXd xt = x + step * dx;
        if (in_domain(xt) && residual(xt, nu + step * dnu, barrier) <= (1 - 0.01 * step) * r0) break;
        step *= 0.5;
      }
      if (step <= 1e-12) break;
      x += step * dx;
      nu += step * dnu;
    }
    if (last) break;
  }
  if ((s.a * x - s.b).cwiseAbs().maxCoeff() > 1e-8) return false;

  // lay the triangles out across shared edges
  std::map<std::pair<int, int>, std::vector<int>> by_edge;
  for (int t = 0; t < t_count; ++t)
    for (int c = 0; c < 3; ++c) {
      const int u = s.tris[t].v[c], w = s.tris[t].v[(c + 1) % 3];
      by_edge[{std::min(u, w), std::max(u, w)}].push_back(t);
    }
  auto angle = [&](int t, int c) { return c < 2 ? x(2 * t + c) : kPi - x(2 * t) - x(2 * t + 1); };
  z.assign(p.vertex_count, cplx(0.0));
  std::vector<bool> placed(p.vertex_count, false), done(t_count, false);
  std::vector<int> queue{0};
  done[0] = true;
  z[s.tris[0].v[0]] = 0.0;
  z[s.tris[0].v[1]] = 1.0;
  placed[s.tris[0].v[0]] = placed[s.tris[0].v[1]] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int t = queue[qi];
    const auto& v = s.tris[t].v;
    int c = 0;
    while (c < 3 && !(placed[v[c]] && placed[v[(c + 1) % 3]])) ++c;
    if (c == 3) return false;
    const int third = v[(c + 2) % 3];
    const cplx pz = z[v[c]], qz = z[v[(c + 1) % 3]];
    const cplx w = pz + (qz - pz) * (std::sin(angle(t, (c + 1) % 3)) / std::sin(angle(t, (c + 2) % 3))) *
                            std::polar(1.0, angle(t, c));
    if (!placed[third]) {
      z[third] = w;
      placed[third] = true;
    } else if (std::abs(z[third] - w) > 1e-6 * (1 + std::abs(w))) {
      return false;
    }
    for (int k = 0; k < 3; ++k) {
      const int a = v[k], b = v[(k + 1) % 3];
      for (int u : by_edge[{std::min(a, b), std::max(a, b)}])
        if (!done[u]) {
          done[u] = true;
          queue.push_back(u);
        }
    }
  }
  for (int v = 0; v < p.vertex_count; ++v)
    if (v != v_inf && !placed[v]) return false;
  return true;
}

}  // namespace hd::detail
