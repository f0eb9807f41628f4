#include "solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "hd/error.hpp"

namespace hd::detail {

namespace {

struct Layout {
  std::vector<int> vertex_col;  // -1 when pinned or inactive
  int cols = 0;
  int rows = 0;
};

Layout make_layout(const Constraints& c) {
  Layout l;
  l.cols = 4 * c.faces;
  l.vertex_col.assign(c.vertices, -1);
  for (int v = 0; v < c.vertices; ++v) {
    if (!c.active[v] || c.pinned[v]) continue;
    l.vertex_col[v] = l.cols;
    l.cols += 2;
  }
  l.rows = c.faces + static_cast<int>(c.pairs.size());
  for (const auto& inc : c.incident) l.rows += static_cast<int>(inc.size());
  return l;
}

Mink lift(cplx z) {
  const double zz = std::norm(z);
  return {2.0 * z.real(), 2.0 * z.imag(), zz - 1.0, zz + 1.0};
}

void evaluate(const Constraints& c, const Layout& lay, const std::vector<Mink>& nu, const std::vector<cplx>& z,
              Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
  r.resize(lay.rows);
  if (jac) jac->setZero(lay.rows, lay.cols);
  int row = 0;
  for (int f = 0; f < c.faces; ++f, ++row) {
    r[row] = mink_dot(nu[f], nu[f]) - 1.0;
    if (jac) {
      for (int k = 0; k < 3; ++k) (*jac)(row, 4 * f + k) = 2.0 * nu[f][k];
      (*jac)(row, 4 * f + 3) = -2.0 * nu[f][3];
    }
  }
  for (int f = 0; f < c.faces; ++f) {
    for (int v : c.incident[f]) {
      const Mink p = lift(z[v]);
      r[row] = mink_dot(nu[f], p);
      if (jac) {
        for (int k = 0; k < 3; ++k) (*jac)(row, 4 * f + k) = p[k];
        (*jac)(row, 4 * f + 3) = -p[3];
        const int col = lay.vertex_col[v];
        if (col >= 0) {
          const double s = nu[f][2] - nu[f][3];
          (*jac)(row, col) = 2.0 * nu[f][0] + 2.0 * z[v].real() * s;
          (*jac)(row, col + 1) = 2.0 * nu[f][1] + 2.0 * z[v].imag() * s;
        }
      }
      ++row;
    }
  }
  for (const auto& [f, g, angle] : c.pairs) {
    r[row] = mink_dot(nu[f], nu[g]) + std::cos(angle);
    if (jac) {
      for (int k = 0; k < 3; ++k) {
        (*jac)(row, 4 * f + k) += nu[g][k];
        (*jac)(row, 4 * g + k) += nu[f][k];
      }
      (*jac)(row, 4 * f + 3) -= nu[g][3];
      (*jac)(row, 4 * g + 3) -= nu[f][3];
    }
    ++row;
  }
}

void apply_step(const Constraints& c, const Layout& lay, const Eigen::VectorXd& dx, std::vector<Mink>& nu,
                std::vector<cplx>& z) {
  for (int f = 0; f < c.faces; ++f)
    for (int k = 0; k < 4; ++k) nu[f][k] += dx[4 * f + k];
  for (int v = 0; v < c.vertices; ++v) {
    const int col = lay.vertex_col[v];
    if (col >= 0) z[v] += cplx(dx[col], dx[col + 1]);
  }
}

}  // namespace

double max_residual(const Constraints& c, const std::vector<Mink>& normals, const std::vector<cplx>& points) {
  const Layout lay = make_layout(c);
  Eigen::VectorXd r;
  evaluate(c, lay, normals, points, r, nullptr);
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

SolveStats solve(const Constraints& c, std::vector<Mink>& nu, std::vector<cplx>& z, int max_iterations,
                 double tolerance) {
  const Layout lay = make_layout(c);
  Eigen::VectorXd r, r_try;
  Eigen::MatrixXd jac;
  evaluate(c, lay, nu, z, r, &jac);
  double cost = r.squaredNorm();

  SolveStats st;
  double mu = -1.0;
  const double target = std::min(tolerance, 1e-9) * 1e-3;
  for (st.iterations = 0; st.iterations < max_iterations; ++st.iterations) {
    if (r.cwiseAbs().maxCoeff() < target) break;
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    const Eigen::VectorXd diag = a.diagonal().cwiseMax(1e-12);
    if (mu < 0.0) mu = 1e-4 * diag.maxCoeff();
    bool accepted = false;
    Eigen::VectorXd dx;
    while (!accepted && mu < 1e20) {
      Eigen::MatrixXd damped = a;
      damped.diagonal() += mu * diag;
      dx = damped.ldlt().solve(-g);
      auto nu_try = nu;
      auto z_try = z;
      apply_step(c, lay, dx, nu_try, z_try);
      evaluate(c, lay, nu_try, z_try, r_try, nullptr);
      const double cost_try = r_try.squaredNorm();
      if (std::isfinite(cost_try) && cost_try < cost) {
        nu = std::move(nu_try);
        z = std::move(z_try);
        cost = cost_try;
        mu = std::max(mu / 5.0, 1e-15);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted) break;
    evaluate(c, lay, nu, z, r, &jac);
    if (dx.norm() < 1e-15) break;
  }
  st.residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  st.converged = st.residual < tolerance;
  return st;
}

void orient_and_check(const Constraints& c, std::vector<Mink>& nu, const std::vector<cplx>& z) {
  for (int f = 0; f < c.faces; ++f) {
    std::vector<bool> on(c.vertices, false);
    for (int v : c.incident[f]) on[v] = true;
    double positive = 0.0, negative = 0.0;
    for (int v = 0; v < c.vertices; ++v) {
      if (!c.active[v] || on[v]) continue;
      const double s = mink_dot(nu[f], lift(z[v]));
      (s > 0.0 ? positive : negative) += std::abs(s);
    }
    if (positive > negative) nu[f] = mink_scale(nu[f], -1.0);
    for (int v = 0; v < c.vertices; ++v) {
      if (!c.active[v] || on[v]) continue;
      if (!(mink_dot(nu[f], lift(z[v])) < -1e-9))
        throw Error(ErrorKind::NoConvergence,
                    "solution is not convex: vertex " + std::to_string(v) + " against face " + std::to_string(f));
    }
  }
  for (const auto& [f, g, angle] : c.pairs) {
    const double got = std::acos(std::clamp(-mink_dot(nu[f], nu[g]), -1.0, 1.0));
    if (std::abs(got - angle) > 1e-8)
      throw Error(ErrorKind::NoConvergence, "faces " + std::to_string(f) + "," + std::to_string(g) +
                                                " meet at " + std::to_string(got) + " instead of " +
                                                std::to_string(angle));
  }
}

}  // namespace hd::detail
