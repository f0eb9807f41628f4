#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hd/error.hpp"
#include "hd/pattern.hpp"

namespace hd {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

std::string render_svg(const CirclePattern& pat) {
  // bounding box of the finite circles and points
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](cplx c, double r) {
    lo_x = std::min(lo_x, c.real() - r);
    hi_x = std::max(hi_x, c.real() + r);
    lo_y = std::min(lo_y, c.imag() - r);
    hi_y = std::max(hi_y, c.imag() + r);
  };
  for (int f = 0; f < pat.face_count(); ++f) {
    const auto g = pat.circle(f);
    if (!g.is_line) grow(g.center, g.radius);
  }
  for (const auto& q : pat.points)
    if (!q.inf) grow(q.z, 0.0);
  if (!std::isfinite(lo_x)) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y) + 1e-9;
  lo_x -= pad, lo_y -= pad, hi_x += pad, hi_y += pad;
  const double w = hi_x - lo_x, h = hi_y - lo_y;
  const double stroke = 0.003 * std::max(w, h);

  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(lo_x) + " " + fmt(-hi_y) + " " + fmt(w) + " " +
       fmt(h) + "\">\n";
  s += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt(stroke) + "\">\n";
  for (int f = 0; f < pat.face_count(); ++f) {
    const auto g = pat.circle(f);
    if (g.is_line) {
      // clip the line to the viewing box
      const cplx base = g.normal * g.offset, dir = cplx(0.0, 1.0) * g.normal;
      const double reach = 2.0 * (std::abs(base - cplx(lo_x + w / 2, lo_y + h / 2)) + w + h);
      const cplx a = base - reach * dir, b = base + reach * dir;
      s += "<line data-face=\"" + std::to_string(f) + "\" x1=\"" + fmt(a.real()) + "\" y1=\"" + fmt(a.imag()) +
           "\" x2=\"" + fmt(b.real()) + "\" y2=\"" + fmt(b.imag()) + "\"/>\n";
    } else {
      s += "<circle data-face=\"" + std::to_string(f) + "\" cx=\"" + fmt(g.center.real()) + "\" cy=\"" +
           fmt(g.center.imag()) + "\" r=\"" + fmt(g.radius) + "\"/>\n";
    }
  }
  s += "</g>\n<g transform=\"scale(1,-1)\" fill=\"red\">\n";
  const double dot = 2.5 * stroke;
  for (std::size_t v = 0; v < pat.points.size(); ++v) {
    const auto& q = pat.points[v];
    if (q.inf) continue;
    s += "<rect data-vertex=\"" + std::to_string(v) + "\" x=\"" + fmt(q.z.real() - dot) + "\" y=\"" +
         fmt(q.z.imag() - dot) + "\" width=\"" + fmt(2 * dot) + "\" height=\"" + fmt(2 * dot) + "\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

void render_svg(const CirclePattern& pat, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << render_svg(pat);
}

}  // namespace hd
