#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "hd/geom.hpp"

namespace hd::detail {

inline Mink unit(const Mink& x) { return mink_scale(x, 1.0 / std::sqrt(std::abs(mink_dot(x, x)))); }

/// Tangency point of two touching circles as a null vector with x[3] > 0,
/// scaled to x[3] = 2.
inline Mink touch(const Mink& a, const Mink& b) {
  const Mink t = mink_add(a, b);
  return mink_scale(t, 2.0 / t[3]);
}

/// The two unit normals nu with <nu, a> = <nu, b> = <nu, c> = -1.
std::array<Mink, 2> apollonius(const Mink& a, const Mink& b, const Mink& c);

/// Solution whose contact with `a` lies on the positive side of `region`.
Mink apollonius_toward(const Mink& a, const Mink& b, const Mink& c, const Mink& region);

/// m evenly spread null vectors on the circle nu.
std::vector<Mink> ring(const Mink& nu, int m);

}  // namespace hd::detail
