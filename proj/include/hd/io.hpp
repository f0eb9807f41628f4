#pragma once

#include <string>

#include "hd/combin.hpp"
#include "hd/dual.hpp"
#include "hd/pattern.hpp"
#include "hd/signed.hpp"

namespace hd {

/// printf("%.12g"), the format of every number in reports.
std::string fmt12(double x);

/// {"vertices": N, "faces": [[...], ...]}
std::string polyhedron_json(const CombPolyhedron& p);
CombPolyhedron polyhedron_from_json(const std::string& text);

/// Adds "signs": {"u-v": "+" | "-" | "0"} with u < v.
std::string signed_json(const SignedPolyhedron& sp);
SignedPolyhedron signed_from_json(const std::string& text);

/// Circles per face (lines as [nx, ny, c] for nx x + ny y > c, complements
/// of disks marked "outer"), ideal vertices and the residual. Numbers are
/// rounded to 12 digits. Write only.
std::string pattern_json(const CirclePattern& pat);

/// Exact round trip.
std::string cone_surface_json(const ConeSurface& s);
ConeSurface cone_surface_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hd
