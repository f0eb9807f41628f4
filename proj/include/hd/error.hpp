#pragma once

#include <stdexcept>
#include <string>

namespace hd {

enum class ErrorKind {
  InvalidParameter,
  InvalidSurgery,
  InvalidInput,
  MustCollapseFirst,
  NoVertex,
  ConstructionFailed,
  NoConvergence,
  InadmissibleAngles,
  UnsupportedRange,
  ResidualTooLarge,
  LemmaInapplicable,
  RTooSmall,
  ConstructionViolated,
  NonTriangular,
  BracketNotFound,
  ExtractionInconsistency,
  AdjacentDualEdges,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hd
