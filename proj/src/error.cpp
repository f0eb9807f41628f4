#include "hd/error.hpp"

namespace hd {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidSurgery: return "invalid-surgery";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::MustCollapseFirst: return "must-collapse-first";
    case ErrorKind::NoVertex: return "no-vertex";
    case ErrorKind::ConstructionFailed: return "construction-failed";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::InadmissibleAngles: return "inadmissible-angles";
    case ErrorKind::UnsupportedRange: return "unsupported-range";
    case ErrorKind::ResidualTooLarge: return "residual-too-large";
    case ErrorKind::LemmaInapplicable: return "lemma-inapplicable";
    case ErrorKind::RTooSmall: return "r-too-small";
    case ErrorKind::ConstructionViolated: return "construction-violated";
    case ErrorKind::NonTriangular: return "non-triangular";
    case ErrorKind::BracketNotFound: return "bracket-not-found";
    case ErrorKind::ExtractionInconsistency: return "extraction-inconsistency";
    case ErrorKind::AdjacentDualEdges: return "adjacent-dual-edges";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace hd
