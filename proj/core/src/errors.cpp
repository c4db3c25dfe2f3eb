#include "vvlab/errors.hpp"

namespace vvl {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::WidthTooLarge: return "WidthTooLarge";
    case ErrorKind::UnstableStep: return "UnstableStep";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::GridTooNarrow: return "GridTooNarrow";
    case ErrorKind::UnsupportedTestFunction: return "UnsupportedTestFunction";
    case ErrorKind::NonConvexFlux: return "NonConvexFlux";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NegativeTestFunction: return "NegativeTestFunction";
    case ErrorKind::ProbeOutsideDomain: return "ProbeOutsideDomain";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace vvl
