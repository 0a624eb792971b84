#include "mgl/error.hpp"

namespace mgl {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::OddSubset: return "OddSubset";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::IncommensurateFlux: return "IncommensurateFlux";
    case ErrorCode::IncommensuratePotential: return "IncommensuratePotential";
    case ErrorCode::ProbeOnSpectrum: return "ProbeOnSpectrum";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidChain: return "InvalidChain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mgl
