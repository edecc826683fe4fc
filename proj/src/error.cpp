#include "seds/error.hpp"

namespace seds {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EvenSize: return "EvenSize";
    case ErrorCode::NonPositiveParam: return "NonPositiveParam";
    case ErrorCode::InvalidSpot: return "InvalidSpot";
    case ErrorCode::InvalidImage: return "InvalidImage";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::SpotLargerThanROI: return "SpotLargerThanROI";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::SpotMismatch: return "SpotMismatch";
    case ErrorCode::MarginTooSmall: return "MarginTooSmall";
    case ErrorCode::NotExplicit: return "NotExplicit";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ZeroMeanReference: return "ZeroMeanReference";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace seds
