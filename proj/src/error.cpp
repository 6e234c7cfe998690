#include "voxrg/error.hpp"

namespace voxrg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DimsMismatch: return "DimsMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyAtlas: return "EmptyAtlas";
    case ErrorCode::DegenerateStructure: return "DegenerateStructure";
    case ErrorCode::EmptyShape: return "EmptyShape";
    case ErrorCode::DeformationCollapse: return "DeformationCollapse";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::CenterOutsideLesion: return "CenterOutsideLesion";
    case ErrorCode::SynthesisFailed: return "SynthesisFailed";
    case ErrorCode::EmptyPrompt: return "EmptyPrompt";
    case ErrorCode::NonIntegerDownsample: return "NonIntegerDownsample";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::ClassCountMismatch: return "ClassCountMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateReference: return "DegenerateReference";
    case ErrorCode::MissingAnomalyMask: return "MissingAnomalyMask";
    case ErrorCode::MissingUserPrompts: return "MissingUserPrompts";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::BadDtype: return "BadDtype";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::BadPayload: return "BadPayload";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::NonFiniteData: return "NonFiniteData";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace voxrg
