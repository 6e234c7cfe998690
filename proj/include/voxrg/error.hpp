#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace voxrg {

enum class ErrorCode {
  // volume
  UnknownLabel,
  DimsMismatch,
  InvalidArgument,
  // synthlesion
  EmptyAtlas,
  DegenerateStructure,
  EmptyShape,
  DeformationCollapse,
  EmptyRegion,
  DegenerateInterval,
  CenterOutsideLesion,
  SynthesisFailed,
  // roiselect
  EmptyPrompt,
  NonIntegerDownsample,
  // segmetrics
  EmptyMask,
  ClassCountMismatch,
  // textmetrics
  EmptyInput,
  DegenerateReference,
  // report
  MissingAnomalyMask,
  MissingUserPrompts,
  // vio
  IoError,
  BadMagic,
  BadDtype,
  BadHeader,
  BadPayload,
  TruncatedPayload,
  NonFiniteData,
  // config / json
  BadConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace voxrg
