#pragma once
#include <stdexcept>
#include <string>

namespace lapgeo {

enum class ErrorCode {
  DegenerateMetric,
  DegenerateCurve,
  NormalUndefined,
  NotCompact,
  RankCollapse,
  RankTooHigh,
  LaplaceMapSingular,
  MeanCurvatureVanishes,
  NonConstantMeanCurvature,
  GaussMapDegenerate,
  OddAmbientDim,
  NotClosed,
  NotUnitSpeed,
  Not2Type,
  BadOrder,
  UnknownGenerator,
  ParamOutOfRange,
  SingularDomain,
  DiscriminantNegative,
  BlowUp,
  BadInput,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace lapgeo
