#include "lapgeo/errors.hpp"

namespace lapgeo {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::NormalUndefined: return "NormalUndefined";
    case ErrorCode::NotCompact: return "NotCompact";
    case ErrorCode::RankCollapse: return "RankCollapse";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::LaplaceMapSingular: return "LaplaceMapSingular";
    case ErrorCode::MeanCurvatureVanishes: return "MeanCurvatureVanishes";
    case ErrorCode::NonConstantMeanCurvature: return "NonConstantMeanCurvature";
    case ErrorCode::GaussMapDegenerate: return "GaussMapDegenerate";
    case ErrorCode::OddAmbientDim: return "OddAmbientDim";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorCode::Not2Type: return "Not2Type";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::SingularDomain: return "SingularDomain";
    case ErrorCode::DiscriminantNegative: return "DiscriminantNegative";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Error";
}

}  // namespace lapgeo
