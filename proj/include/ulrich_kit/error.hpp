#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ulrich_kit {

enum class ErrorKind {
  Parse,
  MalformedModel,
  UnsupportedModel,
  UnsupportedQuadricDim,
  UnknownSlopeZero,
  NoOracle,
  Indeterminate,
  DegenerateSystem,
  ModelMismatch,
  IncompleteTable,
  UnsupportedProduct,
  NoRestrictionRule,
  DimensionMismatch,
  ModeDisagreement,
  NotUlrich,
  NonDivisibleRank,
  NoDualRule,
  ZeroExt,
  NotUlrichInput,
  DegenerateExtension,
  UnknownK0Rank,
  NonpositiveT,
  MissingConvention,
  NoSlope,
  EmptyGrid,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::MalformedModel: return "MalformedModel";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::UnsupportedQuadricDim: return "UnsupportedQuadricDim";
    case ErrorKind::UnknownSlopeZero: return "UnknownSlopeZero";
    case ErrorKind::NoOracle: return "NoOracle";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::DegenerateSystem: return "DegenerateSystem";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::IncompleteTable: return "IncompleteTable";
    case ErrorKind::UnsupportedProduct: return "UnsupportedProduct";
    case ErrorKind::NoRestrictionRule: return "NoRestrictionRule";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ModeDisagreement: return "ModeDisagreement";
    case ErrorKind::NotUlrich: return "NotUlrich";
    case ErrorKind::NonDivisibleRank: return "NonDivisibleRank";
    case ErrorKind::NoDualRule: return "NoDualRule";
    case ErrorKind::ZeroExt: return "ZeroExt";
    case ErrorKind::NotUlrichInput: return "NotUlrichInput";
    case ErrorKind::DegenerateExtension: return "DegenerateExtension";
    case ErrorKind::UnknownK0Rank: return "UnknownK0Rank";
    case ErrorKind::NonpositiveT: return "NonpositiveT";
    case ErrorKind::MissingConvention: return "MissingConvention";
    case ErrorKind::NoSlope: return "NoSlope";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable kind; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ulrich_kit
