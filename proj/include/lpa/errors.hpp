#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

enum class ErrKind {
  DuplicateId,
  DanglingEndpoint,
  NotComposable,
  NotACycleOfGraph,
  RangeMismatch,
  SyntaxError,
  UnknownId,
  NonInvertibleDenominator,
  DegreeTooLarge,
  ZeroConstantTerm,
  NotIrreducible,
  NotBasicIrreducible,
  DegreeTooSmall,
  MixedExtensions,
  DivisionByZero,
  NotBasic,
  NotARoot,
  FieldMismatch,
  GraphMismatch,
  NonInvertibleScale,
  DescriptorMismatch,
  NonExclusiveCycle,
  TruncationTooSmall,
  UsageError,
};

inline const char* err_name(ErrKind k) {
  switch (k) {
    case ErrKind::DuplicateId: return "DuplicateId";
    case ErrKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrKind::NotComposable: return "NotComposable";
    case ErrKind::NotACycleOfGraph: return "NotACycleOfGraph";
    case ErrKind::RangeMismatch: return "RangeMismatch";
    case ErrKind::SyntaxError: return "SyntaxError";
    case ErrKind::UnknownId: return "UnknownId";
    case ErrKind::NonInvertibleDenominator: return "NonInvertibleDenominator";
    case ErrKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrKind::NotIrreducible: return "NotIrreducible";
    case ErrKind::NotBasicIrreducible: return "NotBasicIrreducible";
    case ErrKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrKind::MixedExtensions: return "MixedExtensions";
    case ErrKind::DivisionByZero: return "DivisionByZero";
    case ErrKind::NotBasic: return "NotBasic";
    case ErrKind::NotARoot: return "NotARoot";
    case ErrKind::FieldMismatch: return "FieldMismatch";
    case ErrKind::GraphMismatch: return "GraphMismatch";
    case ErrKind::NonInvertibleScale: return "NonInvertibleScale";
    case ErrKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrKind::NonExclusiveCycle: return "NonExclusiveCycle";
    case ErrKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& what)
      : std::runtime_error(std::string(err_name(kind)) + ": " + what), kind_(kind) {}

  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace lpa
