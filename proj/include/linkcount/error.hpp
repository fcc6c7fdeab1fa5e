#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linkcount {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  Overflow,
  NotADiscriminant,
  RankDeficient,
  NotASquare,
  AlgebraMismatch,
  InvalidTriple,
  NotNice,
  LevelNotAllowed,
  UndefinedEpsilon,
  InvalidOrder,
  UnsupportedByCorollary,
  UnsupportedLevel,
  NoSignDefined,
  NoTransversalIntersection,
  PrecisionInsufficient,
  InternalError,
};

inline std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotADiscriminant: return "NotADiscriminant";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::InvalidTriple: return "InvalidTriple";
    case ErrorCode::NotNice: return "NotNice";
    case ErrorCode::LevelNotAllowed: return "LevelNotAllowed";
    case ErrorCode::UndefinedEpsilon: return "UndefinedEpsilon";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::UnsupportedByCorollary: return "UnsupportedByCorollary";
    case ErrorCode::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorCode::NoSignDefined: return "NoSignDefined";
    case ErrorCode::NoTransversalIntersection: return "NoTransversalIntersection";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace linkcount
