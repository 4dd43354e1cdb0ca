#include "penstat/error.hpp"

namespace penstat {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kNonMonotonicTime: return "NonMonotonicTime";
    case Errc::kFieldOutOfRange: return "FieldOutOfRange";
    case Errc::kTooShort: return "TooShort";
    case Errc::kNoPenDownSamples: return "NoPenDownSamples";
    case Errc::kZeroTimeSpan: return "ZeroTimeSpan";
    case Errc::kCountMismatch: return "CountMismatch";
    case Errc::kMalformedLine: return "MalformedLine";
    case Errc::kBadHeader: return "BadHeader";
    case Errc::kBadAge: return "BadAge";
    case Errc::kDuplicateWriter: return "DuplicateWriter";
    case Errc::kUnmatchedFile: return "UnmatchedFile";
    case Errc::kEmptyCorpus: return "EmptyCorpus";
    case Errc::kIoFailure: return "IoFailure";
    case Errc::kZeroVariance: return "ZeroVariance";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kEmptySignal: return "EmptySignal";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kZeroDuration: return "ZeroDuration";
    case Errc::kTooFewWriters: return "TooFewWriters";
    case Errc::kUnknownFeature: return "UnknownFeature";
    case Errc::kBadSpec: return "BadSpec";
  }
  return "Unknown";
}

namespace {

std::string compose(Errc code, const std::string& detail) {
  std::string s{errc_name(code)};
  if (!detail.empty()) {
    s += ": ";
    s += detail;
  }
  return s;
}

}  // namespace

Error::Error(Errc code, std::string detail)
    : code_(code), what_(compose(code, detail)) {}

Error::Error(Errc code, std::string detail, std::int64_t index)
    : code_(code), index_(index), what_(compose(code, detail)) {}

Error::Error(Errc code, std::string detail, std::int64_t index,
             std::string field)
    : code_(code),
      index_(index),
      field_(std::move(field)),
      what_(compose(code, detail)) {}

}  // namespace penstat
