#ifndef PENSTAT_ERROR_HPP
#define PENSTAT_ERROR_HPP

#include <cstdint>
#include <exception>
#include <string>
#include <string_view>

namespace penstat {

// Every failure the library reports, one code per distinguishable cause.
// The CLI maps these onto exit-code classes, so keep the grouping stable.
enum class Errc {
  // recording validation
  kNonMonotonicTime,
  kFieldOutOfRange,
  kTooShort,
  kNoPenDownSamples,
  kZeroTimeSpan,
  // capture / metadata parsing
  kCountMismatch,
  kMalformedLine,
  kBadHeader,
  kBadAge,
  kDuplicateWriter,
  // corpus scanning
  kUnmatchedFile,
  kEmptyCorpus,
  kIoFailure,
  // statistics
  kZeroVariance,
  kLengthMismatch,
  kEmptySignal,
  kEmptyInput,
  kZeroDuration,
  kTooFewWriters,
  kUnknownFeature,
  // synthesis
  kBadSpec,
};

std::string_view errc_name(Errc code);

class Error : public std::exception {
 public:
  Error(Errc code, std::string detail);
  Error(Errc code, std::string detail, std::int64_t index);
  Error(Errc code, std::string detail, std::int64_t index, std::string field);

  Errc code() const { return code_; }
  // Sample/line/row index the error points at, -1 when not applicable.
  std::int64_t index() const { return index_; }
  const std::string& field() const { return field_; }
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  Errc code_;
  std::int64_t index_ = -1;
  std::string field_;
  std::string what_;
};

}  // namespace penstat

#endif  // PENSTAT_ERROR_HPP
