#ifndef PENSTAT_SVC_IO_HPP
#define PENSTAT_SVC_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "penstat/capture.hpp"

namespace penstat {

// Capture file layout (extension .svc):
//   line 1:      N                      sample count, ASCII decimal
//   lines 2..N+1: X Y T S AZ AL P      seven integers, single spaces, '\n'
// X/Y position in tablet units, T milliseconds, S pen status 0|1,
// AZ azimuth [0,3599], AL altitude [0,900], P pressure [0,1024].

// Parses a capture stream and validates the result. Throws CountMismatch,
// MalformedLine, or any validate_recording error.
Recording parse_capture(std::istream& in);
Recording parse_capture_text(const std::string& text);

// Canonical form: single-space separators, '\n' after every line.
// parse_capture(write_capture(rec)) reproduces rec byte-for-byte.
void write_capture(const Recording& rec, std::ostream& out);
std::string write_capture_text(const Recording& rec);

// Metadata CSV: header "writer_id,age,sex,session", sex in {M,F,U}.
// Throws BadHeader, BadAge(row), DuplicateWriter, MalformedLine(row).
std::vector<WriterMeta> parse_metadata(std::istream& in);
std::vector<WriterMeta> parse_metadata_text(const std::string& text);

void write_metadata(const std::vector<WriterMeta>& rows, std::ostream& out);

enum class ScanMode { kStrict, kLenient };

struct CorpusEntry {
  std::string writer_id;
  int age = 0;
  Sex sex = Sex::kUnspecified;
  int session = 0;
  std::filesystem::path path;
};

struct CorpusIndex {
  std::filesystem::path source_dir;
  std::vector<CorpusEntry> entries;  // sorted by (writer_id, session)
  std::vector<std::string> warnings;
};

// Pairs every "<writer_id>_s<session>.svc" file under dir with its metadata
// row. Files without a matching row fail the scan in strict mode and are
// recorded as warnings in lenient mode. Throws EmptyCorpus when dir holds no
// .svc files at all, UnmatchedFile in strict mode, IoFailure.
CorpusIndex scan_corpus(const std::filesystem::path& dir,
                        const std::vector<WriterMeta>& meta, ScanMode mode);

char sex_code(Sex sex);
Sex sex_from_code(char code);  // throws MalformedLine on unknown codes

}  // namespace penstat

#endif  // PENSTAT_SVC_IO_HPP
