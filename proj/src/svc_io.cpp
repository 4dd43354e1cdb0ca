#include "penstat/svc_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <utility>

namespace penstat {

namespace {

// Parses one strictly formatted record line: `count` decimal integers
// separated by single spaces, no leading/trailing whitespace.
bool split_ints(std::string_view line, std::span<std::int64_t> out) {
  const char* p = line.data();
  const char* end = line.data() + line.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i > 0) {
      if (p == end || *p != ' ') return false;
      ++p;
    }
    auto [next, ec] = std::from_chars(p, end, out[i]);
    if (ec != std::errc() || next == p) return false;
    p = next;
  }
  return p == end;
}

std::int32_t narrow_field(std::int64_t v, const char* field,
                          std::size_t sample_index) {
  if (v < INT32_MIN || v > INT32_MAX) {
    throw Error(Errc::kFieldOutOfRange,
                std::string(field) + " = " + std::to_string(v) +
                    " does not fit a device field at sample " +
                    std::to_string(sample_index),
                static_cast<std::int64_t>(sample_index), field);
  }
  return static_cast<std::int32_t>(v);
}

}  // namespace

Recording parse_capture(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::kMalformedLine, "missing header line", 1);
  }
  std::int64_t declared = 0;
  {
    std::int64_t v[1];
    if (!split_ints(line, v) || v[0] < 0) {
      throw Error(Errc::kMalformedLine, "header is not a sample count", 1);
    }
    declared = v[0];
  }

  Recording rec;
  // Do not trust the declared count for allocation; a hostile header must
  // not force a huge reserve before any data is seen.
  rec.samples.reserve(static_cast<std::size_t>(
      std::min<std::int64_t>(declared, 1 << 16)));

  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.eof()) break;  // trailing newline artifact
    std::int64_t f[7];
    if (!split_ints(line, f)) {
      throw Error(Errc::kMalformedLine,
                  "expected 7 space-separated integers at line " +
                      std::to_string(line_no),
                  line_no);
    }
    const std::size_t idx = rec.samples.size();
    if (static_cast<std::int64_t>(idx) >= declared) {
      // Keep counting so the mismatch message reports the real total.
      rec.samples.clear();
      std::int64_t actual = static_cast<std::int64_t>(idx) + 1;
      while (std::getline(in, line)) {
        if (line.empty() && in.eof()) break;
        ++actual;
      }
      throw Error(Errc::kCountMismatch,
                  "header declares " + std::to_string(declared) +
                      " samples, file has " + std::to_string(actual));
    }
    Sample s;
    s.x = narrow_field(f[0], "x", idx);
    s.y = narrow_field(f[1], "y", idx);
    s.t = f[2];
    if (f[3] != 0 && f[3] != 1) {
      throw Error(Errc::kFieldOutOfRange,
                  "pen status must be 0 or 1 at sample " + std::to_string(idx),
                  static_cast<std::int64_t>(idx), "pen_status");
    }
    s.pen_down = f[3] == 1;
    s.azimuth = narrow_field(f[4], "azimuth", idx);
    s.altitude = narrow_field(f[5], "altitude", idx);
    s.pressure = narrow_field(f[6], "pressure", idx);
    rec.samples.push_back(s);
  }
  if (static_cast<std::int64_t>(rec.samples.size()) != declared) {
    throw Error(Errc::kCountMismatch,
                "header declares " + std::to_string(declared) +
                    " samples, file has " +
                    std::to_string(rec.samples.size()));
  }
  validate_recording(rec);
  return rec;
}

Recording parse_capture_text(const std::string& text) {
  std::istringstream in(text);
  return parse_capture(in);
}

void write_capture(const Recording& rec, std::ostream& out) {
  validate_recording(rec);
  out << rec.samples.size() << '\n';
  for (const Sample& s : rec.samples) {
    out << s.x << ' ' << s.y << ' ' << s.t << ' ' << (s.pen_down ? 1 : 0)
        << ' ' << s.azimuth << ' ' << s.altitude << ' ' << s.pressure << '\n';
  }
}

std::string write_capture_text(const Recording& rec) {
  std::ostringstream out;
  write_capture(rec, out);
  return out.str();
}

char sex_code(Sex sex) {
  switch (sex) {
    case Sex::kMale: return 'M';
    case Sex::kFemale: return 'F';
    case Sex::kUnspecified: return 'U';
  }
  return 'U';
}

Sex sex_from_code(char code) {
  switch (code) {
    case 'M': return Sex::kMale;
    case 'F': return Sex::kFemale;
    case 'U': return Sex::kUnspecified;
  }
  throw Error(Errc::kMalformedLine,
              std::string("unknown sex code '") + code + "'");
}

std::vector<WriterMeta> parse_metadata(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "writer_id,age,sex,session") {
    throw Error(Errc::kBadHeader,
                "expected header \"writer_id,age,sex,session\"");
  }
  std::vector<WriterMeta> rows;
  std::map<std::pair<std::string, int>, std::size_t> seen;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.eof()) break;

    std::string_view rest(line);
    std::string fields[4];
    for (int i = 0; i < 4; ++i) {
      auto comma = rest.find(',');
      if (i < 3) {
        if (comma == std::string_view::npos) {
          throw Error(Errc::kMalformedLine,
                      "expected 4 comma-separated fields at line " +
                          std::to_string(line_no),
                      line_no);
        }
        fields[i] = std::string(rest.substr(0, comma));
        rest.remove_prefix(comma + 1);
      } else {
        if (comma != std::string_view::npos) {
          throw Error(Errc::kMalformedLine,
                      "too many fields at line " + std::to_string(line_no),
                      line_no);
        }
        fields[i] = std::string(rest);
      }
    }

    WriterMeta m;
    m.writer_id = fields[0];
    if (m.writer_id.empty()) {
      throw Error(Errc::kMalformedLine,
                  "empty writer_id at line " + std::to_string(line_no),
                  line_no);
    }

    int age = 0;
    auto [aend, aec] = std::from_chars(
        fields[1].data(), fields[1].data() + fields[1].size(), age);
    if (aec != std::errc() || aend != fields[1].data() + fields[1].size() ||
        age < 1 || age > 130) {
      throw Error(Errc::kBadAge,
                  "age \"" + fields[1] + "\" at line " +
                      std::to_string(line_no),
                  line_no);
    }
    m.age = age;

    if (fields[2].size() != 1) {
      throw Error(Errc::kMalformedLine,
                  "sex must be one of M,F,U at line " + std::to_string(line_no),
                  line_no);
    }
    try {
      m.sex = sex_from_code(fields[2][0]);
    } catch (const Error&) {
      throw Error(Errc::kMalformedLine,
                  "sex must be one of M,F,U at line " + std::to_string(line_no),
                  line_no);
    }

    int session = 0;
    auto [send, sec] = std::from_chars(
        fields[3].data(), fields[3].data() + fields[3].size(), session);
    if (sec != std::errc() || send != fields[3].data() + fields[3].size() ||
        session < 0) {
      throw Error(Errc::kMalformedLine,
                  "bad session \"" + fields[3] + "\" at line " +
                      std::to_string(line_no),
                  line_no);
    }
    m.session = session;

    auto key = std::make_pair(m.writer_id, m.session);
    if (!seen.emplace(key, rows.size()).second) {
      throw Error(Errc::kDuplicateWriter,
                  "duplicate (" + m.writer_id + ", session " +
                      std::to_string(m.session) + ") at line " +
                      std::to_string(line_no),
                  line_no);
    }
    rows.push_back(std::move(m));
  }
  return rows;
}

std::vector<WriterMeta> parse_metadata_text(const std::string& text) {
  std::istringstream in(text);
  return parse_metadata(in);
}

void write_metadata(const std::vector<WriterMeta>& rows, std::ostream& out) {
  out << "writer_id,age,sex,session\n";
  for (const WriterMeta& m : rows) {
    out << m.writer_id << ',' << m.age << ',' << sex_code(m.sex) << ','
        << m.session << '\n';
  }
}

namespace {

// "<writer_id>_s<session>.svc" -> (writer_id, session); the session marker
// is the last "_s" followed by digits only.
bool parse_capture_name(const std::string& stem, std::string& writer_id,
                        int& session) {
  auto pos = stem.rfind("_s");
  if (pos == std::string::npos || pos == 0) return false;
  std::string_view digits = std::string_view(stem).substr(pos + 2);
  if (digits.empty()) return false;
  int value = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                   value);
  if (ec != std::errc() || end != digits.data() + digits.size() || value < 0) {
    return false;
  }
  writer_id = stem.substr(0, pos);
  session = value;
  return true;
}

}  // namespace

CorpusIndex scan_corpus(const std::filesystem::path& dir,
                        const std::vector<WriterMeta>& meta, ScanMode mode) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(Errc::kIoFailure, "not a directory: " + dir.string());
  }

  std::map<std::pair<std::string, int>, const WriterMeta*> by_key;
  for (const WriterMeta& m : meta) {
    by_key[{m.writer_id, m.session}] = &m;
  }

  CorpusIndex index;
  index.source_dir = dir;
  std::size_t svc_files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".svc") {
      continue;
    }
    ++svc_files;
    const std::string stem = entry.path().stem().string();
    std::string writer_id;
    int session = 0;
    if (!parse_capture_name(stem, writer_id, session)) {
      if (mode == ScanMode::kStrict) {
        throw Error(Errc::kUnmatchedFile,
                    "cannot read writer/session from filename " +
                        entry.path().filename().string());
      }
      index.warnings.push_back("skipped " + entry.path().filename().string() +
                               ": unrecognized filename");
      continue;
    }
    auto it = by_key.find({writer_id, session});
    if (it == by_key.end()) {
      if (mode == ScanMode::kStrict) {
        throw Error(Errc::kUnmatchedFile,
                    "no metadata row for " + writer_id + " session " +
                        std::to_string(session) + " (" +
                        entry.path().filename().string() + ")");
      }
      index.warnings.push_back("skipped " + entry.path().filename().string() +
                               ": no metadata row for (" + writer_id + ", s" +
                               std::to_string(session) + ")");
      continue;
    }
    index.entries.push_back(CorpusEntry{writer_id, it->second->age,
                                        it->second->sex, session,
                                        entry.path()});
  }
  if (svc_files == 0) {
    throw Error(Errc::kEmptyCorpus,
                "no .svc files under " + dir.string());
  }
  // Filesystem enumeration order is not deterministic; the index order is.
  std::sort(index.entries.begin(), index.entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) {
              return std::tie(a.writer_id, a.session) <
                     std::tie(b.writer_id, b.session);
            });
  std::sort(index.warnings.begin(), index.warnings.end());
  return index;
}

}  // namespace penstat
