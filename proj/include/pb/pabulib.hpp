#pragma once

#include "pb/core.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pb {

enum class PbDiagnostic {
  MissingSection,
  MissingMetaKey,
  UnsupportedVoteType,
  CountMismatch,
  BadInteger,
  DuplicateId,
  DanglingVoteReference,
  MalformedRow,
};

std::string_view to_string(PbDiagnostic code);

class PbParseError : public std::runtime_error {
 public:
  PbParseError(PbDiagnostic code, std::size_t line, std::size_t column,
               const std::string& message);

  PbDiagnostic code() const { return code_; }
  std::size_t line() const { return line_; }      // 1-based
  std::size_t column() const { return column_; }  // 1-based

 private:
  PbDiagnostic code_;
  std::size_t line_;
  std::size_t column_;
};

struct PbProjectRow {
  std::string id;
  std::int64_t cost = 0;
  // Extra columns beyond project_id/cost, as (column name, raw value).
  std::vector<std::pair<std::string, std::string>> extras;

  bool operator==(const PbProjectRow&) const = default;
};

struct PbVoteRow {
  std::string voter_id;
  std::vector<std::string> approved;

  bool operator==(const PbVoteRow&) const = default;
};

// Structured form of a .pb election file: META/PROJECTS/VOTES sections with
// semicolon-separated rows. Unknown meta keys and extra project columns are
// preserved but otherwise ignored.
struct PbFile {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<PbProjectRow> projects;
  std::vector<PbVoteRow> votes;

  const std::string* meta_value(std::string_view key) const;

  bool operator==(const PbFile&) const = default;
};

// Parses and validates a .pb document. Any malformed input raises a
// PbParseError with a line/column diagnostic; this function never crashes on
// arbitrary bytes.
PbFile parse_pb(std::string_view text);

// Lossless mapping onto the rule engine's types; voter order is file order.
std::pair<Instance, Profile> to_instance_profile(const PbFile& file);

// Canonical emission: sections META/PROJECTS/VOTES, semicolon-separated
// fields, header rows "project_id;cost" and "voter_id;vote", votes as
// comma-separated ids, projects in instance order, voters numbered from 1.
// Structural meta keys are computed; extra_meta entries are appended.
std::string write_pb(
    const Instance& inst, const Profile& prof,
    const std::vector<std::pair<std::string, std::string>>& extra_meta = {});

}  // namespace pb
