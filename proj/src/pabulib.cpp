#include "pb/pabulib.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace pb {
namespace {

struct Line {
  std::size_t number = 0;  // 1-based
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    lines.push_back({number, line});
    ++number;
    if (end == text.size()) {
      break;
    }
    start = end + 1;
  }
  while (!lines.empty() && lines.back().text.empty()) {
    lines.pop_back();
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view text, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      fields.push_back(text.substr(start));
      return fields;
    }
    fields.push_back(text.substr(start, end - start));
    start = end + 1;
  }
}

std::int64_t parse_positive_int(std::string_view field, std::size_t line,
                                std::size_t column, std::string_view what) {
  std::int64_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw PbParseError(PbDiagnostic::BadInteger, line, column,
                       std::string(what) + " must be an integer, got '" +
                           std::string(field) + "'");
  }
  if (value < 1) {
    throw PbParseError(PbDiagnostic::BadInteger, line, column,
                       std::string(what) + " must be positive, got '" +
                           std::string(field) + "'");
  }
  return value;
}

std::int64_t parse_count(std::string_view field, std::size_t line,
                         std::size_t column, std::string_view what) {
  std::int64_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end || value < 0) {
    throw PbParseError(PbDiagnostic::BadInteger, line, column,
                       std::string(what) + " must be a nonnegative integer, " +
                           "got '" + std::string(field) + "'");
  }
  return value;
}

std::size_t field_column(std::string_view line, std::string_view field) {
  if (field.data() >= line.data() &&
      field.data() <= line.data() + line.size()) {
    return static_cast<std::size_t>(field.data() - line.data()) + 1;
  }
  return 1;
}

}  // namespace

std::string_view to_string(PbDiagnostic code) {
  switch (code) {
    case PbDiagnostic::MissingSection:
      return "missing-section";
    case PbDiagnostic::MissingMetaKey:
      return "missing-meta-key";
    case PbDiagnostic::UnsupportedVoteType:
      return "unsupported-vote-type";
    case PbDiagnostic::CountMismatch:
      return "count-mismatch";
    case PbDiagnostic::BadInteger:
      return "bad-integer";
    case PbDiagnostic::DuplicateId:
      return "duplicate-id";
    case PbDiagnostic::DanglingVoteReference:
      return "dangling-vote-reference";
    case PbDiagnostic::MalformedRow:
      return "malformed-row";
  }
  return "?";
}

PbParseError::PbParseError(PbDiagnostic code, std::size_t line,
                           std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message + " [" +
                         std::string(to_string(code)) + "]"),
      code_(code),
      line_(line),
      column_(column) {}

const std::string* PbFile::meta_value(std::string_view key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) {
      return &v;
    }
  }
  return nullptr;
}

PbFile parse_pb(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);

  enum class Section { None, Meta, Projects, Votes };
  Section section = Section::None;
  bool seen_meta = false, seen_projects = false, seen_votes = false;
  bool expect_header = false;

  PbFile file;
  std::vector<std::string> project_header;
  std::vector<std::string> vote_header;
  std::map<std::string, std::size_t> meta_line;
  std::set<std::string> project_ids;
  std::map<std::string, std::size_t> vote_lines;

  for (const Line& line : lines) {
    if (line.text.empty()) {
      continue;
    }
    if (line.text == "META" || line.text == "PROJECTS" ||
        line.text == "VOTES") {
      if (line.text == "META") {
        section = Section::Meta;
        seen_meta = true;
      } else if (line.text == "PROJECTS") {
        section = Section::Projects;
        seen_projects = true;
      } else {
        section = Section::Votes;
        seen_votes = true;
      }
      expect_header = section != Section::Meta;
      continue;
    }
    if (section == Section::None) {
      throw PbParseError(PbDiagnostic::MissingSection, line.number, 1,
                         "content before the META section");
    }

    const auto fields = split_fields(line.text, ';');

    if (expect_header) {
      std::vector<std::string> header;
      header.reserve(fields.size());
      for (std::string_view f : fields) {
        header.emplace_back(f);
      }
      const bool projects = section == Section::Projects;
      const std::string required = projects ? "project_id" : "voter_id";
      if (header.empty() || header.front() != required) {
        throw PbParseError(PbDiagnostic::MalformedRow, line.number, 1,
                           "section header must start with '" + required +
                               "', got '" + std::string(line.text) + "'");
      }
      (projects ? project_header : vote_header) = std::move(header);
      expect_header = false;
      continue;
    }

    switch (section) {
      case Section::Meta: {
        if (fields.size() < 2) {
          throw PbParseError(PbDiagnostic::MalformedRow, line.number, 1,
                             "meta rows need 'key;value'");
        }
        if (fields[0] == "key") {
          break;  // header row of the META section
        }
        file.meta.emplace_back(std::string(fields[0]), std::string(fields[1]));
        meta_line.emplace(std::string(fields[0]), line.number);
        break;
      }
      case Section::Projects: {
        PbProjectRow row;
        bool have_cost = false;
        for (std::size_t i = 0;
             i < fields.size() && i < project_header.size(); ++i) {
          if (project_header[i] == "project_id") {
            row.id = std::string(fields[i]);
          } else if (project_header[i] == "cost") {
            row.cost = parse_positive_int(fields[i], line.number,
                                          field_column(line.text, fields[i]),
                                          "project cost");
            have_cost = true;
          } else {
            row.extras.emplace_back(project_header[i], std::string(fields[i]));
          }
        }
        if (row.id.empty() || !have_cost) {
          throw PbParseError(PbDiagnostic::MalformedRow, line.number, 1,
                             "project rows need project_id and cost");
        }
        if (!project_ids.insert(row.id).second) {
          throw PbParseError(PbDiagnostic::DuplicateId, line.number, 1,
                             "duplicate project id '" + row.id + "'");
        }
        file.projects.push_back(std::move(row));
        break;
      }
      case Section::Votes: {
        PbVoteRow row;
        std::string_view vote_field;
        for (std::size_t i = 0; i < fields.size() && i < vote_header.size();
             ++i) {
          if (vote_header[i] == "voter_id") {
            row.voter_id = std::string(fields[i]);
          } else if (vote_header[i] == "vote") {
            vote_field = fields[i];
          }
        }
        if (row.voter_id.empty()) {
          throw PbParseError(PbDiagnostic::MalformedRow, line.number, 1,
                             "vote rows need a voter_id");
        }
        if (!vote_lines.emplace(row.voter_id, line.number).second) {
          throw PbParseError(PbDiagnostic::DuplicateId, line.number, 1,
                             "duplicate voter id '" + row.voter_id + "'");
        }
        if (!vote_field.empty()) {
          for (std::string_view id : split_fields(vote_field, ',')) {
            if (project_ids.find(std::string(id)) == project_ids.end()) {
              throw PbParseError(PbDiagnostic::DanglingVoteReference,
                                 line.number, field_column(line.text, id),
                                 "vote of '" + row.voter_id +
                                     "' references unknown project '" +
                                     std::string(id) + "'");
            }
            row.approved.emplace_back(id);
          }
        }
        file.votes.push_back(std::move(row));
        break;
      }
      case Section::None:
        break;
    }
  }

  const std::size_t end_line = lines.empty() ? 1 : lines.back().number;
  if (!seen_meta) {
    throw PbParseError(PbDiagnostic::MissingSection, end_line, 1,
                       "META section not found");
  }
  if (!seen_projects) {
    throw PbParseError(PbDiagnostic::MissingSection, end_line, 1,
                       "PROJECTS section not found");
  }
  if (!seen_votes) {
    throw PbParseError(PbDiagnostic::MissingSection, end_line, 1,
                       "VOTES section not found");
  }

  auto line_of = [&](const char* key) {
    auto it = meta_line.find(key);
    return it == meta_line.end() ? std::size_t{1} : it->second;
  };
  for (const char* key : {"num_projects", "num_votes", "budget", "vote_type"}) {
    if (file.meta_value(key) == nullptr) {
      throw PbParseError(PbDiagnostic::MissingMetaKey, 1, 1,
                         "meta key '" + std::string(key) + "' is required");
    }
  }
  if (*file.meta_value("vote_type") != "approval") {
    throw PbParseError(PbDiagnostic::UnsupportedVoteType,
                       line_of("vote_type"), 1,
                       "vote_type '" + *file.meta_value("vote_type") +
                           "' is not supported; only 'approval' is");
  }
  parse_positive_int(*file.meta_value("budget"), line_of("budget"), 1,
                     "budget");

  const std::int64_t declared_projects = parse_positive_int(
      *file.meta_value("num_projects"), line_of("num_projects"), 1,
      "num_projects");
  if (declared_projects != static_cast<std::int64_t>(file.projects.size())) {
    throw PbParseError(
        PbDiagnostic::CountMismatch, line_of("num_projects"), 1,
        "num_projects is " + std::to_string(declared_projects) + " but " +
            std::to_string(file.projects.size()) + " project rows were found");
  }
  const std::int64_t declared_votes = parse_count(
      *file.meta_value("num_votes"), line_of("num_votes"), 1, "num_votes");
  if (declared_votes != static_cast<std::int64_t>(file.votes.size())) {
    throw PbParseError(PbDiagnostic::CountMismatch, line_of("num_votes"), 1,
                       "num_votes is " + std::to_string(declared_votes) +
                           " but " + std::to_string(file.votes.size()) +
                           " vote rows were found");
  }

  return file;
}

std::pair<Instance, Profile> to_instance_profile(const PbFile& file) {
  std::vector<Project> projects;
  projects.reserve(file.projects.size());
  for (const PbProjectRow& row : file.projects) {
    projects.push_back({row.id, row.cost});
  }
  Instance inst(std::move(projects),
                parse_positive_int(*file.meta_value("budget"), 1, 1, "budget"));
  Profile prof;
  prof.ballots.reserve(file.votes.size());
  for (const PbVoteRow& row : file.votes) {
    prof.ballots.push_back(make_ballot(inst, row.approved));
  }
  return {std::move(inst), std::move(prof)};
}

std::string write_pb(
    const Instance& inst, const Profile& prof,
    const std::vector<std::pair<std::string, std::string>>& extra_meta) {
  std::ostringstream out;
  out << "META\n";
  out << "key;value\n";
  out << "num_projects;" << inst.size() << '\n';
  out << "num_votes;" << prof.size() << '\n';
  out << "budget;" << inst.budget() << '\n';
  out << "vote_type;approval\n";
  for (const auto& [key, value] : extra_meta) {
    if (key == "num_projects" || key == "num_votes" || key == "budget" ||
        key == "vote_type") {
      continue;  // structural keys are computed
    }
    out << key << ';' << value << '\n';
  }
  out << "PROJECTS\n";
  out << "project_id;cost\n";
  for (const Project& p : inst.projects()) {
    out << p.id << ';' << p.cost << '\n';
  }
  out << "VOTES\n";
  out << "voter_id;vote\n";
  for (std::size_t i = 0; i < prof.size(); ++i) {
    out << (i + 1) << ';';
    Mask m = prof.ballots[i].approved;
    bool first = true;
    while (m != 0) {
      const int p = std::countr_zero(m);
      if (!first) {
        out << ',';
      }
      first = false;
      out << inst.projects()[static_cast<std::size_t>(p)].id;
      m &= m - 1;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pb
