#include "quantdiv/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "quantdiv/error.hpp"

namespace quantdiv {

namespace {

struct Row {
  std::size_t line;
  std::string case_id;
  std::vector<std::string> fields;
};

struct Table {
  RowMode mode = RowMode::Probs;
  std::optional<std::string> system;
  std::size_t header_line = 0;
  std::vector<std::string> labels;
  std::vector<Row> rows;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string field;
  while (ss >> field) out.push_back(field);
  return out;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

void apply_directive(Table& t, const std::string& body, std::size_t line) {
  const auto colon = body.find(':');
  if (colon == std::string::npos) return;
  const std::string key = trim(body.substr(0, colon));
  const std::string value = trim(body.substr(colon + 1));
  if (key == "mode") {
    if (value == "counts") {
      t.mode = RowMode::Counts;
    } else if (value == "probs") {
      t.mode = RowMode::Probs;
    } else {
      throw Error(ErrorCode::ParseError, "unknown mode '" + value + "'").with_line(line);
    }
  } else if (key == "system") {
    t.system = value;
  }
}

Table read_table(std::istream& in) {
  Table t;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    if (stripped.front() == '#') {
      if (t.header_line == 0) apply_directive(t, stripped.substr(1), line);
      continue;
    }
    auto fields = split_fields(stripped);
    if (t.header_line == 0) {
      if (fields.front() != "case_id") {
        throw Error(ErrorCode::ParseError, "header must start with 'case_id'").with_line(line);
      }
      t.header_line = line;
      t.labels.assign(fields.begin() + 1, fields.end());
      if (t.labels.size() < 2) {
        throw Error(ErrorCode::TooFewClasses, "header names fewer than 2 classes").with_line(line);
      }
      continue;
    }
    Row row{line, fields.front(), {fields.begin() + 1, fields.end()}};
    if (row.fields.size() != t.labels.size()) {
      throw Error(ErrorCode::InconsistentClassCount,
                  std::to_string(row.fields.size()) + " values under a " +
                      std::to_string(t.labels.size()) + "-class header")
          .with_line(line)
          .with_case(row.case_id);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header_line == 0) throw Error(ErrorCode::ParseError, "missing header row");
  return t;
}

template <typename T>
T parse_number(const std::string& text, const Row& row) {
  T value{};
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::ParseError, "not a valid number: '" + text + "'")
        .with_line(row.line)
        .with_case(row.case_id);
  }
  return value;
}

struct ParsedRow {
  Distribution dist;
  std::optional<std::vector<std::uint64_t>> votes;
};

ParsedRow parse_row(const Row& row, RowMode mode) {
  try {
    if (mode == RowMode::Counts) {
      std::vector<std::uint64_t> counts;
      for (const auto& f : row.fields) counts.push_back(parse_number<std::uint64_t>(f, row));
      return {Distribution::from_votes(counts), counts};
    }
    std::vector<double> probs;
    for (const auto& f : row.fields) probs.push_back(parse_number<double>(f, row));
    return {Distribution::validate(probs), std::nullopt};
  } catch (const Error& e) {
    if (e.line()) throw;
    throw e.with_line(row.line).with_case(row.case_id);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

std::string format_prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

void write_header(const std::vector<std::string>& labels, std::ostream& out) {
  out << "case_id";
  for (const auto& l : labels) out << '\t' << l;
  out << '\n';
}

}  // namespace

Dataset parse_gold(std::istream& in) {
  const Table t = read_table(in);
  if (t.rows.empty()) throw Error(ErrorCode::ParseError, "gold file has no cases");
  Dataset d;
  d.class_labels = t.labels;
  std::unordered_map<std::string, std::size_t> seen;
  for (const Row& row : t.rows) {
    if (!seen.emplace(row.case_id, row.line).second) {
      throw Error(ErrorCode::DuplicateCaseId, "first seen at line " +
                                                  std::to_string(seen[row.case_id]))
          .with_line(row.line)
          .with_case(row.case_id);
    }
    ParsedRow parsed = parse_row(row, t.mode);
    d.case_ids.push_back(row.case_id);
    d.gold.push_back(std::move(parsed.dist));
    d.votes.push_back(std::move(parsed.votes));
  }
  d.check();
  return d;
}

Dataset load_gold(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_gold(in);
  } catch (const Error& e) {
    throw e.with_source(path.string());
  }
}

SystemRun parse_run(std::istream& in, const Dataset& dataset, const std::string& default_id) {
  const Table t = read_table(in);
  if (t.labels.size() != dataset.num_classes()) {
    throw Error(ErrorCode::InconsistentClassCount,
                "run has " + std::to_string(t.labels.size()) + " classes, gold has " +
                    std::to_string(dataset.num_classes()))
        .with_line(t.header_line);
  }
  if (t.labels != dataset.class_labels) {
    throw Error(ErrorCode::ParseError, "class labels differ from the gold file")
        .with_line(t.header_line);
  }

  const auto index = dataset.index();
  std::vector<std::optional<Distribution>> slots(dataset.size());
  for (const Row& row : t.rows) {
    const auto it = index.find(row.case_id);
    if (it == index.end()) {
      throw Error(ErrorCode::UnknownCase, "not in the gold file")
          .with_line(row.line)
          .with_case(row.case_id);
    }
    if (slots[it->second]) {
      throw Error(ErrorCode::DuplicateCaseId, "").with_line(row.line).with_case(row.case_id);
    }
    slots[it->second] = parse_row(row, t.mode).dist;
  }

  SystemRun run;
  run.system_id = t.system.value_or(default_id);
  run.case_ids = dataset.case_ids;
  for (std::size_t c = 0; c < slots.size(); ++c) {
    if (!slots[c]) {
      throw Error(ErrorCode::MissingCase, "no estimate").with_case(dataset.case_ids[c]);
    }
    run.est.push_back(std::move(*slots[c]));
  }
  return run;
}

SystemRun load_run(const std::filesystem::path& path, const Dataset& dataset) {
  auto in = open_input(path);
  try {
    return parse_run(in, dataset, path.stem().string());
  } catch (const Error& e) {
    throw e.with_source(path.string());
  }
}

std::vector<SystemRun> load_runs(const std::vector<std::filesystem::path>& paths,
                                 const Dataset& dataset) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> entries;
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().filename().string().front() != '.') {
          entries.push_back(entry.path());
        }
      }
      std::sort(entries.begin(), entries.end());
      files.insert(files.end(), entries.begin(), entries.end());
    } else if (std::filesystem::exists(p)) {
      files.push_back(p);
    } else {
      throw Error(ErrorCode::IoError, "no such file or directory: " + p.string());
    }
  }
  if (files.empty()) throw Error(ErrorCode::IoError, "no run files found");

  std::vector<SystemRun> runs;
  std::unordered_map<std::string, std::string> owners;
  for (const auto& f : files) {
    runs.push_back(load_run(f, dataset));
    const auto [it, fresh] = owners.emplace(runs.back().system_id, f.string());
    if (!fresh) {
      throw Error(ErrorCode::IoError, "system id '" + it->first + "' used by both " + it->second +
                                          " and " + f.string());
    }
  }
  return runs;
}

void write_gold(const Dataset& dataset, RowMode mode, std::ostream& out) {
  out << "#mode: " << (mode == RowMode::Counts ? "counts" : "probs") << '\n';
  write_header(dataset.class_labels, out);
  for (std::size_t c = 0; c < dataset.size(); ++c) {
    out << dataset.case_ids[c];
    if (mode == RowMode::Counts) {
      if (c >= dataset.votes.size() || !dataset.votes[c]) {
        throw Error(ErrorCode::IoError, "no vote counts to write").with_case(dataset.case_ids[c]);
      }
      for (auto v : *dataset.votes[c]) out << '\t' << v;
    } else {
      for (double p : dataset.gold[c].probs()) out << '\t' << format_prob(p);
    }
    out << '\n';
  }
}

void write_run(const SystemRun& run, const Dataset& dataset, std::ostream& out) {
  out << "#mode: probs\n#system: " << run.system_id << '\n';
  write_header(dataset.class_labels, out);
  for (std::size_t c = 0; c < run.est.size(); ++c) {
    out << run.case_ids[c];
    for (double p : run.est[c].probs()) out << '\t' << format_prob(p);
    out << '\n';
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

}  // namespace quantdiv
