#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "quantdiv/dataset.hpp"

namespace quantdiv {

// Gold and run files are whitespace separated tables (tabs when written):
//
//   #mode: counts            optional; "probs" when absent
//   #system: my-run          optional, runs only; defaults to the file stem
//   case_id  -2  -1  0  1  2
//   d001     19  0   0  0  0
//
// Other lines starting with '#' and blank lines are ignored. The header's
// first column must be `case_id`; the remaining columns are class labels in
// ordinal order. Rows in counts mode hold non-negative integers which are
// normalised per row.

enum class RowMode { Probs, Counts };

/// Throws ParseError, DuplicateCaseId, InconsistentClassCount or a
/// distribution error, each carrying the line and case id where known.
Dataset load_gold(const std::filesystem::path& path);
Dataset parse_gold(std::istream& in);

/// Aligns rows to the dataset order. Additionally throws MissingCase and
/// UnknownCase. A header whose labels differ from the dataset's is a
/// ParseError; a different column count is InconsistentClassCount.
SystemRun load_run(const std::filesystem::path& path, const Dataset& dataset);
SystemRun parse_run(std::istream& in, const Dataset& dataset, const std::string& default_id);

/// Each path may be a file or a directory; directories contribute every
/// regular file in name order. Throws IoError when nothing is found or two
/// runs share a system id.
std::vector<SystemRun> load_runs(const std::vector<std::filesystem::path>& paths,
                                 const Dataset& dataset);

/// Probability rows are written with 17 significant digits so that reloading
/// reproduces the exact values.
void write_gold(const Dataset& dataset, RowMode mode, std::ostream& out);
void write_run(const SystemRun& run, const Dataset& dataset, std::ostream& out);

/// Opens for writing or throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace quantdiv
