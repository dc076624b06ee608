#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "quantdiv/meta_eval.hpp"

namespace quantdiv {

enum class ReportFormat { Tsv, Json, Markdown };

/// "tsv", "json", "markdown"/"md". Throws ParseError.
ReportFormat parse_report_format(const std::string& name);

// JSON reports share the top-level layout
//   {"kind", "measures", "payload", "meta": {seed, B, mode, alpha, tool_version}}
// with null meta fields where they do not apply. Doubles are written with
// shortest round-trip precision.

/// Score tables: TSV and markdown values carry 6 decimals.
void write_report(const std::vector<ScoreMatrix>& matrices, ReportFormat format, std::ostream& out);
/// Markdown puts "tau [lo, hi]" in each upper-triangle cell, followed by the
/// average similarity table.
void write_report(const AgreementReport& report, ReportFormat format, std::ostream& out);
/// Measures sorted by mean tau, each with the measures it significantly outperforms.
void write_report(const ConsistencyReport& report, ReportFormat format, std::ostream& out);

template <typename Report>
void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

std::vector<ScoreMatrix> read_score_tsv(std::istream& in);
std::vector<ScoreMatrix> read_score_json(std::istream& in);
AgreementReport read_agreement_json(std::istream& in);
ConsistencyReport read_consistency_json(std::istream& in);

/// Per-system means (rows) under each measure (columns).
void write_means_table(const std::vector<ScoreMatrix>& matrices, std::ostream& out);

}  // namespace quantdiv
