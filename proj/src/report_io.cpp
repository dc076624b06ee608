#include "quantdiv/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "quantdiv/dataset_io.hpp"
#include "quantdiv/error.hpp"
#include "quantdiv/version.hpp"

namespace quantdiv {

using nlohmann::json;

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  // Avoid "-0.000" in tables.
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

json meta(const json& seed, const json& trials, const json& mode, const json& alpha) {
  return {{"seed", seed},
          {"B", trials},
          {"mode", mode},
          {"alpha", alpha},
          {"tool_version", kToolVersion}};
}

json parse_json(std::istream& in, const std::string& kind) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || doc.value("kind", "") != kind) {
    throw Error(ErrorCode::ParseError, "expected a '" + kind + "' report");
  }
  return doc;
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

// Stable ordering by mean tau, best first.
std::vector<std::size_t> ranking_order(const ConsistencyReport& r) {
  std::vector<std::size_t> order(r.measures.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r.mean_tau[a] > r.mean_tau[b]; });
  return order;
}

// Losers of `winner`, listed in the ranking order.
std::vector<std::string> outperformed(const ConsistencyReport& r, std::size_t winner,
                                      const std::vector<std::size_t>& order) {
  std::vector<std::string> out;
  for (std::size_t loser : order) {
    const SignificantPair pair{winner, loser};
    if (std::find(r.significant_pairs.begin(), r.significant_pairs.end(), pair) !=
        r.significant_pairs.end()) {
      out.push_back(r.measures[loser]);
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "tsv") return ReportFormat::Tsv;
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw Error(ErrorCode::ParseError, "unknown report format '" + name + "'");
}

// -- score tables ------------------------------------------------------------

void write_report(const std::vector<ScoreMatrix>& matrices, ReportFormat format,
                  std::ostream& out) {
  if (format == ReportFormat::Json) {
    json doc;
    doc["kind"] = "scores";
    doc["measures"] = json::array();
    json tables = json::array();
    for (const auto& m : matrices) {
      doc["measures"].push_back(m.measure);
      json rows = json::array();
      for (std::size_t s = 0; s < m.systems(); ++s) {
        rows.push_back(std::vector<double>(m.row(s).begin(), m.row(s).end()));
      }
      tables.push_back({{"measure", m.measure},
                        {"system_ids", m.system_ids},
                        {"case_ids", m.case_ids},
                        {"values", rows},
                        {"mean_scores", mean_scores(m)}});
    }
    doc["payload"] = {{"matrices", tables}};
    doc["meta"] = meta(nullptr, nullptr, nullptr, nullptr);
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const auto& m = matrices[k];
    if (format == ReportFormat::Tsv) {
      out << "#measure: " << m.measure << '\n' << "system_id";
      for (const auto& c : m.case_ids) out << '\t' << c;
      out << '\n';
      for (std::size_t s = 0; s < m.systems(); ++s) {
        out << m.system_ids[s];
        for (double v : m.row(s)) out << '\t' << fixed(v, 6);
        out << '\n';
      }
    } else {
      if (k) out << '\n';
      out << "### " << m.measure << "\n\n| system |";
      for (const auto& c : m.case_ids) out << ' ' << c << " |";
      out << "\n|---|";
      for (std::size_t c = 0; c < m.cases(); ++c) out << "---:|";
      out << '\n';
      for (std::size_t s = 0; s < m.systems(); ++s) {
        out << "| " << m.system_ids[s] << " |";
        for (double v : m.row(s)) out << ' ' << fixed(v, 6) << " |";
        out << '\n';
      }
    }
  }
}

void write_means_table(const std::vector<ScoreMatrix>& matrices, std::ostream& out) {
  if (matrices.empty()) return;
  std::vector<std::vector<double>> means;
  out << "| system |";
  for (const auto& m : matrices) {
    out << " Mean " << m.measure << " |";
    means.push_back(mean_scores(m));
  }
  out << "\n|---|";
  for (std::size_t k = 0; k < matrices.size(); ++k) out << "---:|";
  out << '\n';
  for (std::size_t s = 0; s < matrices.front().systems(); ++s) {
    out << "| " << matrices.front().system_ids[s] << " |";
    for (const auto& col : means) out << ' ' << fixed(col[s], 6) << " |";
    out << '\n';
  }
}

std::vector<ScoreMatrix> read_score_tsv(std::istream& in) {
  std::vector<ScoreMatrix> out;
  std::string line;
  std::size_t lineno = 0;
  bool expect_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("#measure:", 0) == 0) {
      ScoreMatrix m;
      m.measure = line.substr(9);
      m.measure.erase(0, m.measure.find_first_not_of(' '));
      out.push_back(std::move(m));
      expect_header = true;
      continue;
    }
    if (out.empty()) throw Error(ErrorCode::ParseError, "missing #measure line").with_line(lineno);
    std::istringstream ss(line);
    std::vector<std::string> fields;
    for (std::string f; std::getline(ss, f, '\t');) fields.push_back(f);
    ScoreMatrix& m = out.back();
    if (expect_header) {
      if (fields.empty() || fields.front() != "system_id") {
        throw Error(ErrorCode::ParseError, "header must start with 'system_id'").with_line(lineno);
      }
      m.case_ids.assign(fields.begin() + 1, fields.end());
      expect_header = false;
      continue;
    }
    if (fields.size() != m.cases() + 1) {
      throw Error(ErrorCode::InconsistentClassCount, "row width differs from header")
          .with_line(lineno);
    }
    m.system_ids.push_back(fields.front());
    for (std::size_t c = 1; c < fields.size(); ++c) {
      try {
        m.values.push_back(std::stod(fields[c]));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad value '" + fields[c] + "'").with_line(lineno);
      }
    }
  }
  return out;
}

std::vector<ScoreMatrix> read_score_json(std::istream& in) {
  const json doc = parse_json(in, "scores");
  return guarded([&] {
    std::vector<ScoreMatrix> out;
    for (const auto& t : doc.at("payload").at("matrices")) {
      ScoreMatrix m;
      m.measure = t.at("measure").get<std::string>();
      m.system_ids = t.at("system_ids").get<std::vector<std::string>>();
      m.case_ids = t.at("case_ids").get<std::vector<std::string>>();
      for (const auto& row : t.at("values")) {
        const auto values = row.get<std::vector<double>>();
        m.values.insert(m.values.end(), values.begin(), values.end());
      }
      if (m.values.size() != m.systems() * m.cases()) {
        throw Error(ErrorCode::ParseError, "matrix " + m.measure + " is not rectangular");
      }
      out.push_back(std::move(m));
    }
    return out;
  });
}

// -- agreement ---------------------------------------------------------------

void write_report(const AgreementReport& r, ReportFormat format, std::ostream& out) {
  const std::size_t k = r.measures.size();
  switch (format) {
    case ReportFormat::Json: {
      json cells = json::array();
      for (const auto& c : r.cells) {
        cells.push_back({{"row", r.measures[c.row]},
                         {"col", r.measures[c.col]},
                         {"tau", c.result.tau},
                         {"ci_low", c.result.ci_low},
                         {"ci_high", c.result.ci_high},
                         {"n", c.result.n}});
      }
      json doc;
      doc["kind"] = "agreement";
      doc["measures"] = r.measures;
      doc["payload"] = {{"systems", r.systems},
                        {"confidence", r.confidence},
                        {"tau", cells},
                        {"avg_similarity", r.avg_similarity}};
      doc["meta"] = meta(nullptr, nullptr, nullptr, nullptr);
      out << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::Tsv:
      out << "#table: tau\nrow\tcol\ttau\tci_low\tci_high\n";
      for (const auto& c : r.cells) {
        out << r.measures[c.row] << '\t' << r.measures[c.col] << '\t' << fixed(c.result.tau, 6)
            << '\t' << fixed(c.result.ci_low, 6) << '\t' << fixed(c.result.ci_high, 6) << '\n';
      }
      out << "#table: average\nmeasure\tavg_tau\n";
      for (std::size_t i = 0; i < k; ++i) {
        out << r.measures[i] << '\t' << fixed(r.avg_similarity[i], 6) << '\n';
      }
      break;
    case ReportFormat::Markdown:
      out << "Kendall's tau with " << fixed(r.confidence * 100.0, 0) << "% CIs (" << r.systems
          << " systems)\n\n|   |";
      for (std::size_t j = 1; j < k; ++j) out << ' ' << r.measures[j] << " |";
      out << "\n|---|";
      for (std::size_t j = 1; j < k; ++j) out << "---|";
      out << '\n';
      for (std::size_t i = 0; i + 1 < k; ++i) {
        out << "| " << r.measures[i] << " |";
        for (std::size_t j = 1; j < k; ++j) {
          if (j <= i) {
            out << " - |";
            continue;
          }
          const TauResult& t = r.at(i, j);
          out << ' ' << fixed(t.tau, 3) << " [" << fixed(t.ci_low, 3) << ", "
              << fixed(t.ci_high, 3) << "] |";
        }
        out << '\n';
      }
      out << "\nAverage similarity with other measures\n\n| Measure | Average tau |\n|---|---:|\n";
      for (std::size_t i = 0; i < k; ++i) {
        out << "| " << r.measures[i] << " | " << fixed(r.avg_similarity[i], 3) << " |\n";
      }
      break;
  }
}

AgreementReport read_agreement_json(std::istream& in) {
  const json doc = parse_json(in, "agreement");
  return guarded([&] {
    AgreementReport r;
    r.measures = doc.at("measures").get<std::vector<std::string>>();
    const json& p = doc.at("payload");
    r.systems = p.at("systems").get<std::size_t>();
    r.confidence = p.at("confidence").get<double>();
    r.avg_similarity = p.at("avg_similarity").get<std::vector<double>>();
    const auto position = [&](const std::string& name) {
      const auto it = std::find(r.measures.begin(), r.measures.end(), name);
      if (it == r.measures.end()) throw Error(ErrorCode::ParseError, "unknown measure " + name);
      return static_cast<std::size_t>(it - r.measures.begin());
    };
    for (const auto& c : p.at("tau")) {
      TauResult t;
      t.tau = c.at("tau").get<double>();
      t.ci_low = c.at("ci_low").get<double>();
      t.ci_high = c.at("ci_high").get<double>();
      t.n = c.at("n").get<std::size_t>();
      r.cells.push_back({position(c.at("row").get<std::string>()),
                         position(c.at("col").get<std::string>()), t});
    }
    return r;
  });
}

// -- consistency -------------------------------------------------------------

void write_report(const ConsistencyReport& r, ReportFormat format, std::ostream& out) {
  const auto order = ranking_order(r);
  switch (format) {
    case ReportFormat::Json: {
      json pairs = json::array();
      for (const auto& p : r.significant_pairs) {
        pairs.push_back({r.measures[p.better], r.measures[p.worse]});
      }
      json doc;
      doc["kind"] = "consistency";
      doc["measures"] = r.measures;
      doc["payload"] = {{"mean_tau", r.mean_tau},
                        {"per_trial_tau", r.per_trial_tau},
                        {"significant_pairs", pairs},
                        {"critical_value", r.critical_value},
                        {"permutations", r.permutations},
                        {"tau", r.tau == TauKind::B ? "b" : "plain"}};
      doc["meta"] = meta(r.seed, r.trials, r.mode.to_string(), r.alpha);
      out << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::Tsv:
      out << "#mode: " << r.mode.to_string() << "\n#B: " << r.trials << "\n#seed: " << r.seed
          << "\n#alpha: " << r.alpha << "\nmeasure\tmean_tau\toutperforms\n";
      for (std::size_t i : order) {
        out << r.measures[i] << '\t' << fixed(r.mean_tau[i], 6) << '\t'
            << join(outperformed(r, i, order), ",") << '\n';
      }
      break;
    case ReportFormat::Markdown:
      out << "Mean system ranking consistency tau (mode " << r.mode.to_string() << ", B = "
          << r.trials << ", seed = " << r.seed << ", randomised Tukey HSD at alpha = " << r.alpha
          << ")\n\n| Measure | Mean tau | Significantly outperforms |\n|---|---:|---|\n";
      for (std::size_t i : order) {
        out << "| " << r.measures[i] << " | " << fixed(r.mean_tau[i], 4) << " | "
            << join(outperformed(r, i, order), ", ") << " |\n";
      }
      break;
  }
}

ConsistencyReport read_consistency_json(std::istream& in) {
  const json doc = parse_json(in, "consistency");
  return guarded([&] {
    ConsistencyReport r;
    r.measures = doc.at("measures").get<std::vector<std::string>>();
    const json& p = doc.at("payload");
    const json& m = doc.at("meta");
    r.mean_tau = p.at("mean_tau").get<std::vector<double>>();
    r.per_trial_tau = p.at("per_trial_tau").get<std::vector<std::vector<double>>>();
    r.critical_value = p.at("critical_value").get<double>();
    r.permutations = p.at("permutations").get<std::size_t>();
    r.tau = p.at("tau").get<std::string>() == "plain" ? TauKind::Plain : TauKind::B;
    r.seed = m.at("seed").get<std::uint64_t>();
    r.trials = m.at("B").get<std::size_t>();
    r.mode = SubsetMode::parse(m.at("mode").get<std::string>());
    r.alpha = m.at("alpha").get<double>();
    const auto position = [&](const std::string& name) {
      const auto it = std::find(r.measures.begin(), r.measures.end(), name);
      if (it == r.measures.end()) throw Error(ErrorCode::ParseError, "unknown measure " + name);
      return static_cast<std::size_t>(it - r.measures.begin());
    };
    for (const auto& pair : p.at("significant_pairs")) {
      r.significant_pairs.push_back(
          {position(pair.at(0).get<std::string>()), position(pair.at(1).get<std::string>())});
    }
    return r;
  });
}

template <typename Report>
void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_report(report, format, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

template void write_report(const std::vector<ScoreMatrix>&, ReportFormat,
                           const std::filesystem::path&);
template void write_report(const AgreementReport&, ReportFormat, const std::filesystem::path&);
template void write_report(const ConsistencyReport&, ReportFormat, const std::filesystem::path&);

}  // namespace quantdiv
