#include "quantdiv/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "quantdiv/dataset_io.hpp"
#include "quantdiv/error.hpp"
#include "quantdiv/meta_eval.hpp"
#include "quantdiv/report_io.hpp"
#include "quantdiv/version.hpp"

namespace quantdiv::cli {

namespace {

struct Config {
  std::string gold_path;
  std::vector<std::string> run_paths;
  std::string measures;
  bool with_rsnod = false;
  std::string format = "json";
  std::string output;
  unsigned threads = 1;
  // agree
  double confidence = 0.95;
  std::string ci = "fisher";
  // consistency
  std::size_t trials = 1000;
  std::string subset_mode = "half";
  double alpha = 0.05;
  std::size_t permutations = 5000;
  std::uint64_t seed = 42;
  std::string tau = "b";
};

std::string default_suite_csv() {
  std::string out;
  for (Measure m : kDefaultSuite) {
    if (!out.empty()) out += ',';
    out += to_string(m);
  }
  return out;
}

std::vector<Measure> resolve_measures(const Config& cfg, std::ostream& err) {
  std::vector<Measure> requested = parse_measure_list(cfg.measures);
  if (cfg.with_rsnod) requested.push_back(Measure::RSNOD);
  std::vector<Measure> unique;
  for (Measure m : requested) {
    if (std::find(unique.begin(), unique.end(), m) != unique.end()) {
      err << "warning: measure " << to_string(m) << " listed more than once; using it once\n";
      continue;
    }
    unique.push_back(m);
  }
  if (unique.empty()) throw Error(ErrorCode::TooFewMeasures, "no measures selected");
  return unique;
}

struct Inputs {
  Dataset dataset;
  std::vector<SystemRun> runs;
};

Inputs load_inputs(const Config& cfg) {
  Inputs in;
  in.dataset = load_gold(cfg.gold_path);
  std::vector<std::filesystem::path> paths(cfg.run_paths.begin(), cfg.run_paths.end());
  in.runs = load_runs(paths, in.dataset);
  return in;
}

template <typename Report>
void emit(const Report& report, const Config& cfg) {
  if (cfg.output.empty()) return;
  write_report(report, parse_report_format(cfg.format), std::filesystem::path(cfg.output));
}

int cmd_score(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto measures = resolve_measures(cfg, err);
  const Inputs in = load_inputs(cfg);
  std::vector<ScoreMatrix> matrices;
  for (Measure m : measures) matrices.push_back(score_matrix(in.dataset, in.runs, m));
  write_means_table(matrices, out);
  emit(matrices, cfg);
  return kExitOk;
}

int cmd_agree(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto measures = resolve_measures(cfg, err);
  const Inputs in = load_inputs(cfg);
  AgreementOptions opts;
  opts.confidence = cfg.confidence;
  opts.ci = cfg.ci == "long-cliff" ? CiMethod::LongCliff : CiMethod::FisherZ;
  const AgreementReport report = agreement(in.dataset, in.runs, measures, opts);
  write_report(report, ReportFormat::Markdown, out);
  emit(report, cfg);
  return kExitOk;
}

int cmd_consistency(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto measures = resolve_measures(cfg, err);
  ConsistencyOptions opts;
  opts.mode = SubsetMode::parse(cfg.subset_mode);
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.alpha = cfg.alpha;
  opts.permutations = cfg.permutations;
  opts.threads = cfg.threads;
  opts.tau = cfg.tau == "plain" ? TauKind::Plain : TauKind::B;
  const Inputs in = load_inputs(cfg);
  const ConsistencyReport report = split_half_consistency(in.dataset, in.runs, measures, opts);
  write_report(report, ReportFormat::Markdown, out);
  emit(report, cfg);
  return kExitOk;
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--gold", cfg.gold_path, "Gold distribution file (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--runs", cfg.run_paths, "Run files and/or directories of run files")
      ->required()
      ->expected(1, -1);
  sub->add_option("--measures", cfg.measures, "Comma separated measure list")
      ->capture_default_str();
  sub->add_flag("--with-rsnod", cfg.with_rsnod, "Append RSNOD to the measure list");
  sub->add_option("--format", cfg.format, "Format of the --output report")
      ->check(CLI::IsMember({"tsv", "json", "markdown"}))
      ->capture_default_str();
  sub->add_option("--output", cfg.output, "Write the machine-readable report here");
  sub->add_option("--threads", cfg.threads, "Worker threads (never changes results)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  cfg.measures = default_suite_csv();

  CLI::App app{"Ordinal quantification divergences and system-ranking meta-evaluation",
               "quantdiv"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Per-case scores and per-system means");
  add_common(score, cfg);

  auto* agree = app.add_subcommand("agree", "Kendall's tau agreement between measure rankings");
  add_common(agree, cfg);
  agree->add_option("--confidence", cfg.confidence, "Confidence level of the tau intervals")
      ->check(CLI::Range(0.5, 0.999999))
      ->capture_default_str();
  agree->add_option("--ci", cfg.ci, "Interval method")
      ->check(CLI::IsMember({"fisher", "long-cliff"}))
      ->capture_default_str();

  auto* consistency =
      app.add_subcommand("consistency", "Split-half system ranking consistency with Tukey HSD");
  add_common(consistency, cfg);
  consistency->add_option("-B,--trials", cfg.trials, "Number of random splits")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  consistency->add_option("--subset-mode", cfg.subset_mode, "'half' or 'k=<size>'")
      ->capture_default_str();
  consistency->add_option("--alpha", cfg.alpha, "Significance level")
      ->check(CLI::Range(1e-9, 0.999999))
      ->capture_default_str();
  consistency->add_option("--permutations", cfg.permutations, "Tukey HSD permutation rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* seed_opt = consistency->add_option(
      "--seed", cfg.seed, "Random seed (QUANTDIV_SEED is used when this flag is absent)");
  seed_opt->capture_default_str();
  consistency->add_option("--tau", cfg.tau, "'b' (tau-b) or 'plain' Kendall tau")
      ->check(CLI::IsMember({"b", "plain"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (consistency->parsed() && seed_opt->count() == 0) {
      if (const char* env = std::getenv("QUANTDIV_SEED"); env != nullptr && *env != '\0') {
        std::istringstream ss(env);
        if (!(ss >> cfg.seed) || !ss.eof()) {
          throw Error(ErrorCode::ParseError, std::string("QUANTDIV_SEED is not an integer: ") + env);
        }
      }
    }
    if (score->parsed()) return cmd_score(cfg, out, err);
    if (agree->parsed()) return cmd_agree(cfg, out, err);
    return cmd_consistency(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"quantdiv"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace quantdiv::cli
