// Writes the synthetic benchmark: <out>/gold.tsv and <out>/runs/<system>.tsv.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "quantdiv/dataset_io.hpp"
#include "quantdiv/error.hpp"
#include "quantdiv/synthetic.hpp"

int main(int argc, char** argv) {
  quantdiv::SynthConfig cfg;
  std::string out_dir = "synthetic";

  CLI::App app{"Generate a synthetic gold file and graded-noise system runs", "quantdiv-synth"};
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--systems", cfg.systems, "Number of systems")->capture_default_str();
  app.add_option("--cases", cfg.cases, "Number of test cases")->capture_default_str();
  app.add_option("--classes", cfg.classes, "Number of ordinal classes")->capture_default_str();
  app.add_option("--assessors", cfg.assessors, "Votes per gold case")->capture_default_str();
  app.add_option("--noise-min", cfg.noise_min, "Noise scale of the best system")
      ->capture_default_str();
  app.add_option("--noise-max", cfg.noise_max, "Noise scale of the worst system")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto data = quantdiv::generate_synthetic(cfg);
    const std::filesystem::path root(out_dir);
    std::filesystem::create_directories(root / "runs");
    auto gold = quantdiv::open_output(root / "gold.tsv");
    quantdiv::write_gold(data.dataset, quantdiv::RowMode::Counts, gold);
    for (const auto& run : data.runs) {
      auto out = quantdiv::open_output(root / "runs" / (run.system_id + ".tsv"));
      quantdiv::write_run(run, data.dataset, out);
    }
  } catch (const quantdiv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
