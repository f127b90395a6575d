// msq: review corpus -> aspect and dimension scores per listing.
#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "msq/error.hpp"
#include "msq/pipeline.hpp"

namespace {

int exit_for(const msq::Error& e) { return msq::exit_code_for(msq::category_of(e.code())); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-dimensional service quality scores from guest reviews"};
  app.set_version_flag("--version", std::string(msq::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool literal = false;
  bool sum = false;
  bool quiet = false;
  app.add_option("-c,--config", config_path, "Config file (JSON or key = value)");
  app.add_option("--seed", seed, "Override the community detection seed");
  app.add_option("-j,--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--compat-literal-eq1", literal, "Rescale by the sentence polarity sum");
  app.add_flag("--compat-sum-eq3", sum, "Sum review scores per listing instead of averaging");
  app.add_flag("-q,--quiet", quiet, "Only print errors");

  auto* ingest = app.add_subcommand("ingest", "Load, clean and standardize the review corpus");
  auto* cluster = app.add_subcommand("cluster", "Build the word network and detect communities");
  auto* score = app.add_subcommand("score", "Score listings with a labeled aspect model");
  auto* run = app.add_subcommand("run", "Run every stage, skipping unchanged ones");
  auto* defaults = app.add_subcommand("defaults", "Write the built-in resources to a directory");
  std::string defaults_dir;
  defaults->add_option("dir", defaults_dir, "Target directory")->required();
  for (auto* sub : {ingest, cluster, score, run}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (defaults->parsed()) {
      msq::write_default_resources(defaults_dir);
      return 0;
    }
    if (config_path.empty()) {
      std::cerr << "msq: --config is required\n";
      return 2;
    }
    auto config = msq::load_config(config_path);
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    config.compat_literal_eq1 = config.compat_literal_eq1 || literal;
    config.compat_sum_eq3 = config.compat_sum_eq3 || sum;
    config.quiet = config.quiet || quiet;
    config.validate();

    msq::Reporter reporter(config.quiet);
    if (ingest->parsed()) msq::cmd_ingest(config, reporter);
    if (cluster->parsed()) msq::cmd_cluster(config, reporter);
    if (score->parsed()) msq::cmd_score(config, reporter);
    if (run->parsed()) msq::cmd_run(config, reporter);
    return 0;
  } catch (const msq::Error& e) {
    std::cerr << "msq: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "msq: internal error: " << e.what() << '\n';
    return 4;
  }
}
