// Command-line front end: one subcommand per pipeline stage plus run-all.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dnex/pipeline.hpp"
#include "json.hpp"

namespace {

int fail(const std::string& stage, const std::string& code, const std::string& message, int status) {
  std::cerr << nlohmann::json{{"stage", stage}, {"error", code}, {"message", message}}.dump() << std::endl;
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-author recall audit for language models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string epsilon_list, baseline_choice, mock_endpoint, cache_dir, out_dir;
  bool quiet = false;
  app.add_option("-c,--config", config_path, "pipeline config (JSON)")->required();
  app.add_option("--epsilon", epsilon_list, "comma-separated similarity thresholds, e.g. 0.6,0.7");
  app.add_option("--baseline", baseline_choice, "openalex, google-scholar or both");
  app.add_option("--mock-endpoint", mock_endpoint, "serve completions from a JSON file instead of HTTP");
  app.add_option("--cache-dir", cache_dir, "harvest and probe cache directory");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_flag("-q,--quiet", quiet, "no progress messages");

  std::string stage;
  for (const auto* name : dnex::pipeline::kStages)
    app.add_subcommand(name, std::string("run the ") + name + " stage")->callback([&stage, name] { stage = name; });
  app.add_subcommand("run-all", "run every stage in order")->callback([&stage] { stage = "run-all"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    dnex::pipeline::CliOverrides cli;
    if (!epsilon_list.empty()) cli.epsilons = dnex::pipeline::parse_epsilon_list(epsilon_list);
    if (!baseline_choice.empty()) cli.baselines = dnex::pipeline::parse_baseline_choice(baseline_choice);
    if (!mock_endpoint.empty()) cli.mock_endpoint = mock_endpoint;
    if (!cache_dir.empty()) cli.cache_dir = cache_dir;
    if (!out_dir.empty()) cli.out_dir = out_dir;

    dnex::pipeline::StageContext ctx(dnex::pipeline::load_config(config_path, cli));
    if (!quiet) ctx.log = [](const std::string& m) { std::cerr << m << '\n'; };
    if (stage == "run-all")
      dnex::pipeline::run_all(ctx);
    else
      dnex::pipeline::run_stage(ctx, stage);
    if (!quiet) {
      const auto m = ctx.manifest.to_json();
      for (auto it = m["stages"].begin(); it != m["stages"].end(); ++it)
        std::cerr << it.key() << ": " << (*it)["counts"].dump() << '\n';
    }
  } catch (const dnex::Error& e) {
    return fail(stage, std::string(dnex::to_string(e.code())), e.what(), 2);
  } catch (const std::exception& e) {
    return fail(stage, "Internal", e.what(), 3);
  }
  return 0;
}
