#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "forge/errors.hpp"
#include "forge/pipeline.hpp"
#include "forge/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"forge: corpus-to-dataset pipeline and STS evaluation harness"};
  app.set_version_flag("--version", forge::kVersion);

  std::string stage;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;

  app.add_option("stage", stage,
                 "ingest | bronze | silver | gold-merge | augment | enrich | "
                 "evaluate | stats | sample")
      ->required();
  app.add_option("--config", config_path, "key=value configuration file")
      ->required();
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "override the configured seed");
  CLI::Option* out_opt =
      app.add_option("--out", out_dir, "override the configured out_dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a configuration error
  }

  try {
    forge::Config config = forge::Config::load(config_path);
    if (seed_opt->count() > 0) config.set("seed", std::to_string(seed));
    if (out_opt->count() > 0) config.set("out_dir", out_dir);

    forge::PipelineManifest manifest = forge::run_stage(stage, config);
    std::fputs((forge::manifest_to_json(manifest).dump(2) + "\n").c_str(),
               stdout);
    return 0;
  } catch (const forge::Error& e) {
    std::fprintf(stderr, "forge: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "forge: internal: %s\n", e.what());
    return 4;
  }
}
