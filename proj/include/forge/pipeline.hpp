#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "forge/jsonl.hpp"

namespace forge {

// Key=value stage configuration. Lines hold one pair each; '#' starts a
// comment; whitespace around keys and values is trimmed. Relative paths in
// values resolve against the process working directory.
class Config {
 public:
  Config() = default;
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  const std::string& require(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double require_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // FNV-1a over the sorted "key=value" lines of the resolved configuration,
  // as fixed-width hex.
  std::string hash() const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

struct PipelineManifest {
  std::string stage;
  std::string config_hash;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::size_t records_in = 0;
  std::size_t records_out = 0;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::uint64_t duration_ms = 0;
  Json extra = Json::object();
};

// duration_ms is wall-clock bookkeeping; determinism comparisons must drop
// it (manifest_determinism_view does).
Json manifest_to_json(const PipelineManifest& m);
Json manifest_determinism_view(const Json& manifest);

// Runs one stage end to end: reads inputs, writes every output atomically,
// then drops an identical "<output>.manifest.json" sidecar next to each
// output file. Stage names: ingest, bronze, silver, gold-merge, augment,
// enrich, evaluate, stats, sample. Unknown stages and invalid settings raise
// ConfigError; missing or malformed data raises InputError.
PipelineManifest run_stage(const std::string& name, Config config);

}  // namespace forge
