#include "forge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "forge/annotation.hpp"
#include "forge/augment.hpp"
#include "forge/backend_process.hpp"
#include "forge/corpus.hpp"
#include "forge/enrich.hpp"
#include "forge/errors.hpp"
#include "forge/eval.hpp"
#include "forge/lexicon.hpp"
#include "forge/text.hpp"
#include "forge/tiering.hpp"
#include "forge/triplet.hpp"
#include "forge/version.hpp"

namespace forge {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space_char(s[b])) ++b;
  while (e > b && is_space_char(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  Config config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key=value");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": empty key");
    }
    if (config.kv_.count(key)) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": duplicate key: " + key);
    }
    config.kv_[key] = value;
  }
  return config;
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

const std::string& Config::require(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::string Config::get_or(const std::string& key,
                           const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::require_double(const std::string& key) const {
  const std::string& raw = require(key);
  char* end = nullptr;
  double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError("config key " + key + " is not a number: " + raw);
  }
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? require_double(key) : fallback;
}

std::uint64_t Config::get_uint(const std::string& key,
                               std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& raw = require(key);
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0') {
    throw ConfigError("config key " + key + " is not a non-negative integer: " +
                      raw);
  }
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& raw = require(key);
  if (raw == "true" || raw == "on" || raw == "yes" || raw == "1") return true;
  if (raw == "false" || raw == "off" || raw == "no" || raw == "0") return false;
  throw ConfigError("config key " + key + " is not a boolean: " + raw);
}

std::string Config::hash() const {
  std::string blob;
  for (const auto& [k, v] : kv_) {
    blob += k;
    blob += '=';
    blob += v;
    blob += '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(blob)));
  return buf;
}

Json manifest_to_json(const PipelineManifest& m) {
  return Json{{"stage", m.stage},
              {"config_hash", m.config_hash},
              {"inputs", m.inputs},
              {"outputs", m.outputs},
              {"records_in", m.records_in},
              {"records_out", m.records_out},
              {"seed", m.seed},
              {"tool_version", m.tool_version},
              {"duration_ms", m.duration_ms},
              {"extra", m.extra}};
}

Json manifest_determinism_view(const Json& manifest) {
  Json j = manifest;
  j.erase("duration_ms");
  return j;
}

namespace {

std::filesystem::path resolve_out_dir(const Config& config) {
  std::filesystem::path dir = config.require("out_dir");
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path input_path(const Config& config, const std::string& key) {
  std::filesystem::path p = config.require(key);
  if (!std::filesystem::exists(p)) {
    throw InputError("missing input for " + key + ": " + p.string());
  }
  return p;
}

void write_json_atomic(const std::filesystem::path& path, const Json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

PipelineManifest stage_ingest(const Config& config) {
  std::filesystem::path corpus_dir = input_path(config, "corpus_dir");
  std::filesystem::path out = resolve_out_dir(config) / "sentences.jsonl";

  std::vector<Document> docs = load_corpus_dir(corpus_dir);
  std::vector<ContextSentence> sentences = segment_corpus(docs);
  write_sentences_jsonl(out, sentences);

  PipelineManifest m;
  m.inputs = {corpus_dir.string()};
  m.outputs = {out.string()};
  m.records_in = docs.size();
  m.records_out = sentences.size();
  return m;
}

PipelineManifest stage_bronze(const Config& config) {
  std::filesystem::path sentences_path = input_path(config, "sentences");
  std::filesystem::path lexicon_path = input_path(config, "lexicon");
  std::filesystem::path out = resolve_out_dir(config) / "bronze.jsonl";

  std::vector<ContextSentence> sentences = read_sentences_jsonl(sentences_path);
  std::vector<NounCompoundEntry> lexicon = load_lexicon(lexicon_path);
  std::vector<Triplet> triplets = generate_bronze(sentences, lexicon);

  std::vector<Json> records;
  records.reserve(triplets.size());
  for (const Triplet& t : triplets) {
    Json j = triplet_to_json(t);
    j["tier"] = "bronze";
    records.push_back(std::move(j));
  }
  write_jsonl_atomic(out, records);

  PipelineManifest m;
  m.inputs = {sentences_path.string(), lexicon_path.string()};
  m.outputs = {out.string()};
  m.records_in = sentences.size();
  m.records_out = triplets.size();
  return m;
}

PipelineManifest stage_silver(const Config& config) {
  std::filesystem::path bronze_path = input_path(config, "bronze");
  std::filesystem::path reference_path = input_path(config, "reference");
  double percent = config.require_double("percent");
  bool filter = config.get_bool("filter", true);
  std::filesystem::path out = resolve_out_dir(config) / "silver.jsonl";

  std::vector<Triplet> triplets = read_triplets_jsonl(bronze_path);
  ReferenceProfile profile =
      ReferenceProfile::build(read_reference_jsonl(reference_path));
  std::vector<RankedEntry> cut = cut_tier(rank_entries(triplets, profile), percent);

  std::vector<RankedEntry> kept;
  kept.reserve(cut.size());
  for (const RankedEntry& r : cut) {
    if (!filter || structural_filter(r.triplet)) kept.push_back(r);
  }

  const std::string tier = "silver_p" + config.require("percent");
  std::vector<Json> records;
  records.reserve(kept.size());
  for (const RankedEntry& r : kept) {
    Json j = ranked_to_json(r);
    j["tier"] = tier;
    records.push_back(std::move(j));
  }
  write_jsonl_atomic(out, records);

  PipelineManifest m;
  m.inputs = {bronze_path.string(), reference_path.string()};
  m.outputs = {out.string()};
  m.records_in = triplets.size();
  m.records_out = kept.size();
  m.extra = Json{{"percent", percent},
                 {"cut_size", cut.size()},
                 {"filter_rejected", cut.size() - kept.size()}};
  return m;
}

PipelineManifest stage_gold_merge(const Config& config) {
  std::filesystem::path dataset_path = input_path(config, "dataset");
  std::filesystem::path annotations_path = input_path(config, "annotations");
  std::filesystem::path out = resolve_out_dir(config) / "gold.jsonl";

  std::vector<Triplet> triplets = read_triplets_jsonl(dataset_path);
  std::vector<AnnotationRecord> annotations =
      read_annotations_jsonl(annotations_path);

  std::map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    by_key[triplet_key(triplets[i])] = i;
  }

  std::vector<std::pair<std::string, Label>> merged = merge(annotations);
  std::set<std::size_t> accepted;
  std::size_t rejected = 0;
  for (const auto& [id, label] : merged) {
    auto it = by_key.find(id);
    if (it == by_key.end()) {
      throw InputError("annotation references unknown triplet: " + id);
    }
    if (label == Label::accept) {
      accepted.insert(it->second);
    } else {
      ++rejected;
    }
  }

  std::vector<Json> records;
  records.reserve(accepted.size());
  for (std::size_t i : accepted) {
    Json j = triplet_to_json(triplets[i]);
    j["tier"] = "gold";
    records.push_back(std::move(j));
  }
  write_jsonl_atomic(out, records);

  Json kappa = nullptr;
  try {
    kappa = cohens_kappa(annotations);
  } catch (const DegenerateMarginals&) {
    // marginals can be degenerate on tiny fixtures; agreement still reports
  }

  PipelineManifest m;
  m.inputs = {dataset_path.string(), annotations_path.string()};
  m.outputs = {out.string()};
  m.records_in = triplets.size();
  m.records_out = accepted.size();
  m.extra = Json{{"agreement", percent_agreement(annotations)},
                 {"kappa", kappa},
                 {"accepted", accepted.size()},
                 {"rejected", rejected}};
  return m;
}

PipelineManifest stage_augment(const Config& config) {
  std::filesystem::path dataset_path = input_path(config, "dataset");
  const std::string augmenter = config.require("augmenter");
  const std::uint64_t seed = config.get_uint("seed", 0);
  const bool retain = config.get_bool("retain_originals", true);
  std::filesystem::path out = resolve_out_dir(config) / "augmented.jsonl";

  std::vector<Triplet> triplets = read_triplets_jsonl(dataset_path);
  std::vector<std::string> inputs = {dataset_path.string()};

  std::function<Triplet(const Triplet&)> apply;
  SpellingDict dict;
  EmbeddingTable table;
  TfidfStats stats;
  if (augmenter == "spelling") {
    std::filesystem::path p = input_path(config, "spelling_dict");
    inputs.push_back(p.string());
    dict = load_spelling_dict(p);
    double rate = config.get_double("rate", 0.1);
    apply = [&dict, rate, seed](const Triplet& t) {
      return augment_spelling(t, dict, rate, seed);
    };
  } else if (augmenter == "embedding") {
    std::filesystem::path p = input_path(config, "embeddings");
    inputs.push_back(p.string());
    table = EmbeddingTable::load(p);
    double rate = config.get_double("rate", 0.1);
    apply = [&table, rate, seed](const Triplet& t) {
      return augment_embedding(t, table, rate, seed);
    };
  } else if (augmenter == "tfidf-insert" || augmenter == "tfidf-replace") {
    std::vector<std::string> texts;
    texts.reserve(triplets.size());
    for (const Triplet& t : triplets) texts.push_back(t.e);
    stats = build_tfidf_stats(texts);
    TfidfMode mode = augmenter == "tfidf-insert" ? TfidfMode::insert
                                                 : TfidfMode::replace;
    std::size_t k = config.get_uint("k", 1);
    apply = [&stats, mode, k, seed](const Triplet& t) {
      return augment_tfidf(t, stats, mode, k, seed);
    };
  } else {
    throw ConfigError("unknown augmenter: " + augmenter);
  }

  std::vector<Json> records;
  records.reserve(triplets.size() * 2);
  for (const Triplet& t : triplets) {
    if (retain) {
      Json j = triplet_to_json(t);
      j["augmented"] = false;
      records.push_back(std::move(j));
    }
    Json j = triplet_to_json(apply(t));
    j["augmented"] = true;
    records.push_back(std::move(j));
  }
  write_jsonl_atomic(out, records);

  PipelineManifest m;
  m.inputs = std::move(inputs);
  m.outputs = {out.string()};
  m.records_in = triplets.size();
  m.records_out = records.size();
  m.extra = Json{{"augmenter", augmenter}, {"retain_originals", retain}};
  return m;
}

PipelineManifest stage_enrich(const Config& config) {
  std::filesystem::path dataset_path = input_path(config, "dataset");
  const std::string kind = config.get_or("kind", "none");
  ContextMode mode = context_mode_from_string(config.get_or("context", "sentence"));
  std::filesystem::path out = resolve_out_dir(config) / "enriched.jsonl";

  std::vector<Triplet> triplets = read_triplets_jsonl(dataset_path);
  std::vector<std::string> inputs = {dataset_path.string()};

  GlossStore glosses;
  InferenceStore inferences;
  std::size_t n_glosses = 0;
  int k_inferences = 0;
  if (kind == "gloss") {
    validate_enrichment_combo(AttachmentKind::gloss, mode);
    std::filesystem::path p = input_path(config, "glosses");
    inputs.push_back(p.string());
    glosses = GlossStore::load(p);
    n_glosses = config.get_uint("n", 5);
  } else if (kind == "inference") {
    std::filesystem::path p = input_path(config, "inferences");
    inputs.push_back(p.string());
    inferences = InferenceStore::load(p);
    k_inferences = static_cast<int>(config.get_uint("k", 5));
  } else if (kind != "none") {
    throw ConfigError("unknown enrichment kind: " + kind);
  }

  auto enrich_member = [&](const Triplet& t, const std::string& text) {
    ContextSentence s;
    s.doc_id = t.doc_id;
    s.index = t.index;
    s.text = text;
    s.prev = t.prev;
    s.next = t.next;
    if (kind == "gloss") return attach_glosses(text, t.mwe, glosses, n_glosses);
    if (kind == "inference") {
      return attach_inferences(s, inferences, k_inferences, mode);
    }
    EnrichedInput plain;
    plain.base = render_local(s, mode);
    plain.context_mode = mode;
    plain.rendered = plain.base;
    return plain;
  };

  std::vector<Json> records;
  records.reserve(triplets.size());
  for (const Triplet& t : triplets) {
    EnrichedInput re = enrich_member(t, t.e);
    EnrichedInput rc = enrich_member(t, t.e_c);
    EnrichedInput ri = enrich_member(t, t.e_i);
    Json j = triplet_to_json(t);
    j["rendered"] = Json{{"e", re.rendered}, {"e_c", rc.rendered}, {"e_i", ri.rendered}};
    j["context_mode"] = context_mode_to_string(mode);
    Json kinds = Json::array();
    for (const Attachment& a : re.attachments) {
      kinds.push_back(a.kind == AttachmentKind::gloss ? "gloss" : "inference");
    }
    j["attachment_kinds"] = std::move(kinds);
    records.push_back(std::move(j));
  }
  write_jsonl_atomic(out, records);

  PipelineManifest m;
  m.inputs = std::move(inputs);
  m.outputs = {out.string()};
  m.records_in = triplets.size();
  m.records_out = records.size();
  m.extra = Json{{"kind", kind}, {"context", context_mode_to_string(mode)}};
  return m;
}

PipelineManifest stage_evaluate(const Config& config) {
  std::filesystem::path dataset_path = input_path(config, "dataset");
  const std::string backend_name = config.require("backend");
  std::filesystem::path out_dir = resolve_out_dir(config);
  std::filesystem::path report_path = out_dir / "report.json";
  std::filesystem::path tsv_path = out_dir / "records.tsv";

  std::vector<Triplet> triplets;
  {
    for_each_jsonl(dataset_path, [&](std::size_t line, const Json& j) {
      Triplet t = triplet_from_json(j, dataset_path.string(), line);
      if (j.contains("rendered")) {
        const Json& r = j.at("rendered");
        try {
          t.e = r.at("e").get<std::string>();
          t.e_c = r.at("e_c").get<std::string>();
          t.e_i = r.at("e_i").get<std::string>();
        } catch (const Json::exception& e) {
          throw ParseError(dataset_path.string(), line, e.what());
        }
      }
      triplets.push_back(std::move(t));
    });
  }
  if (triplets.empty()) {
    throw InputError("evaluation dataset is empty: " + dataset_path.string());
  }

  std::unique_ptr<EmbeddingBackend> backend;
  if (backend_name == "default") {
    std::vector<std::string> texts;
    texts.reserve(triplets.size() * 3);
    std::set<std::string> mwe_set;
    for (const Triplet& t : triplets) {
      texts.push_back(t.e);
      texts.push_back(t.e_c);
      texts.push_back(t.e_i);
      mwe_set.insert(t.mwe);
    }
    backend = std::make_unique<DefaultBackend>(
        build_tfidf_stats(texts),
        std::vector<std::string>(mwe_set.begin(), mwe_set.end()));
  } else if (backend_name == "process") {
    std::istringstream cmd(config.require("backend_cmd"));
    std::vector<std::string> argv;
    std::string word;
    while (cmd >> word) argv.push_back(word);
    if (argv.empty()) throw ConfigError("backend_cmd is empty");
    backend = std::make_unique<ProcessBackend>(std::move(argv));
  } else {
    throw ConfigError("unknown backend: " + backend_name +
                      " (expected default or process)");
  }

  std::vector<EvalRecord> records = build_eval_records(triplets, *backend);
  EvalReport report = report_from_records(records);

  write_json_atomic(report_path, report_to_json(report));
  write_text_atomic(tsv_path, records_to_tsv(records));

  PipelineManifest m;
  m.inputs = {dataset_path.string()};
  m.outputs = {report_path.string(), tsv_path.string()};
  m.records_in = triplets.size();
  m.records_out = records.size();
  m.extra = report_to_json(report);
  return m;
}

PipelineManifest stage_stats(const Config& config) {
  std::filesystem::path dataset_path = input_path(config, "dataset");
  std::filesystem::path out = resolve_out_dir(config) / "stats.json";

  std::size_t count = 0;
  std::set<std::string> mwes;
  std::map<std::size_t, std::size_t> histogram;
  std::map<std::string, std::size_t> tiers;
  for_each_jsonl(dataset_path, [&](std::size_t, const Json& j) {
    ++count;
    if (j.contains("mwe") && j["mwe"].is_string()) {
      mwes.insert(j["mwe"].get<std::string>());
    }
    const Json* text = nullptr;
    if (j.contains("e") && j["e"].is_string()) {
      text = &j["e"];
    } else if (j.contains("text") && j["text"].is_string()) {
      text = &j["text"];
    }
    if (text) ++histogram[whitespace_token_count(text->get<std::string>())];
    if (j.contains("tier") && j["tier"].is_string()) {
      ++tiers[j["tier"].get<std::string>()];
    }
  });

  Json hist = Json::array();
  for (const auto& [len, n] : histogram) hist.push_back(Json::array({len, n}));
  Json tier_counts = Json::object();
  for (const auto& [tier, n] : tiers) tier_counts[tier] = n;

  Json summary{{"record_count", count},
               {"distinct_mwe_count", mwes.size()},
               {"sentence_length_histogram", hist},
               {"per_tier_counts", tier_counts}};
  write_json_atomic(out, summary);

  PipelineManifest m;
  m.inputs = {dataset_path.string()};
  m.outputs = {out.string()};
  m.records_in = count;
  m.records_out = count;
  m.extra = summary;
  return m;
}

PipelineManifest stage_sample(const Config& config) {
  std::filesystem::path dataset_path = input_path(config, "dataset");
  if (!config.has("k")) throw ConfigError("missing config key: k");
  std::size_t k = config.get_uint("k", 0);
  std::uint64_t seed = config.get_uint("seed", 0);
  std::filesystem::path out = resolve_out_dir(config) / "sample.jsonl";

  std::vector<Triplet> triplets = read_triplets_jsonl(dataset_path);
  std::vector<Triplet> sampled = random_sample(triplets, k, seed);
  write_triplets_jsonl(out, sampled);

  PipelineManifest m;
  m.inputs = {dataset_path.string()};
  m.outputs = {out.string()};
  m.records_in = triplets.size();
  m.records_out = sampled.size();
  return m;
}

}  // namespace

PipelineManifest run_stage(const std::string& name, Config config) {
  const auto start = std::chrono::steady_clock::now();

  PipelineManifest m;
  if (name == "ingest") {
    m = stage_ingest(config);
  } else if (name == "bronze") {
    m = stage_bronze(config);
  } else if (name == "silver") {
    m = stage_silver(config);
  } else if (name == "gold-merge") {
    m = stage_gold_merge(config);
  } else if (name == "augment") {
    m = stage_augment(config);
  } else if (name == "enrich") {
    m = stage_enrich(config);
  } else if (name == "evaluate") {
    m = stage_evaluate(config);
  } else if (name == "stats") {
    m = stage_stats(config);
  } else if (name == "sample") {
    m = stage_sample(config);
  } else {
    throw ConfigError("unknown stage: " + name);
  }

  m.stage = name;
  m.config_hash = config.hash();
  m.seed = config.get_uint("seed", 0);
  m.tool_version = kVersion;
  m.duration_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start)
          .count());

  Json manifest = manifest_to_json(m);
  for (const std::string& output : m.outputs) {
    write_json_atomic(output + ".manifest.json", manifest);
  }
  return m;
}

}  // namespace forge
