#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "forge/augment.hpp"
#include "forge/jsonl.hpp"
#include "forge/triplet.hpp"

namespace forge {

struct SentenceEmbedding {
  std::vector<double> vec;
  double norm = 0.0;
};

// Builds the embedding and caches its Euclidean norm. Rejects NaN/inf.
SentenceEmbedding make_embedding(std::vector<double> values);

// Provider contract: identical text must yield an identical embedding,
// regardless of call order.
class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual SentenceEmbedding embed(const std::string& text) = 0;
};

inline constexpr std::size_t kHashedDim = 256;

// Rewrites every whole-word occurrence of a known MWE with '_' for its
// internal spaces, so "guinea pig" vectorizes as the single token
// "guinea_pig". Occurrences are taken left to right, longest phrase first
// on position ties, without overlap. Length is preserved.
std::string collapse_mwes(const std::string& text,
                          const std::vector<std::string>& mwes);

// Deterministic baseline: MWE collapsing, then TF-IDF-weighted signed
// feature hashing of the token counts into kHashedDim buckets.
SentenceEmbedding embed_default(const std::string& text,
                                const TfidfStats& stats,
                                const std::vector<std::string>& mwes);

class DefaultBackend : public EmbeddingBackend {
 public:
  DefaultBackend(TfidfStats stats, std::vector<std::string> mwes);

  SentenceEmbedding embed(const std::string& text) override;

 private:
  TfidfStats stats_;
  std::vector<std::string> mwes_;
};

// dot / (|a|*|b|), clamped to [-1, 1]. Zero-norm input raises
// DegenerateEmbedding; mismatched dimensions raise ShapeError.
double similarity(const SentenceEmbedding& a, const SentenceEmbedding& b);

struct EvalRecord {
  std::string pair_id;
  std::string sentence_1;
  std::string sentence_2;
  double predicted_sim = 0.0;
  double gold_sim = 0.0;
  std::optional<std::string> portion;
};

// Two records per triplet. (e, e_c) carries gold 1. (e, e_i) carries the
// backend's own sim(e_c, e_i) as gold, which makes the gold target
// backend-relative by design.
std::vector<EvalRecord> build_eval_records(const std::vector<Triplet>& triplets,
                                           EmbeddingBackend& backend);

// Fractional (average) ranks, 1-based; ties share the mean of their
// positional ranks.
std::vector<double> fractional_ranks(const std::vector<double>& xs);

// Pearson correlation of the fractional ranks. Length mismatch raises
// ShapeError; fewer than two observations or a constant side raises
// UndefinedCorrelation.
double spearman_rho(const std::vector<double>& xs,
                    const std::vector<double>& ys);

struct EvalReport {
  std::size_t n_records = 0;
  double rho_overall = 0.0;
  std::optional<double> rho_sts;
  std::optional<double> rho_mwe;
};

// rho_overall over all records; the sts/mwe splits are computed only over
// records carrying that portion tag and stay null when no record does.
EvalReport report_from_records(const std::vector<EvalRecord>& records);

EvalReport evaluate(const std::vector<Triplet>& triplets,
                    EmbeddingBackend& backend);

Json eval_record_to_json(const EvalRecord& r);
EvalRecord eval_record_from_json(const Json& j, const std::string& where,
                                 std::size_t lineno);

Json report_to_json(const EvalReport& report);

// One line per record: pair_id, predicted, gold, tab-separated, with
// round-trip float formatting.
std::string records_to_tsv(const std::vector<EvalRecord>& records);

}  // namespace forge
