#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forge/triplet.hpp"

namespace forge {

// Sentence-level document frequencies for TF-IDF scoring.
struct TfidfStats {
  std::unordered_map<std::string, std::uint64_t> df;
  std::uint64_t doc_count = 0;

  std::uint64_t df_for(std::string_view token) const;
};

TfidfStats build_tfidf_stats(const std::vector<std::string>& texts);

// tf * (ln((1+N)/(1+df)) + 1). The +1 keeps ubiquitous tokens (df == N)
// from scoring exactly zero.
double tfidf_score(const std::string& token, const std::string& sentence,
                   const TfidfStats& stats);

double smoothed_idf(std::uint64_t df, std::uint64_t doc_count);

// Dense token vectors, fixed dimension, loaded from "token v1 v2 ... vd"
// text lines. Rejects NaN/inf values and dimension mismatches.
class EmbeddingTable {
 public:
  static EmbeddingTable load(const std::filesystem::path& path);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(const std::string& token) const {
    return vectors_.count(token) != 0;
  }

  // Highest-cosine table entry other than `token` itself; ties broken by
  // lexicographically smaller token. Empty when `token` is out of vocabulary
  // or no candidate exists.
  std::string nearest_neighbor(const std::string& token) const;

 private:
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::size_t dim_ = 0;
};

using SpellingDict = std::unordered_map<std::string, std::vector<std::string>>;

SpellingDict load_spelling_dict(const std::filesystem::path& path);

// All augmenters hold the MWE span bytes fixed in all three sentences and
// make identical edits outside it. Decisions are drawn from a per-record
// stream seeded by (seed, triplet key), so batch order and parallelism do
// not change outputs.

// Dictionary words outside the span become a uniformly chosen misspelling
// with probability `rate`.
Triplet augment_spelling(const Triplet& t, const SpellingDict& dict,
                         double rate, std::uint64_t seed);

enum class TfidfMode { insert, replace };

// replace: the k lowest-TF-IDF eligible tokens are replaced by vocabulary
// tokens sampled by global TF-IDF mass. insert: k sampled tokens are placed
// at uniformly chosen token boundaries outside the span interior.
Triplet augment_tfidf(const Triplet& t, const TfidfStats& stats,
                      TfidfMode mode, std::size_t k, std::uint64_t seed);

// In-vocabulary tokens outside the span are replaced by their nearest
// neighbor with probability `rate`; out-of-vocabulary tokens are skipped.
Triplet augment_embedding(const Triplet& t, const EmbeddingTable& table,
                          double rate, std::uint64_t seed);

}  // namespace forge
