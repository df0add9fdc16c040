#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "forge/triplet.hpp"

namespace forge {

// Sparse token counts, kept sorted by token so dot products are a single
// merge pass and accumulation order is fixed.
class FrequencyVector {
 public:
  FrequencyVector() = default;
  explicit FrequencyVector(std::vector<std::pair<std::string, std::uint64_t>> entries);

  void add(const FrequencyVector& other);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::uint64_t count(std::string_view token) const;
  const std::vector<std::pair<std::string, std::uint64_t>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::uint64_t>> entries_;  // sorted, no zeros
};

// Lowercased alphanumeric-run tokenization; punctuation and whitespace split.
FrequencyVector count_vector(std::string_view text);

// dot(a,b) / (|a|*|b|); zero if either vector is empty.
double cosine(const FrequencyVector& a, const FrequencyVector& b);

// A Bronze triplet with its similarity score against the reference profile
// of the same MWE.
struct RankedEntry {
  Triplet triplet;
  double score = 0.0;
  std::string reference_mwe;
};

// One trusted usage example for an MWE.
struct ReferenceSentence {
  std::string mwe;
  std::string sentence;
};

std::vector<ReferenceSentence> read_reference_jsonl(
    const std::filesystem::path& path);

// Per-MWE profile: sum of count vectors of all reference sentences for that
// MWE. Triplets score their E sentence against their own MWE's profile;
// MWEs with no reference data score 0.
class ReferenceProfile {
 public:
  static ReferenceProfile build(const std::vector<ReferenceSentence>& refs);
  double score(const Triplet& t) const;

 private:
  std::vector<std::pair<std::string, FrequencyVector>> profiles_;  // sorted by mwe
};

std::vector<RankedEntry> rank_entries(const std::vector<Triplet>& triplets,
                                      const ReferenceProfile& profile);

// Structural sanity checks on the E sentence: 5..80 whitespace tokens,
// balanced quotes/brackets, >= 60% alphabetic characters, span in bounds.
bool structural_filter(const Triplet& t);

// Top ceil(p/100 * N) by score descending; ties broken by
// (doc_id, index, mwe) ascending so tiers nest deterministically.
std::vector<RankedEntry> cut_tier(const std::vector<RankedEntry>& ranked,
                                  double p);

// Uniform sample without replacement, reproducible from `seed`; selected
// entries keep their input order.
std::vector<Triplet> random_sample(const std::vector<Triplet>& entries,
                                   std::size_t k, std::uint64_t seed);

Json ranked_to_json(const RankedEntry& r);

}  // namespace forge
