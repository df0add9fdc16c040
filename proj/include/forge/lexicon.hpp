#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/jsonl.hpp"

namespace forge {

// One substitution-lexicon row: a noun-compound MWE, the synonyms of its
// figurative sense, and paraphrases of its literal sense.
struct NounCompoundEntry {
  std::string mwe;
  std::vector<std::string> figurative_synonyms;
  std::vector<std::string> literal_paraphrases;
};

// Validated entries in file order. Rejects malformed lines (ParseError with
// line number), duplicate MWEs, entries whose mwe has fewer than two tokens,
// and synonym/paraphrase strings equal to the mwe. All strings must be
// lowercase and single-spaced.
std::vector<NounCompoundEntry> load_lexicon(const std::filesystem::path& path);

Json lexicon_entry_to_json(const NounCompoundEntry& e);
void write_lexicon(const std::filesystem::path& path,
                   const std::vector<NounCompoundEntry>& entries);

// Word -> ordered glosses. Lookup is case-insensitive; lists are
// duplicate-free (first occurrence wins).
class GlossStore {
 public:
  static GlossStore load(const std::filesystem::path& path);

  void add(const std::string& word, const std::vector<std::string>& glosses);

  // First min(n, available) glosses in store order; empty for unknown words.
  std::vector<std::string> glosses_for(const std::string& word,
                                       std::size_t n) const;

  std::size_t word_count() const { return store_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> store_;
};

}  // namespace forge
