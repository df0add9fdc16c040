#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/jsonl.hpp"
#include "forge/lexicon.hpp"

namespace forge {

// The (E, E_c, E_i) trio. `e` carries the MWE at [span_start, span_end);
// `e_c` is the untouched corpus sentence (figurative synonym in place);
// `e_i` carries the first literal paraphrase. All three are byte-identical
// outside the substituted region.
struct Triplet {
  std::string mwe;
  std::string e;
  std::string e_c;
  std::string e_i;
  std::size_t span_start = 0;
  std::size_t span_end = 0;
  std::string doc_id;
  std::size_t index = 0;
  std::optional<std::string> prev;
  std::optional<std::string> next;
};

// Stable identifier used for annotation joins and per-record seeding.
std::string triplet_key(const Triplet& t);

struct SynonymOccurrence {
  std::string synonym;    // lexicon form (lowercase)
  std::size_t begin = 0;  // byte span of the matched text
  std::size_t end = 0;
};

// Leftmost whole-word, case-insensitive occurrence of any figurative synonym
// of `entry`. Ties at the same position go to the longest synonym.
std::optional<SynonymOccurrence> find_synonym_occurrence(
    const ContextSentence& sentence, const NounCompoundEntry& entry);

// Builds the triplet for one occurrence: synonym -> mwe gives E, the raw
// sentence is E_c, synonym -> first literal paraphrase gives E_i. The
// replacement's first letter copies the case of the replaced text's first
// letter. No grammatical repair is attempted.
Triplet forge_triplet(const ContextSentence& sentence,
                      const NounCompoundEntry& entry,
                      const SynonymOccurrence& occurrence);

// One triplet per (sentence, entry) pair with an occurrence, ordered by
// (doc_id, index, mwe). `threads` = 0 means use FORGE_THREADS/hardware.
std::vector<Triplet> generate_bronze(
    const std::vector<ContextSentence>& sentences,
    const std::vector<NounCompoundEntry>& lexicon, unsigned threads = 0);

Json triplet_to_json(const Triplet& t);
Triplet triplet_from_json(const Json& j, const std::string& where,
                          std::size_t lineno);

std::vector<Triplet> read_triplets_jsonl(const std::filesystem::path& path);
void write_triplets_jsonl(const std::filesystem::path& path,
                          const std::vector<Triplet>& triplets);

}  // namespace forge
