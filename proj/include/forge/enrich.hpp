#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/lexicon.hpp"

namespace forge {

enum class ContextMode { sentence, paragraph };

std::string context_mode_to_string(ContextMode m);
ContextMode context_mode_from_string(const std::string& s);

enum class AttachmentKind { gloss, inference };

struct Attachment {
  AttachmentKind kind;
  std::string text;
};

// A rendered model input: the (possibly paragraph-extended) base text plus
// any knowledge attachments, joined by kSeparator.
struct EnrichedInput {
  std::string base;
  ContextMode context_mode = ContextMode::sentence;
  std::vector<Attachment> attachments;
  std::string rendered;
};

inline constexpr const char* kSeparator = " [SEP] ";

// Commonsense relation types for inference records.
enum class Relation { xNeed, xIntent, xWant, xReact, xEffect, xAttr };

std::string relation_to_string(Relation r);
Relation relation_from_string(const std::string& s, const std::string& where,
                              std::size_t lineno);

struct InferenceRecord {
  std::string doc_id;
  std::size_t index = 0;
  Relation relation = Relation::xNeed;
  std::string text;
};

// File-backed inference provider. Records for one (doc_id, index) key keep
// their file order.
class InferenceStore {
 public:
  static InferenceStore load(const std::filesystem::path& path);

  void add(const InferenceRecord& record);
  const std::vector<InferenceRecord>& records_for(const std::string& doc_id,
                                                  std::size_t index) const;

 private:
  std::map<std::pair<std::string, std::size_t>, std::vector<InferenceRecord>>
      by_key_;
};

// Rejects gloss + paragraph (the one undefined pairing) with
// InvalidEnrichmentCombo; every other pairing is allowed.
void validate_enrichment_combo(AttachmentKind kind, ContextMode mode);

// sentence mode: the text unchanged. paragraph mode: prev/text/next joined
// by single spaces, absent neighbors omitted.
std::string render_local(const ContextSentence& sentence, ContextMode mode);

// Appends up to n glosses per MWE component word, interleaved by gloss rank
// (all words' first glosses, then all second glosses, ...) so the attachment
// list for n is a prefix of the list for n+1. Gloss texts carry a "word: "
// prefix. The paragraph combination is not defined for glosses and raises
// InvalidEnrichmentCombo.
EnrichedInput attach_glosses(const std::string& base, const std::string& mwe,
                             const GlossStore& store, std::size_t n);

// Appends the first k (5 or 12) inference texts for the sentence's key to
// its locally-rendered text.
EnrichedInput attach_inferences(const ContextSentence& sentence,
                                const InferenceStore& store, int k,
                                ContextMode local_mode);

}  // namespace forge
