#include "forge/enrich.hpp"

#include <array>

#include "forge/errors.hpp"
#include "forge/text.hpp"

namespace forge {

std::string context_mode_to_string(ContextMode m) {
  return m == ContextMode::sentence ? "sentence" : "paragraph";
}

ContextMode context_mode_from_string(const std::string& s) {
  if (s == "sentence") return ContextMode::sentence;
  if (s == "paragraph") return ContextMode::paragraph;
  throw ConfigError("context mode must be sentence or paragraph, got: " + s);
}

namespace {

constexpr std::array<const char*, 6> kRelationNames = {
    "xNeed", "xIntent", "xWant", "xReact", "xEffect", "xAttr"};

}  // namespace

std::string relation_to_string(Relation r) {
  return kRelationNames[static_cast<std::size_t>(r)];
}

Relation relation_from_string(const std::string& s, const std::string& where,
                              std::size_t lineno) {
  for (std::size_t i = 0; i < kRelationNames.size(); ++i) {
    if (s == kRelationNames[i]) return static_cast<Relation>(i);
  }
  throw ParseError(where, lineno, "unknown relation type: " + s);
}

InferenceStore InferenceStore::load(const std::filesystem::path& path) {
  InferenceStore store;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    InferenceRecord r;
    try {
      r.doc_id = j.at("doc_id").get<std::string>();
      r.index = j.at("index").get<std::size_t>();
      r.relation = relation_from_string(j.at("relation").get<std::string>(),
                                        path.string(), lineno);
      r.text = j.at("text").get<std::string>();
    } catch (const Json::exception& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
    store.add(r);
  });
  return store;
}

void InferenceStore::add(const InferenceRecord& record) {
  by_key_[{record.doc_id, record.index}].push_back(record);
}

const std::vector<InferenceRecord>& InferenceStore::records_for(
    const std::string& doc_id, std::size_t index) const {
  static const std::vector<InferenceRecord> kEmpty;
  auto it = by_key_.find({doc_id, index});
  return it == by_key_.end() ? kEmpty : it->second;
}

void validate_enrichment_combo(AttachmentKind kind, ContextMode mode) {
  if (kind == AttachmentKind::gloss && mode == ContextMode::paragraph) {
    throw InvalidEnrichmentCombo("gloss attachments with paragraph context");
  }
}

std::string render_local(const ContextSentence& sentence, ContextMode mode) {
  if (mode == ContextMode::sentence) return sentence.text;
  std::string out;
  if (sentence.prev) {
    out += *sentence.prev;
    out += ' ';
  }
  out += sentence.text;
  if (sentence.next) {
    out += ' ';
    out += *sentence.next;
  }
  return out;
}

namespace {

std::string render(const std::string& base,
                   const std::vector<Attachment>& attachments) {
  std::string out = base;
  for (const Attachment& a : attachments) {
    out += kSeparator;
    out += a.text;
  }
  return out;
}

}  // namespace

EnrichedInput attach_glosses(const std::string& base, const std::string& mwe,
                             const GlossStore& store, std::size_t n) {
  std::vector<std::string> words;
  for (const TokenSpan& s : tokenize_spans(mwe)) {
    words.push_back(mwe.substr(s.begin, s.size()));
  }
  if (words.size() < 2) {
    throw ConfigError("gloss attachment needs an MWE of at least two words: " + mwe);
  }
  EnrichedInput out;
  out.base = base;
  out.context_mode = ContextMode::sentence;
  // rank-major order keeps attachments(n) a prefix of attachments(n+1)
  for (std::size_t rank = 0; rank < n; ++rank) {
    for (const std::string& word : words) {
      std::vector<std::string> glosses = store.glosses_for(word, rank + 1);
      if (glosses.size() == rank + 1) {
        out.attachments.push_back(
            {AttachmentKind::gloss, word + ": " + glosses[rank]});
      }
    }
  }
  out.rendered = render(base, out.attachments);
  return out;
}

EnrichedInput attach_inferences(const ContextSentence& sentence,
                                const InferenceStore& store, int k,
                                ContextMode local_mode) {
  if (k != 5 && k != 12) throw InvalidInferenceCount(k);
  EnrichedInput out;
  out.base = render_local(sentence, local_mode);
  out.context_mode = local_mode;
  const std::vector<InferenceRecord>& records =
      store.records_for(sentence.doc_id, sentence.index);
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), records.size());
  for (std::size_t i = 0; i < take; ++i) {
    out.attachments.push_back({AttachmentKind::inference, records[i].text});
  }
  out.rendered = render(out.base, out.attachments);
  return out;
}

}  // namespace forge
