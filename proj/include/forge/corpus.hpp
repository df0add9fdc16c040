#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "forge/jsonl.hpp"

namespace forge {

struct Document {
  std::string doc_id;
  std::string title;
  std::string body;
};

struct ContextSentence {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;
  std::optional<std::string> prev;
  std::optional<std::string> next;
};

// Drops everything outside the first "*** START OF" / "*** END OF" marker
// pair (case-insensitive line match). Unmatched markers leave the text as-is
// rather than silently dropping a book.
std::string strip_boilerplate(const std::string& raw);

// Splits the body into sentences. A sentence ends at a run of '.', '!', '?'
// followed by whitespace and an uppercase letter, or at end of text. A lone
// '.' after Mr/Mrs/Dr/St or a single capital does not end a sentence.
// Whitespace is normalized (runs collapsed, ends trimmed) before splitting.
// Throws EmptyDocument when the body has no content.
std::vector<ContextSentence> segment_sentences(const Document& doc);

// Reads every .txt file in `dir` (doc_id = filename stem, sorted by doc_id)
// and strips boilerplate. Bodies that strip to nothing raise EmptyDocument.
std::vector<Document> load_corpus_dir(const std::filesystem::path& dir);

// Segments many documents, optionally in parallel; output is always sorted
// by (doc_id, index).
std::vector<ContextSentence> segment_corpus(const std::vector<Document>& docs,
                                            unsigned threads = 0);

Json sentence_to_json(const ContextSentence& s);
ContextSentence sentence_from_json(const Json& j, const std::string& where,
                                   std::size_t lineno);

std::vector<ContextSentence> read_sentences_jsonl(
    const std::filesystem::path& path);
void write_sentences_jsonl(const std::filesystem::path& path,
                           const std::vector<ContextSentence>& sentences);

}  // namespace forge
