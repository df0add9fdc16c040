#include "forge/corpus.hpp"

#include <algorithm>
#include <array>
#include <string_view>
#include <thread>

#include "forge/errors.hpp"
#include "forge/text.hpp"

namespace forge {

namespace {

bool line_contains_ci(std::string_view line, std::string_view marker) {
  if (line.size() < marker.size()) return false;
  for (std::size_t i = 0; i + marker.size() <= line.size(); ++i) {
    std::size_t j = 0;
    while (j < marker.size() &&
           to_upper_ascii(line[i + j]) == marker[j]) {
      ++j;
    }
    if (j == marker.size()) return true;
  }
  return false;
}

}  // namespace

std::string strip_boilerplate(const std::string& raw) {
  constexpr std::string_view kStart = "*** START OF";
  constexpr std::string_view kEnd = "*** END OF";

  std::vector<std::pair<std::size_t, std::size_t>> lines;  // [begin, end)
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t nl = raw.find('\n', pos);
    std::size_t end = (nl == std::string::npos) ? raw.size() : nl;
    lines.emplace_back(pos, end);
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }

  std::size_t start_line = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line(raw.data() + lines[i].first,
                          lines[i].second - lines[i].first);
    if (line_contains_ci(line, kStart)) {
      start_line = i;
      break;
    }
  }
  if (start_line == lines.size()) return raw;

  std::size_t end_line = lines.size();
  for (std::size_t i = start_line + 1; i < lines.size(); ++i) {
    std::string_view line(raw.data() + lines[i].first,
                          lines[i].second - lines[i].first);
    if (line_contains_ci(line, kEnd)) {
      end_line = i;
      break;
    }
  }
  if (end_line == lines.size()) return raw;

  std::size_t body_begin = lines[start_line].second;
  if (body_begin < raw.size() && raw[body_begin] == '\n') ++body_begin;
  std::size_t body_end = lines[end_line].first;
  if (body_begin >= body_end) return std::string();
  return raw.substr(body_begin, body_end - body_begin);
}

namespace {

const std::array<std::string_view, 4> kAbbreviations = {"mr", "mrs", "dr",
                                                        "st"};

// Word immediately before position `dot` (exclusive), letters only.
std::string_view word_before(std::string_view text, std::size_t dot) {
  std::size_t end = dot;
  std::size_t begin = end;
  while (begin > 0 && is_alpha_ascii(text[begin - 1])) --begin;
  return text.substr(begin, end - begin);
}

bool is_abbreviation(std::string_view word) {
  if (word.empty()) return false;
  if (word.size() == 1 && is_upper_ascii(word[0])) return true;
  std::string lower;
  lower.reserve(word.size());
  for (char c : word) lower.push_back(to_lower_ascii(c));
  for (std::string_view abbr : kAbbreviations) {
    if (lower == abbr) return true;
  }
  return false;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::vector<ContextSentence> segment_sentences(const Document& doc) {
  const std::string text = normalize_whitespace(doc.body);
  if (text.empty()) throw EmptyDocument(doc.doc_id);

  std::vector<std::string> sentences;
  std::size_t sentence_begin = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t run_begin = i;
    while (i < n && is_terminator(text[i])) ++i;
    bool single_dot = (i - run_begin == 1 && text[run_begin] == '.');
    if (single_dot && is_abbreviation(word_before(text, run_begin))) continue;
    if (i >= n) break;  // end of text closes the final sentence below
    if (text[i] != ' ') continue;
    // normalized text has single spaces, so the split candidate is i + 1
    if (i + 1 < n && is_upper_ascii(text[i + 1])) {
      sentences.push_back(text.substr(sentence_begin, i - sentence_begin));
      sentence_begin = i + 1;
      ++i;
    }
  }
  if (sentence_begin < n) sentences.push_back(text.substr(sentence_begin));

  std::vector<ContextSentence> out;
  out.reserve(sentences.size());
  for (std::size_t k = 0; k < sentences.size(); ++k) {
    ContextSentence s;
    s.doc_id = doc.doc_id;
    s.index = k;
    s.text = sentences[k];
    if (k > 0) s.prev = sentences[k - 1];
    if (k + 1 < sentences.size()) s.next = sentences[k + 1];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Document> load_corpus_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InputError("not a directory: " + dir.string());
  }
  std::vector<Document> docs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    Document doc;
    doc.doc_id = entry.path().stem().string();
    doc.title = doc.doc_id;
    doc.body = strip_boilerplate(read_text(entry.path()));
    if (normalize_whitespace(doc.body).empty()) throw EmptyDocument(doc.doc_id);
    docs.push_back(std::move(doc));
  }
  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (docs[i].doc_id == docs[i - 1].doc_id) throw DuplicateEntry(docs[i].doc_id);
  }
  return docs;
}

std::vector<ContextSentence> segment_corpus(const std::vector<Document>& docs,
                                            unsigned threads) {
  if (threads == 0) threads = thread_cap();
  threads = std::min<unsigned>(threads, docs.size() ? docs.size() : 1);

  std::vector<std::vector<ContextSentence>> parts(docs.size());
  if (threads <= 1 || docs.size() <= 1) {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      parts[i] = segment_sentences(docs[i]);
    }
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < docs.size(); i += threads) {
            parts[i] = segment_sentences(docs[i]);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<ContextSentence> out;
  for (auto& p : parts) {
    out.insert(out.end(), std::make_move_iterator(p.begin()),
               std::make_move_iterator(p.end()));
  }
  // documents may finish out of order; the contract is (doc_id, index)
  std::sort(out.begin(), out.end(),
            [](const ContextSentence& a, const ContextSentence& b) {
              if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
              return a.index < b.index;
            });
  return out;
}

Json sentence_to_json(const ContextSentence& s) {
  Json j;
  j["doc_id"] = s.doc_id;
  j["index"] = s.index;
  j["text"] = s.text;
  if (s.prev) j["prev"] = *s.prev;
  if (s.next) j["next"] = *s.next;
  return j;
}

ContextSentence sentence_from_json(const Json& j, const std::string& where,
                                   std::size_t lineno) {
  try {
    ContextSentence s;
    s.doc_id = j.at("doc_id").get<std::string>();
    s.index = j.at("index").get<std::size_t>();
    s.text = j.at("text").get<std::string>();
    if (j.contains("prev")) s.prev = j.at("prev").get<std::string>();
    if (j.contains("next")) s.next = j.at("next").get<std::string>();
    return s;
  } catch (const Json::exception& e) {
    throw ParseError(where, lineno, e.what());
  }
}

std::vector<ContextSentence> read_sentences_jsonl(
    const std::filesystem::path& path) {
  std::vector<ContextSentence> out;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    out.push_back(sentence_from_json(j, path.string(), lineno));
  });
  return out;
}

void write_sentences_jsonl(const std::filesystem::path& path,
                           const std::vector<ContextSentence>& sentences) {
  std::vector<Json> records;
  records.reserve(sentences.size());
  for (const auto& s : sentences) records.push_back(sentence_to_json(s));
  write_jsonl_atomic(path, records);
}

}  // namespace forge
