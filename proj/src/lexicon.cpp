#include "forge/lexicon.hpp"

#include <algorithm>
#include <unordered_set>

#include "forge/errors.hpp"
#include "forge/text.hpp"

namespace forge {

namespace {

bool is_lower_single_spaced(const std::string& s) {
  if (s.empty() || s.front() == ' ' || s.back() == ' ') return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (is_upper_ascii(c)) return false;
    if (c == ' ' && s[i - 1] == ' ') return false;
  }
  return true;
}

std::size_t space_separated_words(const std::string& s) {
  return whitespace_token_count(s);
}

std::vector<std::string> read_string_list(const Json& j, const char* field,
                                          const std::string& path,
                                          std::size_t lineno) {
  if (!j.contains(field) || !j.at(field).is_array()) {
    throw ParseError(path, lineno, std::string("missing or non-array field: ") + field);
  }
  std::vector<std::string> out;
  for (const Json& item : j.at(field)) {
    if (!item.is_string()) {
      throw ParseError(path, lineno, std::string(field) + " must contain strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<NounCompoundEntry> load_lexicon(const std::filesystem::path& path) {
  std::vector<NounCompoundEntry> entries;
  std::unordered_set<std::string> seen;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    NounCompoundEntry e;
    if (!j.contains("mwe") || !j.at("mwe").is_string()) {
      throw ParseError(path.string(), lineno, "missing or non-string field: mwe");
    }
    e.mwe = j.at("mwe").get<std::string>();
    e.figurative_synonyms =
        read_string_list(j, "figurative_synonyms", path.string(), lineno);
    e.literal_paraphrases =
        read_string_list(j, "literal_paraphrases", path.string(), lineno);

    if (space_separated_words(e.mwe) < 2) {
      throw ParseError(path.string(), lineno, "mwe must have at least two words: " + e.mwe);
    }
    if (!is_lower_single_spaced(e.mwe)) {
      throw ParseError(path.string(), lineno, "mwe must be lowercase and single-spaced: " + e.mwe);
    }
    if (e.figurative_synonyms.empty() || e.literal_paraphrases.empty()) {
      throw ParseError(path.string(), lineno, "synonym and paraphrase lists must be non-empty");
    }
    auto check_list = [&](std::vector<std::string>& list, const char* name) {
      std::unordered_set<std::string> uniq;
      std::vector<std::string> deduped;
      for (const std::string& s : list) {
        if (!is_lower_single_spaced(s)) {
          throw ParseError(path.string(), lineno,
                           std::string(name) + " must be lowercase and single-spaced: " + s);
        }
        if (s == e.mwe) {
          throw ParseError(path.string(), lineno,
                           std::string(name) + " equals the mwe itself: " + s);
        }
        if (uniq.insert(s).second) deduped.push_back(s);
      }
      list = std::move(deduped);
    };
    check_list(e.figurative_synonyms, "figurative_synonyms");
    check_list(e.literal_paraphrases, "literal_paraphrases");

    if (!seen.insert(e.mwe).second) throw DuplicateEntry(e.mwe);
    entries.push_back(std::move(e));
  });
  return entries;
}

Json lexicon_entry_to_json(const NounCompoundEntry& e) {
  Json j;
  j["mwe"] = e.mwe;
  j["figurative_synonyms"] = e.figurative_synonyms;
  j["literal_paraphrases"] = e.literal_paraphrases;
  return j;
}

void write_lexicon(const std::filesystem::path& path,
                   const std::vector<NounCompoundEntry>& entries) {
  std::vector<Json> records;
  records.reserve(entries.size());
  for (const auto& e : entries) records.push_back(lexicon_entry_to_json(e));
  write_jsonl_atomic(path, records);
}

GlossStore GlossStore::load(const std::filesystem::path& path) {
  GlossStore store;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    if (!j.contains("word") || !j.at("word").is_string()) {
      throw ParseError(path.string(), lineno, "missing or non-string field: word");
    }
    std::string word = to_lower(j.at("word").get<std::string>());
    if (store.store_.count(word)) throw DuplicateEntry(word);
    store.add(word, read_string_list(j, "glosses", path.string(), lineno));
  });
  return store;
}

void GlossStore::add(const std::string& word,
                     const std::vector<std::string>& glosses) {
  std::vector<std::string>& list = store_[to_lower(word)];
  for (const std::string& g : glosses) {
    if (std::find(list.begin(), list.end(), g) == list.end()) list.push_back(g);
  }
}

std::vector<std::string> GlossStore::glosses_for(const std::string& word,
                                                 std::size_t n) const {
  auto it = store_.find(to_lower(word));
  if (it == store_.end()) return {};
  std::size_t take = std::min(n, it->second.size());
  return std::vector<std::string>(it->second.begin(), it->second.begin() + take);
}

}  // namespace forge
