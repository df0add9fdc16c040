#include "forge/triplet.hpp"

#include <algorithm>
#include <thread>

#include "forge/errors.hpp"
#include "forge/text.hpp"

namespace forge {

std::string triplet_key(const Triplet& t) {
  return t.doc_id + ":" + std::to_string(t.index) + ":" + t.mwe;
}

std::optional<SynonymOccurrence> find_synonym_occurrence(
    const ContextSentence& sentence, const NounCompoundEntry& entry) {
  std::optional<SynonymOccurrence> best;
  for (const std::string& synonym : entry.figurative_synonyms) {
    std::optional<std::size_t> pos = find_whole_word(sentence.text, synonym);
    if (!pos) continue;
    bool better = !best || *pos < best->begin ||
                  (*pos == best->begin && synonym.size() > best->synonym.size());
    if (better) {
      best = SynonymOccurrence{synonym, *pos, *pos + synonym.size()};
    }
  }
  return best;
}

namespace {

std::string substitute(const std::string& text, std::size_t begin,
                       std::size_t end, const std::string& replacement) {
  std::string cased = copy_first_letter_case(replacement, text[begin]);
  std::string out;
  out.reserve(text.size() - (end - begin) + cased.size());
  out.append(text, 0, begin);
  out.append(cased);
  out.append(text, end, text.size() - end);
  return out;
}

}  // namespace

Triplet forge_triplet(const ContextSentence& sentence,
                      const NounCompoundEntry& entry,
                      const SynonymOccurrence& occurrence) {
  Triplet t;
  t.mwe = entry.mwe;
  t.e = substitute(sentence.text, occurrence.begin, occurrence.end, entry.mwe);
  t.e_c = sentence.text;
  t.e_i = substitute(sentence.text, occurrence.begin, occurrence.end,
                     entry.literal_paraphrases.front());
  t.span_start = occurrence.begin;
  t.span_end = occurrence.begin + entry.mwe.size();
  t.doc_id = sentence.doc_id;
  t.index = sentence.index;
  t.prev = sentence.prev;
  t.next = sentence.next;
  return t;
}

std::vector<Triplet> generate_bronze(
    const std::vector<ContextSentence>& sentences,
    const std::vector<NounCompoundEntry>& lexicon, unsigned threads) {
  if (threads == 0) threads = thread_cap();
  threads = std::min<unsigned>(threads, sentences.size() ? sentences.size() : 1);

  auto scan_range = [&](std::size_t begin, std::size_t end,
                        std::vector<Triplet>& out) {
    for (std::size_t i = begin; i < end; ++i) {
      for (const NounCompoundEntry& entry : lexicon) {
        if (auto occ = find_synonym_occurrence(sentences[i], entry)) {
          out.push_back(forge_triplet(sentences[i], entry, *occ));
        }
      }
    }
  };

  std::vector<Triplet> triplets;
  if (threads <= 1) {
    scan_range(0, sentences.size(), triplets);
  } else {
    std::vector<std::vector<Triplet>> parts(threads);
    std::vector<std::thread> workers;
    std::size_t chunk = (sentences.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = std::min<std::size_t>(t * chunk, sentences.size());
      std::size_t end = std::min<std::size_t>(begin + chunk, sentences.size());
      workers.emplace_back(
          [&, begin, end, t] { scan_range(begin, end, parts[t]); });
    }
    for (auto& w : workers) w.join();
    for (auto& p : parts) {
      triplets.insert(triplets.end(), std::make_move_iterator(p.begin()),
                      std::make_move_iterator(p.end()));
    }
  }

  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
              if (a.index != b.index) return a.index < b.index;
              return a.mwe < b.mwe;
            });
  return triplets;
}

Json triplet_to_json(const Triplet& t) {
  Json j;
  j["mwe"] = t.mwe;
  j["e"] = t.e;
  j["e_c"] = t.e_c;
  j["e_i"] = t.e_i;
  j["span_start"] = t.span_start;
  j["span_end"] = t.span_end;
  j["doc_id"] = t.doc_id;
  j["index"] = t.index;
  if (t.prev) j["prev"] = *t.prev;
  if (t.next) j["next"] = *t.next;
  return j;
}

Triplet triplet_from_json(const Json& j, const std::string& where,
                          std::size_t lineno) {
  try {
    Triplet t;
    t.mwe = j.at("mwe").get<std::string>();
    t.e = j.at("e").get<std::string>();
    t.e_c = j.at("e_c").get<std::string>();
    t.e_i = j.at("e_i").get<std::string>();
    t.span_start = j.at("span_start").get<std::size_t>();
    t.span_end = j.at("span_end").get<std::size_t>();
    t.doc_id = j.at("doc_id").get<std::string>();
    t.index = j.at("index").get<std::size_t>();
    if (j.contains("prev")) t.prev = j.at("prev").get<std::string>();
    if (j.contains("next")) t.next = j.at("next").get<std::string>();
    return t;
  } catch (const Json::exception& e) {
    throw ParseError(where, lineno, e.what());
  }
}

std::vector<Triplet> read_triplets_jsonl(const std::filesystem::path& path) {
  std::vector<Triplet> out;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    out.push_back(triplet_from_json(j, path.string(), lineno));
  });
  return out;
}

void write_triplets_jsonl(const std::filesystem::path& path,
                          const std::vector<Triplet>& triplets) {
  std::vector<Json> records;
  records.reserve(triplets.size());
  for (const auto& t : triplets) records.push_back(triplet_to_json(t));
  write_jsonl_atomic(path, records);
}

}  // namespace forge
