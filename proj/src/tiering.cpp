#include "forge/tiering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "forge/errors.hpp"
#include "forge/text.hpp"

namespace forge {

FrequencyVector::FrequencyVector(
    std::vector<std::pair<std::string, std::uint64_t>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  std::erase_if(entries_, [](const auto& e) { return e.second == 0; });
}

void FrequencyVector::add(const FrequencyVector& other) {
  std::vector<std::pair<std::string, std::uint64_t>> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      merged.push_back(*a++);
    } else if (b->first < a->first) {
      merged.push_back(*b++);
    } else {
      merged.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  merged.insert(merged.end(), a, entries_.end());
  merged.insert(merged.end(), b, other.entries_.end());
  entries_ = std::move(merged);
}

std::uint64_t FrequencyVector::count(std::string_view token) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), token,
      [](const auto& e, std::string_view t) { return e.first < t; });
  if (it == entries_.end() || it->first != token) return 0;
  return it->second;
}

FrequencyVector count_vector(std::string_view text) {
  std::map<std::string, std::uint64_t> counts;
  for (const TokenSpan& s : tokenize_spans(text)) {
    counts[to_lower(text.substr(s.begin, s.size()))] += 1;
  }
  return FrequencyVector(
      std::vector<std::pair<std::string, std::uint64_t>>(counts.begin(), counts.end()));
}

double cosine(const FrequencyVector& a, const FrequencyVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += static_cast<double>(ia->second) * static_cast<double>(ib->second);
      ++ia;
      ++ib;
    }
  }
  for (const auto& [t, c] : a.entries()) {
    norm_a += static_cast<double>(c) * static_cast<double>(c);
  }
  for (const auto& [t, c] : b.entries()) {
    norm_b += static_cast<double>(c) * static_cast<double>(c);
  }
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

std::vector<ReferenceSentence> read_reference_jsonl(
    const std::filesystem::path& path) {
  std::vector<ReferenceSentence> refs;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    if (!j.contains("mwe") || !j.at("mwe").is_string() ||
        !j.contains("sentence") || !j.at("sentence").is_string()) {
      throw ParseError(path.string(), lineno, "expected string fields mwe, sentence");
    }
    refs.push_back({j.at("mwe").get<std::string>(),
                    j.at("sentence").get<std::string>()});
  });
  return refs;
}

ReferenceProfile ReferenceProfile::build(
    const std::vector<ReferenceSentence>& refs) {
  std::map<std::string, FrequencyVector> by_mwe;
  for (const ReferenceSentence& r : refs) {
    by_mwe[r.mwe].add(count_vector(r.sentence));
  }
  ReferenceProfile p;
  p.profiles_.assign(by_mwe.begin(), by_mwe.end());
  return p;
}

double ReferenceProfile::score(const Triplet& t) const {
  auto it = std::lower_bound(
      profiles_.begin(), profiles_.end(), t.mwe,
      [](const auto& e, const std::string& m) { return e.first < m; });
  if (it == profiles_.end() || it->first != t.mwe) return 0.0;
  return cosine(count_vector(t.e), it->second);
}

std::vector<RankedEntry> rank_entries(const std::vector<Triplet>& triplets,
                                      const ReferenceProfile& profile) {
  std::vector<RankedEntry> out;
  out.reserve(triplets.size());
  for (const Triplet& t : triplets) {
    out.push_back({t, profile.score(t), t.mwe});
  }
  return out;
}

namespace {

bool balanced_delimiters(std::string_view text) {
  std::vector<char> stack;
  std::size_t double_quotes = 0;
  for (char c : text) {
    switch (c) {
      case '"':
        ++double_quotes;
        break;
      case '(':
      case '[':
      case '{':
        stack.push_back(c);
        break;
      case ')':
        if (stack.empty() || stack.back() != '(') return false;
        stack.pop_back();
        break;
      case ']':
        if (stack.empty() || stack.back() != '[') return false;
        stack.pop_back();
        break;
      case '}':
        if (stack.empty() || stack.back() != '{') return false;
        stack.pop_back();
        break;
      default:
        break;
    }
  }
  return stack.empty() && double_quotes % 2 == 0;
}

}  // namespace

bool structural_filter(const Triplet& t) {
  std::size_t tokens = whitespace_token_count(t.e);
  if (tokens < 5 || tokens > 80) return false;
  if (!balanced_delimiters(t.e)) return false;
  std::size_t alpha = 0;
  for (char c : t.e) {
    if (is_alpha_ascii(c)) ++alpha;
  }
  if (t.e.empty() ||
      static_cast<double>(alpha) < 0.6 * static_cast<double>(t.e.size())) {
    return false;
  }
  if (t.span_start >= t.span_end || t.span_end > t.e.size()) return false;
  return true;
}

std::vector<RankedEntry> cut_tier(const std::vector<RankedEntry>& ranked,
                                  double p) {
  if (!(p > 0.0) || p > 100.0) throw InvalidPercent(p);
  std::vector<RankedEntry> sorted = ranked;
  std::sort(sorted.begin(), sorted.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              const Triplet& ta = a.triplet;
              const Triplet& tb = b.triplet;
              if (ta.doc_id != tb.doc_id) return ta.doc_id < tb.doc_id;
              if (ta.index != tb.index) return ta.index < tb.index;
              return ta.mwe < tb.mwe;
            });
  // exact ceil(p/100 * N) in basis points; float division would drift at
  // decile boundaries
  auto basis_points = static_cast<std::uint64_t>(std::llround(p * 100.0));
  std::uint64_t n = sorted.size();
  std::uint64_t take = (basis_points * n + 9999) / 10000;
  if (take > n) take = n;
  sorted.resize(take);
  return sorted;
}

std::vector<Triplet> random_sample(const std::vector<Triplet>& entries,
                                   std::size_t k, std::uint64_t seed) {
  if (k > entries.size()) throw SampleTooLarge(k, entries.size());
  std::mt19937_64 rng(seed);
  std::vector<Triplet> out;
  out.reserve(k);
  std::size_t remaining = entries.size();
  std::size_t needed = k;
  // selection sampling: pick each item with probability needed/remaining
  for (const Triplet& t : entries) {
    if (needed == 0) break;
    if (bounded(rng, remaining) < needed) {
      out.push_back(t);
      --needed;
    }
    --remaining;
  }
  return out;
}

Json ranked_to_json(const RankedEntry& r) {
  Json j = triplet_to_json(r.triplet);
  j["score"] = r.score;
  return j;
}

}  // namespace forge
