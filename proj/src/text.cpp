#include "forge/text.hpp"

#include <cstdlib>
#include <thread>

namespace forge {

unsigned thread_cap() {
  if (const char* env = std::getenv("FORGE_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower_ascii(c);
  return out;
}

std::string normalize_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space_char(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < n && is_word_char(text[i])) ++i;
    spans.push_back({begin, i});
  }
  return spans;
}

std::vector<std::string> tokenize_lower(std::string_view text) {
  std::vector<std::string> out;
  for (const TokenSpan& s : tokenize_spans(text)) {
    out.push_back(to_lower(text.substr(s.begin, s.size())));
  }
  return out;
}

std::size_t whitespace_token_count(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : text) {
    if (is_space_char(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

namespace {

bool matches_at(std::string_view text, std::string_view phrase,
                std::size_t pos) {
  if (pos + phrase.size() > text.size()) return false;
  for (std::size_t i = 0; i < phrase.size(); ++i) {
    if (to_lower_ascii(text[pos + i]) != phrase[i]) return false;
  }
  // whole-word boundary on both sides
  if (pos > 0 && is_word_char(text[pos - 1])) return false;
  std::size_t end = pos + phrase.size();
  if (end < text.size() && is_word_char(text[end])) return false;
  return true;
}

}  // namespace

std::optional<std::size_t> find_whole_word(std::string_view text,
                                           std::string_view phrase,
                                           std::size_t from) {
  if (phrase.empty() || phrase.size() > text.size()) return std::nullopt;
  for (std::size_t pos = from; pos + phrase.size() <= text.size(); ++pos) {
    if (matches_at(text, phrase, pos)) return pos;
  }
  return std::nullopt;
}

std::string copy_first_letter_case(std::string_view replacement,
                                   char original_first) {
  std::string out(replacement);
  if (!out.empty() && is_alpha_ascii(out.front()) &&
      is_alpha_ascii(original_first)) {
    out.front() = is_upper_ascii(original_first) ? to_upper_ascii(out.front())
                                                 : to_lower_ascii(out.front());
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view key) {
  return splitmix64(base_seed ^ fnv1a64(key));
}

}  // namespace forge
