#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forge {

// Word characters are ASCII alphanumerics plus '_' (the MWE-collapse glue).
inline bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

inline bool is_space_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline char to_lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline char to_upper_ascii(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

inline bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_alpha_ascii(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string to_lower(std::string_view s);

// Collapses whitespace runs to single spaces and trims both ends.
std::string normalize_whitespace(std::string_view s);

// Byte span [begin, end) of a token inside its source string.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

// Maximal runs of word characters.
std::vector<TokenSpan> tokenize_spans(std::string_view text);

// Lowercased token texts, in order.
std::vector<std::string> tokenize_lower(std::string_view text);

// Number of whitespace-separated fields.
std::size_t whitespace_token_count(std::string_view text);

// Leftmost occurrence of `phrase` (lowercase, single-spaced) in `text`,
// case-insensitive, with non-word characters (or string ends) on both sides.
std::optional<std::size_t> find_whole_word(std::string_view text,
                                           std::string_view phrase,
                                           std::size_t from = 0);

// Copies the first letter's case from `original_first` onto `replacement`.
std::string copy_first_letter_case(std::string_view replacement,
                                   char original_first);

// Worker count: FORGE_THREADS when set to a positive integer, otherwise
// hardware concurrency, never less than 1.
unsigned thread_cap();

// FNV-1a, 64-bit. Pinned here so hashed artifacts do not depend on the
// standard library's std::hash.
std::uint64_t fnv1a64(std::string_view bytes);

std::uint64_t splitmix64(std::uint64_t x);

// Per-record RNG seed: parallel and serial runs must agree, so each record
// derives its own stream from (base seed, record key).
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view key);

// Cross-platform deterministic helpers over a raw 64-bit RNG draw.
// std::uniform_*_distribution is implementation-defined, so we avoid it.
template <typename Rng>
std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  // modulo bias is < n / 2^64, irrelevant at dataset scale
  return rng() % n;
}

template <typename Rng>
double unit_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace forge
