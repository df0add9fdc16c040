#include <doctest.h>

#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forge/text.hpp"
#include "oracles.hpp"

using namespace forge;

TEST_CASE("normalize_whitespace collapses runs and trims ends") {
  CHECK(normalize_whitespace("  a  b ") == "a b");
  CHECK(normalize_whitespace("a\t\nb\r\nc") == "a b c");
  CHECK(normalize_whitespace("") == "");
  CHECK(normalize_whitespace("   \t \n ") == "");
  CHECK(normalize_whitespace("already clean") == "already clean");
}

TEST_CASE("to_lower is ASCII-only") {
  CHECK(to_lower("Guinea PIG 7") == "guinea pig 7");
  CHECK(to_lower("") == "");
}

TEST_CASE("tokenize_spans finds maximal word-character runs") {
  auto spans = tokenize_spans("Cat, cat!");
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].begin == 0);
  CHECK(spans[0].end == 3);
  CHECK(spans[1].begin == 5);
  CHECK(spans[1].end == 8);

  CHECK(tokenize_spans("").empty());
  CHECK(tokenize_spans("...!?").empty());

  // '_' is a word character: collapsed MWEs stay one token
  auto glued = tokenize_spans("a guinea_pig ran");
  REQUIRE(glued.size() == 3);
  CHECK(glued[1].size() == std::string("guinea_pig").size());
}

TEST_CASE("tokenize_lower lowercases in order") {
  CHECK(tokenize_lower("The Cat the") ==
        std::vector<std::string>{"the", "cat", "the"});
}

TEST_CASE("whitespace_token_count counts fields") {
  CHECK(whitespace_token_count("one two three") == 3);
  CHECK(whitespace_token_count("  padded   out  ") == 2);
  CHECK(whitespace_token_count("") == 0);
  CHECK(whitespace_token_count("single") == 1);
}

TEST_CASE("find_whole_word honors boundaries and case") {
  std::string text = "Testing subjects matter to the test subject here";
  // "testing subjects" must not match: boundary check
  auto hit = find_whole_word(text, "test subject");
  REQUIRE(hit.has_value());
  CHECK(text.substr(*hit, 12) == "test subject");

  CHECK_FALSE(find_whole_word("testing subjects matter", "test subject"));
  CHECK_FALSE(find_whole_word("a subtest subject", "test subject"));

  // case-insensitive, leftmost
  auto upper = find_whole_word("Test Subject fees rose", "test subject");
  REQUIRE(upper.has_value());
  CHECK(*upper == 0);

  // `from` skips earlier hits
  std::string twice = "cat here and cat there";
  auto first = find_whole_word(twice, "cat");
  REQUIRE(first.has_value());
  auto second = find_whole_word(twice, "cat", *first + 1);
  REQUIRE(second.has_value());
  CHECK(*second == 13);

  // cross-check a batch against the position-by-position oracle
  std::vector<std::string> texts = {
      "the cat sat on the cat mat",  "Cat! cat? cats.",
      "concatenate cats scattered",  "a cat",
      "cat",                         "",
  };
  for (const auto& t : texts) {
    auto expected = oracle::scan_occurrences(t, "cat");
    auto got = find_whole_word(t, "cat");
    if (expected.empty()) {
      CHECK_FALSE(got.has_value());
    } else {
      REQUIRE(got.has_value());
      CHECK(*got == expected.front());
    }
  }
}

TEST_CASE("copy_first_letter_case transfers leading case only") {
  CHECK(copy_first_letter_case("guinea pig", 'T') == "Guinea pig");
  CHECK(copy_first_letter_case("Guinea pig", 't') == "guinea pig");
  CHECK(copy_first_letter_case("guinea pig", 't') == "guinea pig");
  CHECK(copy_first_letter_case("", 'T') == "");
  // non-letter originals leave the replacement unchanged
  CHECK(copy_first_letter_case("word", '7') == "word");
}

TEST_CASE("fnv1a64 matches a literal reimplementation") {
  auto reference = [](std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  };
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);  // offset basis
  for (std::string s : {"a", "guinea pig", "seed=42", "\n", "\x01\x02"}) {
    CHECK(fnv1a64(s) == reference(s));
  }
}

TEST_CASE("splitmix64 matches a literal reimplementation") {
  auto reference = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  for (std::uint64_t x : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL, ~0ULL}) {
    CHECK(splitmix64(x) == reference(x));
  }
}

TEST_CASE("derive_seed is stable and key-sensitive") {
  CHECK(derive_seed(42, "doc:1:guinea pig") == derive_seed(42, "doc:1:guinea pig"));
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 64; ++i) {
    seen.insert(derive_seed(42, "key" + std::to_string(i)));
  }
  CHECK(seen.size() == 64);
  CHECK(derive_seed(1, "k") != derive_seed(2, "k"));
}

TEST_CASE("bounded and unit_real stay in range") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(bounded(rng, 10) < 10);
    double u = unit_real(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // n == 1 always yields 0
  CHECK(bounded(rng, 1) == 0);
}

TEST_CASE("thread_cap reads FORGE_THREADS and never returns zero") {
  const char* saved = std::getenv("FORGE_THREADS");
  std::string saved_value = saved ? saved : "";

  setenv("FORGE_THREADS", "3", 1);
  CHECK(thread_cap() == 3);

  setenv("FORGE_THREADS", "0", 1);
  CHECK(thread_cap() >= 1);

  setenv("FORGE_THREADS", "banana", 1);
  CHECK(thread_cap() >= 1);

  unsetenv("FORGE_THREADS");
  CHECK(thread_cap() >= 1);

  if (saved) setenv("FORGE_THREADS", saved_value.c_str(), 1);
}
