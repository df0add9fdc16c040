#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "forge/augment.hpp"
#include "forge/corpus.hpp"
#include "forge/errors.hpp"
#include "forge/lexicon.hpp"
#include "forge/text.hpp"
#include "forge/tiering.hpp"
#include "forge/triplet.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace forge;

namespace {

// A realistic triplet whose members differ inside the span only.
Triplet sample_triplet() {
  Triplet t;
  t.mwe = "guinea pig";
  t.e = "I initially feared that taking it would make me a guinea pig.";
  t.e_c = "I initially feared that taking it would make me a test subject.";
  t.e_i = "I initially feared that taking it would make me a animal.";
  t.span_start = t.e.find("guinea pig");
  t.span_end = t.span_start + std::string("guinea pig").size();
  t.doc_id = "doc";
  t.index = 7;
  return t;
}

std::string span_text(const Triplet& t) {
  return t.e.substr(t.span_start, t.span_end - t.span_start);
}

// Byte regions outside the substitution must survive augmentation checks
// member-by-member, using each member's own protected region.
void check_span_integrity(const Triplet& before, const Triplet& after) {
  CHECK(span_text(after) == span_text(before));
  std::size_t suffix_before = before.e.size() - before.span_end;
  std::size_t suffix_after = after.e.size() - after.span_end;
  // the three members still share prefix/suffix outside their regions
  CHECK(after.e.substr(0, after.span_start) ==
        after.e_c.substr(0, after.span_start));
  CHECK(after.e.substr(0, after.span_start) ==
        after.e_i.substr(0, after.span_start));
  CHECK(after.e.substr(after.span_end) ==
        after.e_c.substr(after.e_c.size() - suffix_after));
  CHECK(after.e.substr(after.span_end) ==
        after.e_i.substr(after.e_i.size() - suffix_after));
  // the e_c / e_i payloads inside the region are untouched
  std::string ec_payload_before = before.e_c.substr(
      before.span_start, before.e_c.size() - suffix_before - before.span_start);
  std::string ec_payload_after = after.e_c.substr(
      after.span_start, after.e_c.size() - suffix_after - after.span_start);
  CHECK(ec_payload_after == ec_payload_before);
}

SpellingDict would_dict() {
  return SpellingDict{{"would", {"wold"}}};
}

}  // namespace

TEST_CASE("spelling augmentation at rate 0 is the identity") {
  Triplet t = sample_triplet();
  Triplet out = augment_spelling(t, would_dict(), 0.0, 42);
  CHECK(out.e == t.e);
  CHECK(out.e_c == t.e_c);
  CHECK(out.e_i == t.e_i);
  CHECK(out.span_start == t.span_start);
  CHECK(out.span_end == t.span_end);
}

TEST_CASE("spelling augmentation at rate 1 replaces every dictionary word") {
  Triplet t = sample_triplet();
  Triplet out = augment_spelling(t, would_dict(), 1.0, 42);
  CHECK(out.e == "I initially feared that taking it wold make me a guinea pig.");
  CHECK(out.e_c ==
        "I initially feared that taking it wold make me a test subject.");
  CHECK(out.e_i == "I initially feared that taking it wold make me a animal.");
  check_span_integrity(t, out);
}

TEST_CASE("dictionary words inside the span are protected") {
  Triplet t;
  t.mwe = "gravy train";
  t.e = "Hmm, that gravy train runs.";
  t.e_c = "Hmm, that easy money runs.";
  t.e_i = "Hmm, that sauce wagon runs.";
  t.span_start = t.e.find("gravy train");
  t.span_end = t.span_start + std::string("gravy train").size();
  t.doc_id = "doc";
  t.index = 0;
  // only span words appear in the dictionary: nothing may change
  SpellingDict dict{{"gravy", {"gravey"}}, {"train", {"trian"}},
                    {"easy", {"easi"}},    {"money", {"monye"}},
                    {"sauce", {"sause"}},  {"wagon", {"waggon"}}};
  Triplet out = augment_spelling(t, dict, 1.0, 9);
  CHECK(out.e == t.e);
  CHECK(out.e_c == t.e_c);
  CHECK(out.e_i == t.e_i);
}

TEST_CASE("spelling augmentation preserves the first letter's case") {
  Triplet t;
  t.mwe = "cold feet";
  t.e = "Would cold feet stop him?";
  t.e_c = "Would sudden fright stop him?";
  t.e_i = "Would chilly toes stop him?";
  t.span_start = t.e.find("cold feet");
  t.span_end = t.span_start + std::string("cold feet").size();
  t.doc_id = "doc";
  t.index = 1;
  Triplet out = augment_spelling(t, would_dict(), 1.0, 3);
  CHECK(out.e == "Wold cold feet stop him?");
  CHECK(out.e_c == "Wold sudden fright stop him?");
}

TEST_CASE("augmentation is deterministic per (input, seed)") {
  Triplet t = sample_triplet();
  SpellingDict dict{{"would", {"wold", "wuld", "woud"}},
                    {"feared", {"fearid", "feered"}},
                    {"taking", {"takeing"}}};
  Triplet a = augment_spelling(t, dict, 0.5, 1234);
  Triplet b = augment_spelling(t, dict, 0.5, 1234);
  CHECK(a.e == b.e);
  CHECK(a.e_c == b.e_c);
  CHECK(a.e_i == b.e_i);
  CHECK(a.span_start == b.span_start);
}

TEST_CASE("the per-record stream is independent of batch order") {
  // augmenting t is the same whether it is processed alone or after others
  auto sentences = segment_corpus(load_corpus_dir(FORGE_FIXTURES "/corpus"), 1);
  auto lexicon = load_lexicon(FORGE_FIXTURES "/lexicon.jsonl");
  auto triplets = generate_bronze(sentences, lexicon, 1);
  REQUIRE(triplets.size() >= 3);
  auto dict = load_spelling_dict(FORGE_FIXTURES "/spelling.jsonl");

  Triplet alone = augment_spelling(triplets[2], dict, 0.7, 55);
  std::vector<Triplet> batch;
  for (const Triplet& t : triplets) {
    batch.push_back(augment_spelling(t, dict, 0.7, 55));
  }
  CHECK(batch[2].e == alone.e);
  CHECK(batch[2].e_c == alone.e_c);
  CHECK(batch[2].e_i == alone.e_i);
}

TEST_CASE("invalid rates are rejected") {
  Triplet t = sample_triplet();
  CHECK_THROWS_AS(augment_spelling(t, would_dict(), -0.1, 1), ConfigError);
  CHECK_THROWS_AS(augment_spelling(t, would_dict(), 1.5, 1), ConfigError);
}

TEST_CASE("tfidf_score follows the smoothed formula") {
  TfidfStats stats = build_tfidf_stats({
      "the cat sat",
      "the dog ran",
      "the bird flew past the barn",
      "a cat again",
      "wholly unrelated words here",
      "more filler text",
      "yet more filler",
      "one extra line",
      "another extra line",
      "final line of ten",
  });
  REQUIRE(stats.doc_count == 10);

  CHECK(tfidf_score("absent", "the cat sat", stats) == 0.0);

  // df == N forces the smoothing floor: score == tf * 1
  REQUIRE(stats.df_for("the") == 3);
  TfidfStats everywhere = build_tfidf_stats({"cat one", "cat two", "cat three"});
  CHECK(tfidf_score("cat", "cat cat goes", everywhere) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // N=10, df=1, tf=2 -> 2 * (ln(11/2) + 1)
  REQUIRE(stats.df_for("cat") == 2);
  REQUIRE(stats.df_for("barn") == 1);
  double got = tfidf_score("barn", "barn by the barn", stats);
  CHECK(std::abs(got - 2.0 * (std::log(11.0 / 2.0) + 1.0)) <= 1e-9);
  CHECK(std::abs(got - oracle::tfidf(2, 1, 10)) <= 1e-12);
}

TEST_CASE("document frequency counts documents, not occurrences") {
  TfidfStats stats = build_tfidf_stats({"echo echo echo", "echo once", "none"});
  CHECK(stats.df_for("echo") == 2);
  CHECK(stats.df_for("none") == 1);
  CHECK(stats.df_for("ghost") == 0);
}

TEST_CASE("tfidf replace targets the lowest-scoring eligible tokens") {
  auto sentences = segment_corpus(load_corpus_dir(FORGE_FIXTURES "/corpus"), 1);
  std::vector<std::string> texts;
  for (const auto& s : sentences) texts.push_back(s.text);
  TfidfStats stats = build_tfidf_stats(texts);

  Triplet t = sample_triplet();
  Triplet out = augment_tfidf(t, stats, TfidfMode::replace, 1, 42);
  check_span_integrity(t, out);

  // exactly one eligible token changed, and it is the argmin by score
  auto before = tokenize_spans(t.e);
  auto after = tokenize_spans(out.e);
  REQUIRE(before.size() == after.size());

  std::string min_token;
  double min_score = 0.0;
  bool first = true;
  for (const auto& s : before) {
    if (s.begin < t.span_end && s.end > t.span_start) continue;
    std::string token = t.e.substr(s.begin, s.size());
    double score = oracle::tfidf(
        static_cast<long long>(count_vector(t.e).count(to_lower(token))),
        static_cast<long long>(stats.df_for(to_lower(token))),
        static_cast<long long>(stats.doc_count));
    if (first || score < min_score) {
      min_token = to_lower(token);
      min_score = score;
      first = false;
    }
  }
  std::size_t changed = 0;
  std::string changed_from;
  for (std::size_t i = 0; i < before.size(); ++i) {
    std::string b = t.e.substr(before[i].begin, before[i].size());
    std::string a = out.e.substr(after[i].begin, after[i].size());
    if (b != a) {
      ++changed;
      changed_from = to_lower(b);
    }
  }
  CHECK(changed == 1);
  CHECK(changed_from == min_token);
}

TEST_CASE("tfidf insert grows the sentence by k tokens outside the span") {
  auto sentences = segment_corpus(load_corpus_dir(FORGE_FIXTURES "/corpus"), 1);
  std::vector<std::string> texts;
  for (const auto& s : sentences) texts.push_back(s.text);
  TfidfStats stats = build_tfidf_stats(texts);

  Triplet t = sample_triplet();
  for (std::size_t k : {1, 2, 3}) {
    Triplet out = augment_tfidf(t, stats, TfidfMode::insert, k, 7);
    check_span_integrity(t, out);
    CHECK(tokenize_spans(out.e).size() == tokenize_spans(t.e).size() + k);
    CHECK(tokenize_spans(out.e_c).size() ==
          tokenize_spans(t.e_c).size() + k);
    CHECK(tokenize_spans(out.e_i).size() ==
          tokenize_spans(t.e_i).size() + k);
  }
}

TEST_CASE("tfidf replace needs enough eligible tokens") {
  TfidfStats stats = build_tfidf_stats({"some corpus text", "more text"});
  Triplet t;
  t.mwe = "gravy train";
  t.e = "Gravy train!";
  t.e_c = "Easy money!";
  t.e_i = "Sauce wagon!";
  t.span_start = 0;
  t.span_end = std::string("Gravy train").size();
  t.doc_id = "doc";
  t.index = 0;
  // no tokens outside the span
  CHECK_THROWS_AS(augment_tfidf(t, stats, TfidfMode::replace, 1, 3),
                  AugmentationInfeasible);
  CHECK_THROWS_AS(augment_tfidf(sample_triplet(), stats, TfidfMode::replace,
                                500, 3),
                  AugmentationInfeasible);
  CHECK_THROWS_AS(augment_tfidf(sample_triplet(), stats, TfidfMode::replace,
                                0, 3),
                  ConfigError);
}

TEST_CASE("embedding augmentation replaces with the nearest neighbor") {
  auto table = EmbeddingTable::load(FORGE_FIXTURES "/embeddings.txt");
  REQUIRE(table.dimension() == 4);
  REQUIRE(table.contains("quick"));
  CHECK(table.nearest_neighbor("quick") == "fast");
  CHECK(table.nearest_neighbor("not in vocabulary").empty());

  Triplet t;
  t.mwe = "guinea pig";
  t.e = "A quick guinea pig appeared.";
  t.e_c = "A quick test subject appeared.";
  t.e_i = "A quick animal appeared.";
  t.span_start = t.e.find("guinea pig");
  t.span_end = t.span_start + std::string("guinea pig").size();
  t.doc_id = "doc";
  t.index = 2;

  Triplet out = augment_embedding(t, table, 1.0, 11);
  CHECK(out.e.find("fast") != std::string::npos);
  CHECK(out.e.find("quick") == std::string::npos);
  check_span_integrity(t, out);
}

TEST_CASE("embedding augmentation skips out-of-vocabulary tokens") {
  auto table = EmbeddingTable::load(FORGE_FIXTURES "/embeddings.txt");
  Triplet t = sample_triplet();  // none of its non-span words are in the table
  bool any_known = false;
  for (const auto& span : tokenize_spans(t.e)) {
    if (span.begin < t.span_end && span.end > t.span_start) continue;
    if (table.contains(to_lower(t.e.substr(span.begin, span.size())))) {
      any_known = true;
    }
  }
  REQUIRE_FALSE(any_known);
  Triplet out = augment_embedding(t, table, 1.0, 11);
  CHECK(out.e == t.e);
  CHECK(out.e_c == t.e_c);
  CHECK(out.e_i == t.e_i);
}

TEST_CASE("embedding augmentation at rate 0 is the identity") {
  auto table = EmbeddingTable::load(FORGE_FIXTURES "/embeddings.txt");
  Triplet t;
  t.mwe = "guinea pig";
  t.e = "A quick guinea pig appeared.";
  t.e_c = "A quick test subject appeared.";
  t.e_i = "A quick animal appeared.";
  t.span_start = t.e.find("guinea pig");
  t.span_end = t.span_start + std::string("guinea pig").size();
  t.doc_id = "doc";
  t.index = 2;
  Triplet out = augment_embedding(t, table, 0.0, 11);
  CHECK(out.e == t.e);
}

TEST_CASE("embedding tables validate their input") {
  testutil::TempDir dir("emb_bad");
  CHECK_THROWS_AS(
      EmbeddingTable::load(dir.write("a.txt", "tok 1.0 2.0\nother 1.0\n")),
      ParseError);
  CHECK_THROWS_AS(
      EmbeddingTable::load(dir.write("b.txt", "tok 1.0 nan\n")), ParseError);
  CHECK_THROWS_AS(
      EmbeddingTable::load(dir.write("c.txt", "tok 1.0\ntok 2.0\n")),
      DuplicateEntry);
  CHECK_THROWS_AS(EmbeddingTable::load(dir.write("d.txt", "tok\n")),
                  ParseError);
}

TEST_CASE("spelling dictionaries validate their input") {
  testutil::TempDir dir("dict_bad");
  CHECK_THROWS_AS(load_spelling_dict(dir.write(
                      "a.jsonl", "{\"word\": \"would\", \"misspellings\": []}\n")),
                  ParseError);
  CHECK_THROWS_AS(
      load_spelling_dict(dir.write(
          "b.jsonl",
          "{\"word\": \"would\", \"misspellings\": [\"wold\"]}\n"
          "{\"word\": \"would\", \"misspellings\": [\"wuld\"]}\n")),
      DuplicateEntry);

  auto good = load_spelling_dict(FORGE_FIXTURES "/spelling.jsonl");
  CHECK(good.size() == 10);
  REQUIRE(good.count("would") == 1);
  CHECK_FALSE(good.at("would").empty());
}

TEST_CASE("every augmenter preserves span bytes on real fixture triplets") {
  auto sentences = segment_corpus(load_corpus_dir(FORGE_FIXTURES "/corpus"), 1);
  auto lexicon = load_lexicon(FORGE_FIXTURES "/lexicon.jsonl");
  auto triplets = generate_bronze(sentences, lexicon, 1);
  auto dict = load_spelling_dict(FORGE_FIXTURES "/spelling.jsonl");
  auto table = EmbeddingTable::load(FORGE_FIXTURES "/embeddings.txt");
  std::vector<std::string> texts;
  for (const auto& t : triplets) texts.push_back(t.e);
  TfidfStats stats = build_tfidf_stats(texts);

  for (const Triplet& t : triplets) {
    check_span_integrity(t, augment_spelling(t, dict, 0.8, 42));
    check_span_integrity(t, augment_embedding(t, table, 0.8, 42));
    check_span_integrity(t, augment_tfidf(t, stats, TfidfMode::insert, 2, 42));
    std::size_t eligible = 0;
    for (const auto& span : tokenize_spans(t.e)) {
      if (!(span.begin < t.span_end && span.end > t.span_start)) ++eligible;
    }
    if (eligible >= 1) {
      check_span_integrity(t, augment_tfidf(t, stats, TfidfMode::replace, 1, 42));
    }
  }
}
