#include "forge/augment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

#include "forge/errors.hpp"
#include "forge/text.hpp"
#include "forge/tiering.hpp"

namespace forge {

std::uint64_t TfidfStats::df_for(std::string_view token) const {
  auto it = df.find(std::string(token));
  return it == df.end() ? 0 : it->second;
}

TfidfStats build_tfidf_stats(const std::vector<std::string>& texts) {
  TfidfStats stats;
  stats.doc_count = texts.size();
  for (const std::string& text : texts) {
    std::unordered_set<std::string> seen;
    for (const TokenSpan& s : tokenize_spans(text)) {
      seen.insert(to_lower(std::string_view(text).substr(s.begin, s.size())));
    }
    for (const std::string& token : seen) stats.df[token] += 1;
  }
  return stats;
}

double smoothed_idf(std::uint64_t df, std::uint64_t doc_count) {
  return std::log((1.0 + static_cast<double>(doc_count)) /
                  (1.0 + static_cast<double>(df))) +
         1.0;
}

double tfidf_score(const std::string& token, const std::string& sentence,
                   const TfidfStats& stats) {
  std::uint64_t tf = count_vector(sentence).count(to_lower(token));
  if (tf == 0) return 0.0;
  return static_cast<double>(tf) * smoothed_idf(stats.df_for(to_lower(token)), stats.doc_count);
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  EmbeddingTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    std::vector<double> vec;
    double v;
    while (fields >> v) {
      if (!std::isfinite(v)) {
        throw ParseError(path.string(), lineno, "non-finite vector entry");
      }
      vec.push_back(v);
    }
    if (!fields.eof()) {
      throw ParseError(path.string(), lineno, "malformed vector entry");
    }
    if (token.empty() || vec.empty()) {
      throw ParseError(path.string(), lineno, "expected: token v1 v2 ... vd");
    }
    if (table.dim_ == 0) {
      table.dim_ = vec.size();
    } else if (vec.size() != table.dim_) {
      throw ParseError(path.string(), lineno,
                       "dimension mismatch: expected " + std::to_string(table.dim_));
    }
    if (!table.vectors_.emplace(to_lower(token), std::move(vec)).second) {
      throw DuplicateEntry(token);
    }
  }
  return table;
}

namespace {

double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return -2.0;  // below any real cosine
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

std::string EmbeddingTable::nearest_neighbor(const std::string& token) const {
  auto it = vectors_.find(to_lower(token));
  if (it == vectors_.end()) return {};
  std::string best;
  double best_score = -2.0;
  for (const auto& [candidate, vec] : vectors_) {
    if (candidate == it->first) continue;
    double score = dense_cosine(it->second, vec);
    if (score > best_score ||
        (score == best_score && (best.empty() || candidate < best))) {
      best = candidate;
      best_score = score;
    }
  }
  return best;
}

SpellingDict load_spelling_dict(const std::filesystem::path& path) {
  SpellingDict dict;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    if (!j.contains("word") || !j.at("word").is_string() ||
        !j.contains("misspellings") || !j.at("misspellings").is_array() ||
        j.at("misspellings").empty()) {
      throw ParseError(path.string(), lineno,
                       "expected fields word, misspellings (non-empty array)");
    }
    std::string word = to_lower(j.at("word").get<std::string>());
    std::vector<std::string> variants;
    for (const Json& m : j.at("misspellings")) {
      if (!m.is_string()) {
        throw ParseError(path.string(), lineno, "misspellings must be strings");
      }
      variants.push_back(m.get<std::string>());
    }
    if (!dict.emplace(word, std::move(variants)).second) {
      throw DuplicateEntry(word);
    }
  });
  return dict;
}

namespace {

// One member sentence decomposed against its protected byte region. The
// region is the substituted text: [span_start, span_end) in E, and the
// same-start region in E_c / E_i recovered from the shared suffix length.
struct MemberView {
  const std::string* text = nullptr;
  std::size_t protect_begin = 0;
  std::size_t protect_end = 0;
  std::vector<TokenSpan> eligible_tokens;   // outside the protected region
  std::vector<std::size_t> eligible_gaps;   // byte offsets; last = text size
};

MemberView make_view(const std::string& text, std::size_t protect_begin,
                     std::size_t protect_end) {
  MemberView v;
  v.text = &text;
  v.protect_begin = protect_begin;
  v.protect_end = protect_end;
  for (const TokenSpan& s : tokenize_spans(text)) {
    bool overlaps = s.begin < protect_end && s.end > protect_begin;
    if (!overlaps) v.eligible_tokens.push_back(s);
    // a gap sits before each token; interior-of-span gaps are off limits
    if (!(s.begin > protect_begin && s.begin < protect_end)) {
      v.eligible_gaps.push_back(s.begin);
    }
  }
  v.eligible_gaps.push_back(text.size());
  return v;
}

struct TripletViews {
  MemberView e, e_c, e_i;
};

TripletViews make_views(const Triplet& t) {
  if (t.span_start > t.span_end || t.span_end > t.e.size()) {
    throw InputError("triplet span out of bounds: " + triplet_key(t));
  }
  std::size_t suffix = t.e.size() - t.span_end;
  if (suffix > t.e_c.size() || suffix > t.e_i.size() ||
      t.span_start > t.e_c.size() - suffix || t.span_start > t.e_i.size() - suffix) {
    throw InputError("triplet members shorter than shared affixes: " + triplet_key(t));
  }
  TripletViews views;
  views.e = make_view(t.e, t.span_start, t.span_end);
  views.e_c = make_view(t.e_c, t.span_start, t.e_c.size() - suffix);
  views.e_i = make_view(t.e_i, t.span_start, t.e_i.size() - suffix);
  if (views.e_c.eligible_tokens.size() != views.e.eligible_tokens.size() ||
      views.e_i.eligible_tokens.size() != views.e.eligible_tokens.size() ||
      views.e_c.eligible_gaps.size() != views.e.eligible_gaps.size() ||
      views.e_i.eligible_gaps.size() != views.e.eligible_gaps.size()) {
    throw InputError("triplet members disagree outside the span: " + triplet_key(t));
  }
  return views;
}

// Edits are decided once against E and expressed on eligible-token/gap
// ordinals, which line up across all three members.
struct Edit {
  enum class Kind { replace_token, insert_at_gap };
  Kind kind;
  std::size_t ordinal;
  std::string text;  // exact bytes of the replacement / inserted token
};

std::string apply_edits(const MemberView& v, std::vector<Edit> edits,
                        std::size_t* protect_shift) {
  // descending byte position keeps earlier offsets valid; equal positions
  // apply in reverse decision order so the result reads in decision order
  std::stable_sort(edits.begin(), edits.end(), [&](const Edit& a, const Edit& b) {
    std::size_t pa = a.kind == Edit::Kind::replace_token
                         ? v.eligible_tokens[a.ordinal].begin
                         : v.eligible_gaps[a.ordinal];
    std::size_t pb = b.kind == Edit::Kind::replace_token
                         ? v.eligible_tokens[b.ordinal].begin
                         : v.eligible_gaps[b.ordinal];
    return pa > pb;
  });

  std::string out = *v.text;
  long long shift = 0;
  for (const Edit& edit : edits) {
    if (edit.kind == Edit::Kind::replace_token) {
      const TokenSpan& span = v.eligible_tokens[edit.ordinal];
      out.replace(span.begin, span.size(), edit.text);
      if (span.begin < v.protect_begin) {
        shift += static_cast<long long>(edit.text.size()) -
                 static_cast<long long>(span.size());
      }
    } else {
      std::size_t pos = v.eligible_gaps[edit.ordinal];
      if (pos == v.text->size()) {
        out.insert(pos, " " + edit.text);
      } else {
        out.insert(pos, edit.text + " ");
      }
      if (pos <= v.protect_begin) {
        shift += static_cast<long long>(edit.text.size()) + 1;
      }
    }
  }
  if (protect_shift) *protect_shift = static_cast<std::size_t>(shift);
  return out;
}

Triplet apply_to_triplet(const Triplet& t, const TripletViews& views,
                         const std::vector<Edit>& edits) {
  Triplet out = t;
  std::size_t shift = 0;
  out.e = apply_edits(views.e, edits, &shift);
  out.e_c = apply_edits(views.e_c, edits, nullptr);
  out.e_i = apply_edits(views.e_i, edits, nullptr);
  out.span_start = t.span_start + shift;
  out.span_end = t.span_end + shift;
  return out;
}

std::string token_text(const MemberView& v, std::size_t ordinal) {
  const TokenSpan& s = v.eligible_tokens[ordinal];
  return v.text->substr(s.begin, s.size());
}

}  // namespace

Triplet augment_spelling(const Triplet& t, const SpellingDict& dict,
                         double rate, std::uint64_t seed) {
  if (rate < 0.0 || rate > 1.0) {
    throw ConfigError("rate must be in [0, 1]: " + std::to_string(rate));
  }
  TripletViews views = make_views(t);
  std::mt19937_64 rng(derive_seed(seed, triplet_key(t)));
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < views.e.eligible_tokens.size(); ++i) {
    std::string original = token_text(views.e, i);
    auto it = dict.find(to_lower(original));
    if (it == dict.end()) continue;
    if (unit_real(rng) >= rate) continue;
    const std::string& variant = it->second[bounded(rng, it->second.size())];
    edits.push_back({Edit::Kind::replace_token, i,
                     copy_first_letter_case(variant, original.front())});
  }
  return apply_to_triplet(t, views, edits);
}

namespace {

// Vocabulary tokens with cumulative global TF-IDF mass (df * smoothed idf),
// in lexicographic order for reproducible draws.
struct VocabSampler {
  std::vector<std::string> tokens;
  std::vector<double> cumulative;

  explicit VocabSampler(const TfidfStats& stats) {
    std::map<std::string, std::uint64_t> sorted(stats.df.begin(), stats.df.end());
    double total = 0.0;
    for (const auto& [token, df] : sorted) {
      total += static_cast<double>(df) * smoothed_idf(df, stats.doc_count);
      tokens.push_back(token);
      cumulative.push_back(total);
    }
  }

  bool empty() const { return tokens.empty() || cumulative.back() <= 0.0; }

  template <typename Rng>
  const std::string& draw(Rng& rng) const {
    double u = unit_real(rng) * cumulative.back();
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= tokens.size()) idx = tokens.size() - 1;
    return tokens[idx];
  }
};

}  // namespace

Triplet augment_tfidf(const Triplet& t, const TfidfStats& stats,
                      TfidfMode mode, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("tfidf augmentation needs k >= 1");
  if (stats.doc_count < 1) throw ConfigError("tfidf stats are empty");
  TripletViews views = make_views(t);
  VocabSampler sampler(stats);
  if (sampler.empty()) {
    throw AugmentationInfeasible("vocabulary has no TF-IDF mass");
  }
  std::mt19937_64 rng(derive_seed(seed, triplet_key(t)));
  std::vector<Edit> edits;

  if (mode == TfidfMode::replace) {
    const std::size_t n = views.e.eligible_tokens.size();
    if (n < k) {
      throw AugmentationInfeasible(
          "sentence has " + std::to_string(n) + " eligible tokens, need " +
          std::to_string(k) + ": " + triplet_key(t));
    }
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      scored.emplace_back(tfidf_score(token_text(views.e, i), t.e, stats), i);
    }
    std::sort(scored.begin(), scored.end());
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t ordinal = scored[j].second;
      std::string original = token_text(views.e, ordinal);
      const std::string& replacement = sampler.draw(rng);
      edits.push_back({Edit::Kind::replace_token, ordinal,
                       copy_first_letter_case(replacement, original.front())});
    }
  } else {
    for (std::size_t j = 0; j < k; ++j) {
      const std::string& token = sampler.draw(rng);
      std::size_t gap = bounded(rng, views.e.eligible_gaps.size());
      edits.push_back({Edit::Kind::insert_at_gap, gap, token});
    }
  }
  return apply_to_triplet(t, views, edits);
}

Triplet augment_embedding(const Triplet& t, const EmbeddingTable& table,
                          double rate, std::uint64_t seed) {
  if (rate < 0.0 || rate > 1.0) {
    throw ConfigError("rate must be in [0, 1]: " + std::to_string(rate));
  }
  if (table.size() == 0) throw ConfigError("embedding table is empty");
  TripletViews views = make_views(t);
  std::mt19937_64 rng(derive_seed(seed, triplet_key(t)));
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < views.e.eligible_tokens.size(); ++i) {
    std::string original = token_text(views.e, i);
    if (!table.contains(to_lower(original))) continue;
    if (unit_real(rng) >= rate) continue;
    std::string neighbor = table.nearest_neighbor(original);
    if (neighbor.empty()) continue;
    edits.push_back({Edit::Kind::replace_token, i,
                     copy_first_letter_case(neighbor, original.front())});
  }
  return apply_to_triplet(t, views, edits);
}

}  // namespace forge
