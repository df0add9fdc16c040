#include "forge/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "forge/errors.hpp"
#include "forge/text.hpp"
#include "forge/tiering.hpp"

namespace forge {

SentenceEmbedding make_embedding(std::vector<double> values) {
  long double sq = 0.0L;
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InternalError("embedding contains a non-finite value");
    }
    sq += static_cast<long double>(v) * v;
  }
  SentenceEmbedding e;
  e.vec = std::move(values);
  e.norm = static_cast<double>(std::sqrt(sq));
  return e;
}

std::string collapse_mwes(const std::string& text,
                          const std::vector<std::string>& mwes) {
  struct Hit {
    std::size_t pos;
    std::size_t len;
    const std::string* mwe;
  };
  std::string out = text;
  std::size_t from = 0;
  while (from < out.size()) {
    std::optional<Hit> best;
    for (const std::string& mwe : mwes) {
      std::optional<std::size_t> pos = find_whole_word(text, mwe, from);
      if (!pos) continue;
      Hit h{*pos, mwe.size(), &mwe};
      if (!best || h.pos < best->pos ||
          (h.pos == best->pos &&
           (h.len > best->len || (h.len == best->len && *h.mwe < *best->mwe)))) {
        best = h;
      }
    }
    if (!best) break;
    for (std::size_t i = best->pos; i < best->pos + best->len; ++i) {
      if (out[i] == ' ') out[i] = '_';
    }
    from = best->pos + best->len;
  }
  return out;
}

SentenceEmbedding embed_default(const std::string& text,
                                const TfidfStats& stats,
                                const std::vector<std::string>& mwes) {
  if (stats.doc_count == 0) {
    throw ConfigError("tf-idf statistics are empty; build them before embedding");
  }
  std::array<double, kHashedDim> buckets{};
  FrequencyVector counts = count_vector(collapse_mwes(text, mwes));
  for (const auto& [token, tf] : counts.entries()) {
    double weight = static_cast<double>(tf) *
                    smoothed_idf(stats.df_for(token), stats.doc_count);
    std::uint64_t h = fnv1a64(token);
    double sign = ((h >> 8) & 1u) ? 1.0 : -1.0;
    buckets[h % kHashedDim] += sign * weight;
  }
  return make_embedding(std::vector<double>(buckets.begin(), buckets.end()));
}

DefaultBackend::DefaultBackend(TfidfStats stats, std::vector<std::string> mwes)
    : stats_(std::move(stats)), mwes_(std::move(mwes)) {
  if (stats_.doc_count == 0) {
    throw ConfigError("tf-idf statistics are empty; build them before embedding");
  }
}

SentenceEmbedding DefaultBackend::embed(const std::string& text) {
  return embed_default(text, stats_, mwes_);
}

double similarity(const SentenceEmbedding& a, const SentenceEmbedding& b) {
  if (a.vec.size() != b.vec.size()) {
    throw ShapeError("embedding dimensions differ: " +
                     std::to_string(a.vec.size()) + " vs " +
                     std::to_string(b.vec.size()));
  }
  if (a.norm == 0.0 || b.norm == 0.0) {
    throw DegenerateEmbedding("zero-norm embedding has no direction");
  }
  long double dot = 0.0L;
  for (std::size_t i = 0; i < a.vec.size(); ++i) {
    dot += static_cast<long double>(a.vec[i]) * b.vec[i];
  }
  double sim = static_cast<double>(dot / (static_cast<long double>(a.norm) * b.norm));
  return std::clamp(sim, -1.0, 1.0);
}

std::vector<EvalRecord> build_eval_records(const std::vector<Triplet>& triplets,
                                           EmbeddingBackend& backend) {
  std::vector<EvalRecord> out;
  out.reserve(triplets.size() * 2);
  for (const Triplet& t : triplets) {
    const std::string key = triplet_key(t);
    SentenceEmbedding ve = backend.embed(t.e);
    SentenceEmbedding vc = backend.embed(t.e_c);
    SentenceEmbedding vi = backend.embed(t.e_i);

    EvalRecord correct;
    correct.pair_id = key + "#c";
    correct.sentence_1 = t.e;
    correct.sentence_2 = t.e_c;
    correct.gold_sim = 1.0;

    EvalRecord incorrect;
    incorrect.pair_id = key + "#i";
    incorrect.sentence_1 = t.e;
    incorrect.sentence_2 = t.e_i;

    try {
      correct.predicted_sim = similarity(ve, vc);
      incorrect.predicted_sim = similarity(ve, vi);
      incorrect.gold_sim = similarity(vc, vi);
    } catch (const DegenerateEmbedding&) {
      throw DegenerateEmbedding("pair " + key +
                                ": a member embeds to the zero vector");
    }
    out.push_back(std::move(correct));
    out.push_back(std::move(incorrect));
  }
  return out;
}

std::vector<double> fractional_ranks(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    // positions i..j (0-based) share the mean of ranks i+1..j+1
    double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw ShapeError("score lists differ in length: " +
                     std::to_string(xs.size()) + " vs " +
                     std::to_string(ys.size()));
  }
  const std::size_t n = xs.size();
  if (n < 2) {
    throw UndefinedCorrelation("need at least two observations, got " +
                               std::to_string(n));
  }
  auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [&](double x) { return x == v.front(); });
  };
  if (constant(xs) || constant(ys)) {
    throw UndefinedCorrelation("rank correlation is undefined on a constant side");
  }
  std::vector<double> rx = fractional_ranks(xs);
  std::vector<double> ry = fractional_ranks(ys);
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0.0L, sxx = 0.0L, syy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double dx = rx[i] - mx;
    long double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

namespace {

std::optional<double> portion_rho(const std::vector<EvalRecord>& records,
                                  const std::string& tag) {
  std::vector<double> pred, gold;
  for (const EvalRecord& r : records) {
    if (r.portion && *r.portion == tag) {
      pred.push_back(r.predicted_sim);
      gold.push_back(r.gold_sim);
    }
  }
  if (pred.empty()) return std::nullopt;
  return spearman_rho(pred, gold);
}

}  // namespace

EvalReport report_from_records(const std::vector<EvalRecord>& records) {
  std::vector<double> pred, gold;
  pred.reserve(records.size());
  gold.reserve(records.size());
  for (const EvalRecord& r : records) {
    pred.push_back(r.predicted_sim);
    gold.push_back(r.gold_sim);
  }
  EvalReport report;
  report.n_records = records.size();
  report.rho_overall = spearman_rho(pred, gold);
  report.rho_sts = portion_rho(records, "sts");
  report.rho_mwe = portion_rho(records, "mwe");
  return report;
}

EvalReport evaluate(const std::vector<Triplet>& triplets,
                    EmbeddingBackend& backend) {
  return report_from_records(build_eval_records(triplets, backend));
}

Json eval_record_to_json(const EvalRecord& r) {
  Json j{{"pair_id", r.pair_id},
         {"sentence_1", r.sentence_1},
         {"sentence_2", r.sentence_2},
         {"predicted_sim", r.predicted_sim},
         {"gold_sim", r.gold_sim}};
  if (r.portion) j["portion"] = *r.portion;
  return j;
}

EvalRecord eval_record_from_json(const Json& j, const std::string& where,
                                 std::size_t lineno) {
  EvalRecord r;
  try {
    r.pair_id = j.at("pair_id").get<std::string>();
    r.sentence_1 = j.at("sentence_1").get<std::string>();
    r.sentence_2 = j.at("sentence_2").get<std::string>();
    r.predicted_sim = j.at("predicted_sim").get<double>();
    r.gold_sim = j.at("gold_sim").get<double>();
    if (j.contains("portion")) r.portion = j.at("portion").get<std::string>();
  } catch (const Json::exception& e) {
    throw ParseError(where, lineno, e.what());
  }
  if (!std::isfinite(r.predicted_sim) || !std::isfinite(r.gold_sim)) {
    throw ParseError(where, lineno, "similarity values must be finite");
  }
  return r;
}

Json report_to_json(const EvalReport& report) {
  Json j{{"n_records", report.n_records}, {"rho_overall", report.rho_overall}};
  j["rho_sts"] = report.rho_sts ? Json(*report.rho_sts) : Json(nullptr);
  j["rho_mwe"] = report.rho_mwe ? Json(*report.rho_mwe) : Json(nullptr);
  return j;
}

std::string records_to_tsv(const std::vector<EvalRecord>& records) {
  std::string out;
  char buf[64];
  for (const EvalRecord& r : records) {
    out += r.pair_id;
    std::snprintf(buf, sizeof(buf), "\t%.17g\t%.17g\n", r.predicted_sim,
                  r.gold_sim);
    out += buf;
  }
  return out;
}

}  // namespace forge
