#pragma once

// Independent brute-force references used to cross-check the library.
// Everything here is written against the definitions directly, in the most
// literal way possible, and must stay decoupled from the implementations
// under test in src/.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

// --- bag-of-words cosine, straight from dot/(|a||b|) ---

using Bag = std::map<std::string, long long>;

inline Bag naive_bag(const std::string& text) {
  Bag bag;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) {
      bag[token] += 1;
      token.clear();
    }
  };
  for (char c : text) {
    bool word = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '_';
    if (word) {
      char lc = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
      token.push_back(lc);
    } else {
      flush();
    }
  }
  flush();
  return bag;
}

inline double naive_cosine(const Bag& a, const Bag& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [t, c] : a) {
    na += static_cast<double>(c) * static_cast<double>(c);
    auto it = b.find(t);
    if (it != b.end()) dot += static_cast<double>(c) * static_cast<double>(it->second);
  }
  for (const auto& [t, c] : b) nb += static_cast<double>(c) * static_cast<double>(c);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// --- Spearman, two independent routes ---

// Route 1: the textbook 1 - 6*sum(d^2)/(n(n^2-1)) difference formula.
// Only valid when all values on each side are distinct.
inline double spearman_d2(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i + 1);
    return r;
  };
  std::vector<double> rx = ranks(xs), ry = ranks(ys);
  double sum_d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = rx[i] - ry[i];
    sum_d2 += d * d;
  }
  double nn = static_cast<double>(n);
  return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
}

// Route 2: Pearson correlation of fractionally-ranked data in long double.
inline std::vector<long double> fractional_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<long double> r(v.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    long double avg = (static_cast<long double>(i + 1) + static_cast<long double>(j + 1)) / 2.0L;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double spearman_pearson_ranks(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
  std::vector<long double> rx = fractional_ranks(xs), ry = fractional_ranks(ys);
  const std::size_t n = rx.size();
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<long double>(n);
  my /= static_cast<long double>(n);
  long double sxy = 0.0L, sxx = 0.0L, syy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// --- Cohen's kappa from the 2x2 confusion counts ---

inline double kappa_from_counts(long long aa, long long ar, long long ra,
                                long long rr) {
  long double n = static_cast<long double>(aa + ar + ra + rr);
  long double po = static_cast<long double>(aa + rr) / n;
  long double pa_acc = static_cast<long double>(aa + ar) / n;
  long double pb_acc = static_cast<long double>(aa + ra) / n;
  long double pe = pa_acc * pb_acc + (1.0L - pa_acc) * (1.0L - pb_acc);
  return static_cast<double>((po - pe) / (1.0L - pe));
}

// --- whole-word phrase occurrences, position-by-position scan ---

inline bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

inline std::vector<std::size_t> scan_occurrences(const std::string& text,
                                                 const std::string& phrase) {
  std::vector<std::size_t> hits;
  if (phrase.empty()) return hits;
  for (std::size_t pos = 0; pos + phrase.size() <= text.size(); ++pos) {
    bool ok = true;
    for (std::size_t i = 0; i < phrase.size() && ok; ++i) {
      char a = text[pos + i];
      if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
      char b = phrase[i];
      if (b >= 'A' && b <= 'Z') b = static_cast<char>(b - 'A' + 'a');
      ok = (a == b);
    }
    if (!ok) continue;
    if (pos > 0 && word_char(text[pos - 1])) continue;
    std::size_t end = pos + phrase.size();
    if (end < text.size() && word_char(text[end])) continue;
    hits.push_back(pos);
  }
  return hits;
}

// --- smoothed TF-IDF, straight from the formula ---

inline double tfidf(long long tf, long long df, long long n_docs) {
  return static_cast<double>(tf) *
         (std::log((1.0 + static_cast<double>(n_docs)) /
                   (1.0 + static_cast<double>(df))) +
          1.0);
}

// --- alphabetic character ratio ---

inline double alpha_ratio(const std::string& text) {
  if (text.empty()) return 0.0;
  std::size_t alpha = 0;
  for (char c : text) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) ++alpha;
  }
  return static_cast<double>(alpha) / static_cast<double>(text.size());
}

}  // namespace oracle
