#include "forge/annotation.hpp"

#include "forge/errors.hpp"

namespace forge {

std::string label_to_string(Label l) {
  return l == Label::accept ? "accept" : "reject";
}

Label label_from_string(const std::string& s, const std::string& where,
                        std::size_t lineno) {
  if (s == "accept") return Label::accept;
  if (s == "reject") return Label::reject;
  throw ParseError(where, lineno, "label must be accept or reject, got: " + s);
}

std::vector<AnnotationRecord> read_annotations_jsonl(
    const std::filesystem::path& path) {
  std::vector<AnnotationRecord> records;
  for_each_jsonl(path, [&](std::size_t lineno, const Json& j) {
    AnnotationRecord r;
    try {
      r.triplet_id = j.at("triplet_id").get<std::string>();
      r.annotator_a = label_from_string(j.at("annotator_a").get<std::string>(),
                                        path.string(), lineno);
      r.annotator_b = label_from_string(j.at("annotator_b").get<std::string>(),
                                        path.string(), lineno);
      if (j.contains("adjudicator")) {
        r.adjudicator = label_from_string(j.at("adjudicator").get<std::string>(),
                                          path.string(), lineno);
      }
    } catch (const Json::exception& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
    // adjudicator present iff the annotators disagree
    if (r.annotator_a == r.annotator_b && r.adjudicator) {
      throw ParseError(path.string(), lineno,
                       "adjudicator label on an agreeing record: " + r.triplet_id);
    }
    records.push_back(std::move(r));
  });
  return records;
}

std::vector<std::pair<std::string, Label>> merge(
    const std::vector<AnnotationRecord>& records) {
  std::vector<std::pair<std::string, Label>> out;
  out.reserve(records.size());
  for (const AnnotationRecord& r : records) {
    if (r.annotator_a == r.annotator_b) {
      out.emplace_back(r.triplet_id, r.annotator_a);
    } else if (r.adjudicator) {
      out.emplace_back(r.triplet_id, *r.adjudicator);
    } else {
      throw MissingAdjudication(r.triplet_id);
    }
  }
  return out;
}

double percent_agreement(const std::vector<AnnotationRecord>& records) {
  if (records.empty()) throw EmptyAnnotationSet();
  std::size_t agree = 0;
  for (const AnnotationRecord& r : records) {
    if (r.annotator_a == r.annotator_b) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(records.size());
}

double cohens_kappa(const std::vector<AnnotationRecord>& records) {
  if (records.empty()) throw EmptyAnnotationSet();
  std::uint64_t n = records.size();
  std::uint64_t agree = 0, a_accept = 0, b_accept = 0;
  for (const AnnotationRecord& r : records) {
    if (r.annotator_a == r.annotator_b) ++agree;
    if (r.annotator_a == Label::accept) ++a_accept;
    if (r.annotator_b == Label::accept) ++b_accept;
  }
  // p_e = 1 exactly when both annotators are constant on the same label
  if ((a_accept == n && b_accept == n) || (a_accept == 0 && b_accept == 0)) {
    throw DegenerateMarginals();
  }
  // integer form of (p_o - p_e) / (1 - p_e): scale both sides by n^2
  std::uint64_t a_reject = n - a_accept;
  std::uint64_t b_reject = n - b_accept;
  std::uint64_t chance = a_accept * b_accept + a_reject * b_reject;
  double numer = static_cast<double>(n * agree) - static_cast<double>(chance);
  double denom = static_cast<double>(n * n) - static_cast<double>(chance);
  return numer / denom;
}

}  // namespace forge
