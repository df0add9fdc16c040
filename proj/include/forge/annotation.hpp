#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/jsonl.hpp"

namespace forge {

enum class Label { accept, reject };

std::string label_to_string(Label l);
Label label_from_string(const std::string& s, const std::string& where,
                        std::size_t lineno);

// Dual-annotator record; the adjudicator label exists exactly when the two
// annotators disagree.
struct AnnotationRecord {
  std::string triplet_id;
  Label annotator_a = Label::accept;
  Label annotator_b = Label::accept;
  std::optional<Label> adjudicator;
};

std::vector<AnnotationRecord> read_annotations_jsonl(
    const std::filesystem::path& path);

// Unanimous records keep the shared label; disagreements take the
// adjudicator's. A disagreement without an adjudicator raises
// MissingAdjudication.
std::vector<std::pair<std::string, Label>> merge(
    const std::vector<AnnotationRecord>& records);

// Fraction of records where the two annotators agree.
double percent_agreement(const std::vector<AnnotationRecord>& records);

// Cohen's kappa over the raw annotator pair, before adjudication:
// (p_o - p_e) / (1 - p_e) with p_e from each annotator's marginal label
// frequencies. Raises DegenerateMarginals when p_e = 1.
double cohens_kappa(const std::vector<AnnotationRecord>& records);

}  // namespace forge
