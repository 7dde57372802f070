#pragma once

#include "sivr/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sivr {

/// Shared tokenizer for all text metrics: lowercase, box substrings kept as
/// single atomic tokens ("{x1,y1,x2,y2}"), all other punctuation stripped,
/// whitespace split.
std::vector<std::string> metric_tokenize(const std::string& text);

/// Resource-free suffix stemmer used by meteor_lite (rules: -ing, -edly?,
/// see the table in metrics.cpp). Shared between metric and oracle.
std::string metric_stem(const std::string& word);

/// First "{int, int, int, int}" substring (flexible interior whitespace).
/// Returns the box when it satisfies x1 < x2, y1 < y2, all >= 0; absent
/// otherwise or when nothing matches.
std::optional<BBox> parse_bbox(const std::string& text);

/// Intersection over union with continuous areas (x2-x1)*(y2-y1).
double iou(const BBox& a, const BBox& b);

struct BBoxAccuracy {
  double accuracy = 0.0;
  int parse_failures = 0;
};

/// Fraction of predictions whose parsed box reaches the IoU threshold
/// against ground truth; parse failures count as misses. Throws
/// std::invalid_argument on an empty list.
BBoxAccuracy bbox_accuracy(const std::vector<std::pair<std::string, BBox>>& predictions,
                           double threshold = 0.5);

struct Bleu1Score {
  double score = 0.0;
  bool empty_candidate = false;
};

/// Clipped unigram precision times brevity penalty
/// min(1, exp(1 - r/c)), r the closest reference length (ties go short).
Bleu1Score bleu1(const std::string& candidate, const std::vector<std::string>& references);

struct Rouge1Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;  // one side tokenized to nothing
};

Rouge1Score rouge1(const std::string& candidate, const std::string& reference);

/// Exact+stem unigram alignment, F_mean = 10PR/(R+9P), fragmentation
/// penalty 0.5*(chunks/matches)^3. No synonym resources.
double meteor_lite(const std::string& candidate, const std::string& reference);

/// Consensus TF-IDF n-gram cosine (n = 1..4), IDF = ln(N/df) over the
/// reference corpus with df clamped to >= 1, similarities averaged over n
/// and references, scaled by 10; corpus score is the mean over ids. Throws
/// std::invalid_argument when the id sets differ or are empty.
double cider(const std::map<std::string, std::string>& candidates,
             const std::map<std::string, std::vector<std::string>>& references);

/// One evaluation cell's worth of scores.
struct MetricScores {
  double rouge1_f = 0.0;
  double bleu1 = 0.0;
  double meteor = 0.0;
  double cider = 0.0;
  double bbox_accuracy = 0.0;
  int parse_failures = 0;
  int n = 0;

  bool operator==(const MetricScores&) const = default;
};

}  // namespace sivr
