#include "sivr/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <regex>
#include <set>
#include <stdexcept>

namespace sivr {

namespace {

const std::regex& bbox_pattern() {
  static const std::regex kPattern(
      R"(\{\s*(-?\d{1,9})\s*,\s*(-?\d{1,9})\s*,\s*(-?\d{1,9})\s*,\s*(-?\d{1,9})\s*\})");
  return kPattern;
}

std::map<std::string, int> counts(const std::vector<std::string>& tokens) {
  std::map<std::string, int> out;
  for (const auto& t : tokens) ++out[t];
  return out;
}

}  // namespace

std::vector<std::string> metric_tokenize(const std::string& text) {
  // Replace box quadruples with canonical atomic tokens first, then strip
  // the remaining punctuation.
  std::string flat;
  flat.reserve(text.size());
  auto begin = std::sregex_iterator(text.begin(), text.end(), bbox_pattern());
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    flat.append(text, last, static_cast<std::size_t>(m.position()) - last);
    flat += " {" + m[1].str() + "," + m[2].str() + "," + m[3].str() + "," + m[4].str() + "} ";
    last = static_cast<std::size_t>(m.position() + m.length());
  }
  flat.append(text, last, text.size() - last);

  std::vector<std::string> tokens;
  std::string current;
  bool in_box = false;
  for (char c : flat) {
    if (c == '{') in_box = true;
    if (in_box) {
      current.push_back(c);
      if (c == '}') {
        in_box = false;
        tokens.push_back(current);
        current.clear();
      }
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

std::string metric_stem(const std::string& word) {
  // One rule, longest suffix first; resulting stems keep >= 3 characters.
  static const std::pair<const char*, std::size_t> kSuffixes[] = {
      {"ing", 3}, {"ed", 2}, {"es", 2}, {"ly", 2}, {"s", 1},
  };
  for (const auto& [suffix, len] : kSuffixes) {
    if (word.size() >= len + 3 && word.ends_with(suffix)) {
      if (std::string_view(suffix) == "s" && word.ends_with("ss")) continue;
      return word.substr(0, word.size() - len);
    }
  }
  return word;
}

std::optional<BBox> parse_bbox(const std::string& text) {
  std::smatch m;
  if (!std::regex_search(text, m, bbox_pattern())) return std::nullopt;
  BBox box{std::atoi(m[1].str().c_str()), std::atoi(m[2].str().c_str()),
           std::atoi(m[3].str().c_str()), std::atoi(m[4].str().c_str())};
  if (box.x1 < 0 || box.y1 < 0 || box.x1 >= box.x2 || box.y1 >= box.y2) {
    return std::nullopt;
  }
  return box;
}

double iou(const BBox& a, const BBox& b) {
  const double iw = std::max(0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const double ih = std::max(0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

BBoxAccuracy bbox_accuracy(const std::vector<std::pair<std::string, BBox>>& predictions,
                           double threshold) {
  if (predictions.empty()) throw std::invalid_argument("bbox_accuracy: empty prediction list");
  BBoxAccuracy out;
  int hits = 0;
  for (const auto& [text, truth] : predictions) {
    const auto box = parse_bbox(text);
    if (!box.has_value()) {
      ++out.parse_failures;
      continue;
    }
    if (iou(*box, truth) >= threshold) ++hits;
  }
  out.accuracy = static_cast<double>(hits) / static_cast<double>(predictions.size());
  return out;
}

Bleu1Score bleu1(const std::string& candidate, const std::vector<std::string>& references) {
  if (references.empty()) throw std::invalid_argument("bleu1: need at least one reference");
  const auto cand = metric_tokenize(candidate);
  if (cand.empty()) return Bleu1Score{0.0, true};
  const auto cand_counts = counts(cand);

  std::map<std::string, int> max_ref_counts;
  long closest_len = std::numeric_limits<long>::max();
  const long c = static_cast<long>(cand.size());
  for (const auto& ref : references) {
    const auto toks = metric_tokenize(ref);
    for (const auto& [w, k] : counts(toks)) {
      max_ref_counts[w] = std::max(max_ref_counts[w], k);
    }
    const long r = static_cast<long>(toks.size());
    if (closest_len == std::numeric_limits<long>::max()) {
      closest_len = r;
    } else {
      const long best = std::labs(closest_len - c);
      const long here = std::labs(r - c);
      if (here < best || (here == best && r < closest_len)) closest_len = r;
    }
  }

  long clipped = 0;
  for (const auto& [w, k] : cand_counts) {
    auto it = max_ref_counts.find(w);
    if (it != max_ref_counts.end()) clipped += std::min(k, it->second);
  }
  const double precision = static_cast<double>(clipped) / static_cast<double>(c);
  const double bp =
      std::min(1.0, std::exp(1.0 - static_cast<double>(closest_len) / static_cast<double>(c)));
  return Bleu1Score{precision * bp, false};
}

Rouge1Score rouge1(const std::string& candidate, const std::string& reference) {
  const auto cand = metric_tokenize(candidate);
  const auto ref = metric_tokenize(reference);
  if (cand.empty() || ref.empty()) return Rouge1Score{0.0, 0.0, 0.0, true};
  const auto cand_counts = counts(cand);
  const auto ref_counts = counts(ref);
  long overlap = 0;
  for (const auto& [w, k] : cand_counts) {
    auto it = ref_counts.find(w);
    if (it != ref_counts.end()) overlap += std::min(k, it->second);
  }
  Rouge1Score out;
  out.precision = static_cast<double>(overlap) / static_cast<double>(cand.size());
  out.recall = static_cast<double>(overlap) / static_cast<double>(ref.size());
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// meteor_lite
//
// Match counts are fixed by the staged procedure: per-word exact matches
// first (min of the two counts), then stem matches over the residual words
// (same stem, different word). Only the position assignment is optimized,
// minimizing the chunk count of the final alignment. The search is an exact
// DFS over candidate positions with feasibility pruning and a node budget;
// evaluation sentences are short enough that the budget is never reached.
// ---------------------------------------------------------------------------

namespace {

struct MeteorProblem {
  std::vector<std::string> cand, ref;
  std::vector<std::string> cand_stem, ref_stem;
  std::map<std::string, int> exact_quota;           // word -> pairs
  std::map<std::string, int> stem_quota;            // stem -> pairs
  int total_matches = 0;
};

MeteorProblem build_problem(const std::vector<std::string>& cand,
                            const std::vector<std::string>& ref) {
  MeteorProblem p;
  p.cand = cand;
  p.ref = ref;
  for (const auto& w : cand) p.cand_stem.push_back(metric_stem(w));
  for (const auto& w : ref) p.ref_stem.push_back(metric_stem(w));

  const auto cand_counts = counts(cand);
  const auto ref_counts = counts(ref);
  std::map<std::string, int> cand_residual_by_stem, ref_residual_by_stem;
  for (const auto& [w, k] : cand_counts) {
    auto it = ref_counts.find(w);
    const int exact = it == ref_counts.end() ? 0 : std::min(k, it->second);
    if (exact > 0) p.exact_quota[w] = exact;
    if (k - exact > 0) cand_residual_by_stem[metric_stem(w)] += k - exact;
  }
  for (const auto& [w, k] : ref_counts) {
    auto it = cand_counts.find(w);
    const int exact = it == cand_counts.end() ? 0 : std::min(k, it->second);
    if (k - exact > 0) ref_residual_by_stem[metric_stem(w)] += k - exact;
  }
  for (const auto& [s, k] : cand_residual_by_stem) {
    auto it = ref_residual_by_stem.find(s);
    if (it == ref_residual_by_stem.end()) continue;
    const int q = std::min(k, it->second);
    if (q > 0) p.stem_quota[s] = q;
  }
  for (const auto& [w, k] : p.exact_quota) p.total_matches += k;
  for (const auto& [s, k] : p.stem_quota) p.total_matches += k;
  return p;
}

struct ChunkSearch {
  const MeteorProblem& p;
  std::vector<int> assignment;       // cand pos -> ref pos or -1
  std::vector<bool> ref_used;
  std::map<std::string, int> exact_left;
  std::map<std::string, int> stem_left;
  std::vector<int> exact_ahead_init;  // per cand pos: same-word positions at or after
  long budget = 400000;
  int best = std::numeric_limits<int>::max();

  explicit ChunkSearch(const MeteorProblem& problem) : p(problem) {
    assignment.assign(p.cand.size(), -1);
    ref_used.assign(p.ref.size(), false);
    exact_left = p.exact_quota;
    stem_left = p.stem_quota;
  }

  int chunks_of_assignment() const {
    int chunks = 0;
    int prev_cand = -10, prev_ref = -10;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (assignment[i] < 0) continue;
      if (!(static_cast<int>(i) == prev_cand + 1 && assignment[i] == prev_ref + 1)) ++chunks;
      prev_cand = static_cast<int>(i);
      prev_ref = assignment[i];
    }
    return chunks;
  }

  bool feasible_from(std::size_t next) const {
    // Enough candidate positions ahead to satisfy every remaining quota?
    std::map<std::string, int> word_ahead, stem_ahead;
    for (std::size_t i = next; i < p.cand.size(); ++i) {
      ++word_ahead[p.cand[i]];
      ++stem_ahead[p.cand_stem[i]];
    }
    int need_total = 0;
    for (const auto& [w, k] : exact_left) {
      if (k == 0) continue;
      auto it = word_ahead.find(w);
      if (it == word_ahead.end() || it->second < k) return false;
      need_total += k;
    }
    for (const auto& [s, k] : stem_left) {
      if (k == 0) continue;
      need_total += k;
      // Stem and exact quotas both draw from the same positions; a precise
      // bound needs per-stem accounting.
      int supply = 0;
      auto it = stem_ahead.find(s);
      if (it != stem_ahead.end()) supply = it->second;
      int reserved = 0;
      for (const auto& [w, kw] : exact_left) {
        if (kw > 0 && p.cand_stem.empty() == false && metric_stem(w) == s) reserved += kw;
      }
      if (supply - reserved < k) return false;
    }
    return static_cast<int>(p.cand.size() - next) >= 0 && need_total >= 0;
  }

  void dfs(std::size_t pos) {
    if (budget-- <= 0) return;
    if (pos == p.cand.size()) {
      bool done = true;
      for (const auto& [w, k] : exact_left) done = done && k == 0;
      for (const auto& [s, k] : stem_left) done = done && k == 0;
      if (done) best = std::min(best, chunks_of_assignment());
      return;
    }
    if (!feasible_from(pos)) return;

    const std::string& word = p.cand[pos];
    const std::string& stem = p.cand_stem[pos];

    // Option A: match exactly.
    auto eq = exact_left.find(word);
    if (eq != exact_left.end() && eq->second > 0) {
      for (std::size_t r = 0; r < p.ref.size(); ++r) {
        if (ref_used[r] || p.ref[r] != word) continue;
        ref_used[r] = true;
        --eq->second;
        assignment[pos] = static_cast<int>(r);
        dfs(pos + 1);
        assignment[pos] = -1;
        ++eq->second;
        ref_used[r] = false;
      }
    }
    // Option B: stem match with a different surface word.
    auto sq = stem_left.find(stem);
    if (sq != stem_left.end() && sq->second > 0) {
      for (std::size_t r = 0; r < p.ref.size(); ++r) {
        if (ref_used[r] || p.ref_stem[r] != stem || p.ref[r] == word) continue;
        ref_used[r] = true;
        --sq->second;
        assignment[pos] = static_cast<int>(r);
        dfs(pos + 1);
        assignment[pos] = -1;
        ++sq->second;
        ref_used[r] = false;
      }
    }
    // Option C: leave unmatched.
    dfs(pos + 1);
  }
};

}  // namespace

double meteor_lite(const std::string& candidate, const std::string& reference) {
  const auto cand = metric_tokenize(candidate);
  const auto ref = metric_tokenize(reference);
  if (cand.empty() || ref.empty()) return 0.0;

  const MeteorProblem problem = build_problem(cand, ref);
  if (problem.total_matches == 0) return 0.0;

  ChunkSearch search(problem);
  search.dfs(0);
  const int chunks = search.best == std::numeric_limits<int>::max()
                         ? problem.total_matches  // budget blown: worst case
                         : search.best;

  const double m = problem.total_matches;
  const double precision = m / static_cast<double>(cand.size());
  const double recall = m / static_cast<double>(ref.size());
  const double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double penalty = 0.5 * std::pow(static_cast<double>(chunks) / m, 3.0);
  return f_mean * (1.0 - penalty);
}

// ---------------------------------------------------------------------------
// CIDEr
// ---------------------------------------------------------------------------

namespace {

using NgramCounts = std::map<std::string, double>;

NgramCounts ngram_counts(const std::vector<std::string>& tokens, int n) {
  NgramCounts out;
  if (static_cast<int>(tokens.size()) < n) return out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int j = 1; j < n; ++j) {
      key.push_back('\x1f');
      key += tokens[i + static_cast<std::size_t>(j)];
    }
    out[key] += 1.0;
  }
  return out;
}

double cosine(const NgramCounts& a, const NgramCounts& b,
              const std::map<std::string, double>& idf, double n_ids) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  // Grams absent from the reference corpus have df 0, clamped to 1.
  auto weight = [&idf, n_ids](const std::string& g) {
    auto it = idf.find(g);
    return it == idf.end() ? std::log(n_ids) : it->second;
  };
  for (const auto& [g, c] : a) {
    const double w = weight(g);
    na += (c * w) * (c * w);
    auto it = b.find(g);
    if (it != b.end()) dot += (c * w) * (it->second * w);
  }
  for (const auto& [g, c] : b) {
    const double w = weight(g);
    nb += (c * w) * (c * w);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

double cider(const std::map<std::string, std::string>& candidates,
             const std::map<std::string, std::vector<std::string>>& references) {
  if (candidates.empty()) throw std::invalid_argument("cider: empty id set");
  if (candidates.size() != references.size()) {
    throw std::invalid_argument("cider: candidate and reference id sets differ");
  }
  for (const auto& [id, _] : candidates) {
    if (references.find(id) == references.end()) {
      throw std::invalid_argument("cider: no references for id " + id);
    }
  }

  constexpr int kMaxN = 4;
  const double n_ids = static_cast<double>(candidates.size());
  double corpus = 0.0;

  std::map<std::string, std::vector<std::string>> cand_tokens;
  std::map<std::string, std::vector<std::vector<std::string>>> ref_tokens;
  for (const auto& [id, text] : candidates) cand_tokens[id] = metric_tokenize(text);
  for (const auto& [id, refs] : references) {
    if (refs.empty()) throw std::invalid_argument("cider: id " + id + " has no references");
    auto& list = ref_tokens[id];
    for (const auto& r : refs) list.push_back(metric_tokenize(r));
  }

  std::vector<double> per_id(candidates.size(), 0.0);
  for (int n = 1; n <= kMaxN; ++n) {
    std::map<std::string, double> df;
    for (const auto& [id, refs] : ref_tokens) {
      std::set<std::string> seen;
      for (const auto& toks : refs) {
        for (const auto& [g, _] : ngram_counts(toks, n)) seen.insert(g);
      }
      for (const auto& g : seen) df[g] += 1.0;
    }
    std::map<std::string, double> idf;
    for (const auto& [g, d] : df) idf[g] = std::log(n_ids / std::max(1.0, d));

    std::size_t index = 0;
    for (const auto& [id, _] : candidates) {
      const NgramCounts cand_vec = ngram_counts(cand_tokens[id], n);
      double sim = 0.0;
      const auto& refs = ref_tokens[id];
      for (const auto& toks : refs) {
        sim += cosine(cand_vec, ngram_counts(toks, n), idf);
      }
      sim /= static_cast<double>(refs.size());
      per_id[index] += sim / static_cast<double>(kMaxN);
      ++index;
    }
  }
  for (double s : per_id) corpus += 10.0 * s;
  return corpus / n_ids;
}

}  // namespace sivr
