#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codelex/errors.hpp"
#include "codelex/text_util.hpp"

namespace codelex {

constexpr int kLikertMin = 0;
constexpr int kLikertMax = 4;

// Ordinal ratings per item per annotator; absent entries are missing.
struct AnnotationMatrix {
  std::vector<std::string> items;
  std::vector<std::string> annotators;
  // ratings[item][annotator], -1 = missing
  std::vector<std::vector<int>> ratings;

  std::vector<int> item_ratings(std::size_t item) const {
    std::vector<int> out;
    for (int r : ratings[item])
      if (r >= 0) out.push_back(r);
    return out;
  }

  // CSV with header item_id,annotator_id,rating.
  static AnnotationMatrix from_csv(const std::string& path) {
    auto in = open_input(path);
    AnnotationMatrix m;
    std::map<std::string, std::size_t> item_idx, ann_idx;
    std::vector<std::tuple<std::size_t, std::size_t, int>> cells;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
      ++line_no;
      auto t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto cols = split(std::string(t), ',');
      if (cols.size() != 3)
        throw InputError(path + ": line " + std::to_string(line_no) +
                         ": expected item_id,annotator_id,rating");
      if (!saw_header) {
        saw_header = true;
        if (lowercase_ascii(trim(cols[0])) == "item_id") continue;
      }
      std::string item(trim(cols[0])), ann(trim(cols[1]));
      int rating = 0;
      try {
        rating = std::stoi(std::string(trim(cols[2])));
      } catch (const std::exception&) {
        throw InputError(path + ": line " + std::to_string(line_no) + ": bad rating '" +
                         cols[2] + "'");
      }
      if (rating < kLikertMin || rating > kLikertMax)
        throw InputError(path + ": line " + std::to_string(line_no) +
                         ": rating outside the 0..4 scale");
      auto [ii, inew] = item_idx.try_emplace(item, item_idx.size());
      auto [ai, anew] = ann_idx.try_emplace(ann, ann_idx.size());
      if (inew) m.items.push_back(item);
      if (anew) m.annotators.push_back(ann);
      cells.emplace_back(ii->second, ai->second, rating);
    }
    m.ratings.assign(m.items.size(), std::vector<int>(m.annotators.size(), -1));
    for (const auto& [i, a, r] : cells) {
      if (m.ratings[i][a] >= 0)
        throw InputError(path + ": duplicate rating for item '" + m.items[i] +
                         "' by annotator '" + m.annotators[a] + "'");
      m.ratings[i][a] = r;
    }
    return m;
  }
};

// Krippendorff's alpha with the ordinal difference function. Coincidence
// pair counts are kept as integers grouped by the number of raters in a
// unit, so the result is bit-identical under item and annotator
// permutations.
inline double krippendorff_alpha(const AnnotationMatrix& m) {
  // pair_counts[m_u][(c, k)] over ordered value pairs within units
  std::map<std::size_t, std::map<std::pair<int, int>, std::uint64_t>> pair_counts;
  std::size_t pairable_units = 0;
  for (std::size_t i = 0; i < m.items.size(); ++i) {
    auto vals = m.item_ratings(i);
    if (vals.size() < 2) continue;
    ++pairable_units;
    auto& counts = pair_counts[vals.size()];
    for (std::size_t a = 0; a < vals.size(); ++a)
      for (std::size_t b = 0; b < vals.size(); ++b)
        if (a != b) ++counts[{vals[a], vals[b]}];
  }
  if (pairable_units < 2)
    throw ParameterError("krippendorff_alpha: need at least 2 items with >= 2 ratings");

  std::map<std::pair<int, int>, double> o;
  for (const auto& [m_u, counts] : pair_counts) {
    const double denom = static_cast<double>(m_u - 1);
    for (const auto& [pair, c] : counts) o[pair] += static_cast<double>(c) / denom;
  }

  std::map<int, double> marginal;
  for (const auto& [pair, v] : o) marginal[pair.first] += v;
  std::vector<int> values;
  for (const auto& [val, nc] : marginal) values.push_back(val);

  double n = 0.0;
  for (const auto& [val, nc] : marginal) n += nc;

  auto delta2 = [&](int c, int k) {
    const int lo = std::min(c, k), hi = std::max(c, k);
    double span = 0.0;
    for (const auto& [val, nc] : marginal)
      if (val >= lo && val <= hi) span += nc;
    const double d = span - (marginal.at(lo) + marginal.at(hi)) / 2.0;
    return d * d;
  };

  double observed = 0.0, expected = 0.0;
  for (int c : values)
    for (int k : values) {
      if (c == k) continue;
      const double d2 = delta2(c, k);
      auto it = o.find({c, k});
      if (it != o.end()) observed += it->second * d2;
      expected += marginal.at(c) * marginal.at(k) * d2;
    }
  if (expected == 0.0)
    throw DegenerateMatrixError(
        "krippendorff_alpha: zero expected disagreement (all ratings identical)");
  return 1.0 - (n - 1.0) * observed / expected;
}

// Modal rating; ties break toward the higher (more severe) value.
inline int majority_label(const std::vector<int>& ratings) {
  if (ratings.empty()) throw ParameterError("majority_label: empty ratings");
  std::map<int, std::size_t> counts;
  for (int r : ratings) ++counts[r];
  int best = ratings.front();
  std::size_t best_count = 0;
  for (const auto& [value, count] : counts) {
    if (count > best_count || (count == best_count && value > best)) {
      best = value;
      best_count = count;
    }
  }
  return best;
}

enum class BinaryLabel { hate, not_hate };

inline const char* binary_label_name(BinaryLabel b) {
  return b == BinaryLabel::hate ? "hate" : "not_hate";
}

// Above the neutral point (2) counts as hate; neutral maps to not_hate.
inline BinaryLabel likert_to_binary(int rating) {
  if (rating < kLikertMin || rating > kLikertMax)
    throw ParameterError("likert_to_binary: rating outside the 0..4 scale");
  return rating > 2 ? BinaryLabel::hate : BinaryLabel::not_hate;
}

struct BinaryEval {
  // (predicted, truth) per item
  std::vector<std::pair<BinaryLabel, BinaryLabel>> items;
};

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

inline Confusion confusion_counts(const BinaryEval& eval, BinaryLabel positive) {
  Confusion c;
  for (const auto& [pred, truth] : eval.items) {
    const bool p = pred == positive, t = truth == positive;
    if (p && t) ++c.tp;
    else if (p && !t) ++c.fp;
    else if (!p && t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

struct ClassMetrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::string note;  // explains any undefined metric
};

inline ClassMetrics precision_recall_f1(const BinaryEval& eval, BinaryLabel positive) {
  const Confusion c = confusion_counts(eval, positive);
  ClassMetrics m;
  if (c.tp + c.fp > 0)
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  else
    m.note += "precision undefined: no predicted positives; ";
  if (c.tp + c.fn > 0)
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  else
    m.note += "recall undefined: no truth positives; ";
  if (m.precision && m.recall) {
    if (*m.precision + *m.recall > 0.0)
      m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
    else
      m.note += "f1 undefined: precision + recall is zero; ";
  } else {
    m.note += "f1 undefined: needs both precision and recall; ";
  }
  if (!m.note.empty()) m.note.resize(m.note.size() - 2);
  return m;
}

}  // namespace codelex
