#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "codelex/corpus.hpp"
#include "codelex/embedding.hpp"
#include "codelex/errors.hpp"
#include "codelex/text_util.hpp"

namespace codelex {

// How co-occurrence contexts are read off the corpus.
//   window:     bag-of-words window, models relatedness
//   position:   offset-labeled window ("word@-1"), models similarity
//   dependency: pre-parsed head/label file, models similarity
struct ContextSpec {
  enum class Mode { window, position, dependency };
  Mode mode = Mode::window;
  std::size_t window = 5;
  std::string dependency_path;
};

namespace detail {

using PairCounts = std::map<std::pair<std::string, std::string>, double>;

inline void count_window_contexts(const Corpus& corpus, std::size_t window,
                                  bool positional, PairCounts* counts) {
  for (const auto& doc : corpus.docs) {
    const auto& toks = doc.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      const std::size_t lo = i >= window ? i - window : 0;
      const std::size_t hi = std::min(toks.size(), i + window + 1);
      for (std::size_t j = lo; j < hi; ++j) {
        if (j == i) continue;
        std::string ctx = positional
                              ? toks[j] + "@" + std::to_string(static_cast<long>(j) -
                                                               static_cast<long>(i))
                              : toks[j];
        (*counts)[{toks[i], std::move(ctx)}] += 1.0;
      }
    }
  }
}

// Rows: doc_id token head_index dep_label. head_index is 1-based within
// the document's token sequence, 0 marks the root.
inline void count_dependency_contexts(const std::string& path, PairCounts* counts) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  std::string current_doc;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::string>>> rows;

  auto flush_doc = [&]() {
    for (const auto& [token, link] : rows) {
      const auto& [head_index, label] = link;
      if (head_index == 0) continue;  // root
      if (head_index > rows.size())
        throw InputError(path + ": head index " + std::to_string(head_index) +
                         " out of range in doc " + current_doc);
      const std::string& head = rows[head_index - 1].first;
      (*counts)[{token, head + "/" + label}] += 1.0;
      (*counts)[{head, token + "/" + label + "i"}] += 1.0;
    }
    rows.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cols = split_ws(t);
    if (cols.size() != 4)
      throw InputError(path + ": line " + std::to_string(line_no) +
                       ": expected 'doc_id token head_index dep_label'");
    if (cols[0] != current_doc) {
      flush_doc();
      current_doc = cols[0];
    }
    std::size_t head = 0;
    try {
      head = std::stoull(cols[2]);
    } catch (const std::exception&) {
      throw InputError(path + ": line " + std::to_string(line_no) +
                       ": bad head index '" + cols[2] + "'");
    }
    rows.emplace_back(lowercase_ascii(cols[1]), std::make_pair(head, cols[3]));
  }
  flush_doc();
  if (counts->empty())
    throw InputError(path + ": no dependency rows found");
}

}  // namespace detail

// Count-based embeddings: word-context counts -> PPMI -> truncated SVD.
// Deterministic for a fixed corpus: vocab and context axes are sorted
// before the factorization, so document order cannot leak in.
inline EmbeddingModel train_count_model(const Corpus& corpus, const ContextSpec& spec,
                                        std::size_t dim) {
  if (dim == 0) throw ParameterError("train_count_model: dim must be positive");
  if (corpus.docs.empty()) throw ParameterError("train_count_model: empty corpus");

  detail::PairCounts counts;
  switch (spec.mode) {
    case ContextSpec::Mode::window:
      detail::count_window_contexts(corpus, spec.window, false, &counts);
      break;
    case ContextSpec::Mode::position:
      detail::count_window_contexts(corpus, spec.window, true, &counts);
      break;
    case ContextSpec::Mode::dependency:
      detail::count_dependency_contexts(spec.dependency_path, &counts);
      break;
  }
  if (counts.empty())
    throw ParameterError("train_count_model: no co-occurrence events (documents too short?)");

  // counts is an ordered map, so both axes come out sorted.
  std::set<std::string> word_set, ctx_set;
  for (const auto& [pair, c] : counts) {
    word_set.insert(pair.first);
    ctx_set.insert(pair.second);
  }
  std::vector<std::string> words(word_set.begin(), word_set.end());
  std::vector<std::string> contexts(ctx_set.begin(), ctx_set.end());
  const std::size_t rank_available = std::min(words.size(), contexts.size());
  if (dim > rank_available)
    throw ParameterError("train_count_model: dim " + std::to_string(dim) +
                         " exceeds available rank " + std::to_string(rank_available));

  std::unordered_map<std::string, std::size_t> widx, cidx;
  for (std::size_t i = 0; i < words.size(); ++i) widx[words[i]] = i;
  for (std::size_t j = 0; j < contexts.size(); ++j) cidx[contexts[j]] = j;

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(words.size()),
                                            static_cast<Eigen::Index>(contexts.size()));
  std::vector<double> row_sum(words.size(), 0.0), col_sum(contexts.size(), 0.0);
  double total = 0.0;
  for (const auto& [pair, c] : counts) {
    row_sum[widx[pair.first]] += c;
    col_sum[cidx[pair.second]] += c;
    total += c;
  }

  // Positive PMI: max(0, ln(#(w,c) * T / (#(w) * #(c))))
  for (const auto& [pair, c] : counts) {
    const auto i = static_cast<Eigen::Index>(widx[pair.first]);
    const auto j = static_cast<Eigen::Index>(cidx[pair.second]);
    const double pmi =
        std::log(c * total / (row_sum[widx[pair.first]] * col_sum[cidx[pair.second]]));
    m(i, j) = std::max(pmi, 0.0);
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto k = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd vectors =
      svd.matrixU().leftCols(k) *
      svd.singularValues().head(k).cwiseSqrt().asDiagonal();

  std::vector<double> data(words.size() * dim);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t d = 0; d < dim; ++d)
      data[i * dim + d] = vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d));

  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& w : words) {
    auto it = corpus.stats.term_count.find(w);
    freq[w] = it == corpus.stats.term_count.end() ? 1 : it->second;
  }

  EmbeddingModel model(std::move(words), std::move(data), dim, std::move(freq));
  model.kind = spec.mode == ContextSpec::Mode::window ? ModelKind::relatedness
                                                      : ModelKind::similarity;
  return model;
}

}  // namespace codelex
