#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "codelex/corpus.hpp"
#include "codelex/embedding.hpp"
#include "codelex/errors.hpp"
#include "codelex/text_util.hpp"

namespace codelex {

// Word -> number of appearances across the seed words' neighbor lists.
using BoostTable = std::map<std::string, std::size_t>;

// Seed keyword list plus naive singular/plural variants (+s/+es added,
// trailing -s/-es stripped). Matching is always against the full form set.
class SeedLexicon {
 public:
  explicit SeedLexicon(const std::vector<std::string>& words) {
    for (const auto& raw : words) {
      auto w = lowercase_ascii(trim(raw));
      if (!w.empty()) base_.insert(w);
    }
    if (base_.empty()) throw ParameterError("seed lexicon is empty");
    for (const auto& w : base_) {
      forms_.insert(w);
      forms_.insert(w + "s");
      forms_.insert(w + "es");
      if (w.size() > 2 && w.ends_with("es")) forms_.insert(w.substr(0, w.size() - 2));
      if (w.size() > 1 && w.ends_with("s")) forms_.insert(w.substr(0, w.size() - 1));
    }
  }

  static SeedLexicon from_file(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
      auto t = trim(line);
      if (!t.empty() && t[0] != '#') words.emplace_back(t);
    }
    return SeedLexicon(words);
  }

  bool matches(const std::string& word) const { return forms_.count(word) > 0; }
  const std::set<std::string>& words() const { return base_; }
  const std::set<std::string>& all_forms() const { return forms_; }

 private:
  std::set<std::string> base_;
  std::set<std::string> forms_;
};

// Weighted directed word graph. At most one edge per ordered pair; a
// duplicate insertion keeps the larger weight.
class ContextualGraph {
 public:
  std::size_t add_vertex(const std::string& word) {
    auto it = index_.find(word);
    if (it != index_.end()) return it->second;
    const std::size_t id = words_.size();
    index_.emplace(word, id);
    words_.push_back(word);
    out_.emplace_back();
    in_.emplace_back();
    return id;
  }

  void add_edge_max(const std::string& src, const std::string& dst, double weight) {
    if (!(weight > 0.0) || !std::isfinite(weight))
      throw ParameterError("edge weight must be positive and finite");
    const std::size_t u = add_vertex(src);
    const std::size_t v = add_vertex(dst);
    for (auto& [t, w] : out_[u]) {
      if (t == v) {
        w = std::max(w, weight);
        return;
      }
    }
    out_[u].emplace_back(v, weight);
    in_[v].push_back(u);
  }

  std::size_t size() const { return words_.size(); }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& adj : out_) n += adj.size();
    return n;
  }
  bool has_vertex(const std::string& word) const { return index_.count(word) > 0; }
  const std::vector<std::string>& vertices() const { return words_; }
  const std::vector<std::pair<std::size_t, double>>& out_edges(std::size_t u) const {
    return out_[u];
  }
  const std::string& word_of(std::size_t v) const { return words_[v]; }

  std::set<std::string> predecessors(const std::string& word) const {
    std::set<std::string> preds;
    auto it = index_.find(word);
    if (it == index_.end()) return preds;
    for (std::size_t u : in_[it->second]) preds.insert(words_[u]);
    return preds;
  }

  void write_edge_tsv(const std::string& path, const std::string& config_hash = "") const {
    auto out = open_output(path);
    if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
    out << std::setprecision(17);
    std::vector<std::tuple<std::string, std::string, double>> rows;
    for (std::size_t u = 0; u < size(); ++u)
      for (const auto& [v, w] : out_[u]) rows.emplace_back(words_[u], words_[v], w);
    std::sort(rows.begin(), rows.end());
    for (const auto& [s, t, w] : rows) out << s << '\t' << t << '\t' << w << '\n';
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::pair<std::size_t, double>>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

// Pre-initialization pass: query every in-vocabulary seed form and count
// how often each word shows up across the result lists.
template <class ModelT>
BoostTable compute_boost_from_words(const ModelT& model, const std::set<std::string>& seeds,
                                    std::size_t topn) {
  if (topn == 0) throw ParameterError("compute_boost: topn must be >= 1");
  BoostTable boost;
  for (const auto& w : seeds) {
    if (!model.contains(w)) continue;
    try {
      for (const auto& nb : model.nearest_neighbors(w, topn)) ++boost[nb.word];
    } catch (const DegenerateVectorError&) {
      std::cerr << "[codelex] skipping seed with a degenerate vector: " << w << "\n";
    }
  }
  return boost;
}

template <class ModelT>
BoostTable compute_boost(const ModelT& model, const SeedLexicon& lexicon, std::size_t topn) {
  auto boost = compute_boost_from_words(model, lexicon.all_forms(), topn);
  if (boost.empty())
    std::cerr << "[codelex] warning: no seed lexicon word is in the model vocabulary; "
                 "boost table is empty\n";
  return boost;
}

namespace detail {

// wt(v1, v2) given a precomputed sim(v1, v2). Non-positive results are
// clamped so the transition matrix stays stochastic.
template <class ModelT>
double weight_from_sim(const ModelT& model, const BoostTable& boost,
                       const std::string& v1, double sim) {
  constexpr double kWeightFloor = 1e-6;
  double w = sim;
  auto it = boost.find(v1);
  if (it != boost.end())
    w = std::log(model.frequency(v1)) * static_cast<double>(it->second) + sim;
  return w > kWeightFloor ? w : kWeightFloor;
}

}  // namespace detail

// wt(v1, v2): ln(frq(v1)) * boost(v1) + sim(v1, v2) when v1 is boosted,
// plain cosine otherwise.
template <class ModelT>
double edge_weight(const ModelT& model, const BoostTable& boost, const std::string& v1,
                   const std::string& v2) {
  return detail::weight_from_sim(model, boost, v1, model.cosine(v1, v2));
}

// Expands `word` and then, for depth rounds total, every vertex not yet
// expanded, attaching query->neighbor edges. Each vertex is expanded at
// most once, so the vertex count is bounded by sum_{i=0..depth} topn^i.
template <class ModelT>
ContextualGraph build_graph(const std::string& word, const ModelT& model, std::size_t depth,
                            const BoostTable& boost, std::size_t topn) {
  if (depth == 0) throw ParameterError("build_graph: depth must be >= 1");
  if (topn == 0) throw ParameterError("build_graph: topn must be >= 1");
  if (!model.contains(word)) throw NotInVocabularyError(word);

  ContextualGraph g;
  g.add_vertex(word);
  std::unordered_set<std::string> expanded;
  for (std::size_t round = 0; round < depth; ++round) {
    const std::vector<std::string> snapshot = g.vertices();
    for (const auto& v : snapshot) {
      if (expanded.count(v)) continue;
      expanded.insert(v);
      if (!model.contains(v)) {
        std::cerr << "[codelex] skipping out-of-vocabulary vertex: " << v << "\n";
        continue;
      }
      for (const auto& nb : model.nearest_neighbors(v, topn))
        g.add_edge_max(v, nb.word, detail::weight_from_sim(model, boost, v, nb.score));
    }
  }
  return g;
}

// Union of vertex and edge sets; duplicate edges keep the maximum weight.
inline ContextualGraph union_graphs(const std::vector<ContextualGraph>& graphs) {
  ContextualGraph out;
  for (const auto& g : graphs) {
    for (const auto& v : g.vertices()) out.add_vertex(v);
    for (std::size_t u = 0; u < g.size(); ++u)
      for (const auto& [v, w] : g.out_edges(u))
        out.add_edge_max(g.word_of(u), g.word_of(v), w);
  }
  return out;
}

struct PageRankResult {
  std::map<std::string, double> scores;
  bool converged = false;
  std::size_t iterations = 0;
};

// Weighted PageRank. The transition probability u -> v is
// wt(u,v) / sum_x wt(u,x); dangling vertices redistribute over the
// restart distribution (uniform unless one is given).
inline PageRankResult pagerank(const ContextualGraph& g, double damping = 0.85,
                               double eps = 1e-10, std::size_t max_iter = 200,
                               const std::map<std::string, double>* restart = nullptr) {
  if (!(damping > 0.0) || !(damping < 1.0))
    throw ParameterError("pagerank: damping must lie in (0, 1)");
  if (eps <= 0.0) throw ParameterError("pagerank: eps must be positive");
  if (max_iter == 0) throw ParameterError("pagerank: max_iter must be >= 1");

  PageRankResult result;
  const std::size_t n = g.size();
  if (n == 0) {
    result.converged = true;
    return result;
  }

  std::vector<double> teleport(n, 1.0 / static_cast<double>(n));
  if (restart != nullptr) {
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      auto it = restart->find(g.word_of(v));
      double r = it == restart->end() ? 0.0 : it->second;
      if (r < 0.0) throw ParameterError("pagerank: negative restart mass");
      teleport[v] = r;
      total += r;
    }
    if (total > 0.0) {
      for (auto& t : teleport) t /= total;
    } else {
      std::fill(teleport.begin(), teleport.end(), 1.0 / static_cast<double>(n));
    }
  }

  std::vector<double> out_sum(n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& [v, w] : g.out_edges(u)) out_sum[u] += w;

  std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      if (g.out_edges(u).empty()) dangling += x[u];
    for (std::size_t v = 0; v < n; ++v)
      next[v] = (1.0 - damping) * teleport[v] + damping * dangling * teleport[v];
    for (std::size_t u = 0; u < n; ++u) {
      if (g.out_edges(u).empty()) continue;
      const double share = damping * x[u] / out_sum[u];
      for (const auto& [v, w] : g.out_edges(u)) next[v] += share * w;
    }
    double diff = 0.0;
    for (std::size_t v = 0; v < n; ++v) diff += std::abs(next[v] - x[v]);
    x.swap(next);
    result.iterations = iter;
    if (diff < eps) {
      result.converged = true;
      break;
    }
  }
  for (std::size_t v = 0; v < n; ++v) result.scores[g.word_of(v)] = x[v];
  return result;
}

// Ranked scores, highest first, ties broken lexicographically.
inline std::vector<std::pair<std::string, double>> ranked_scores(
    const std::map<std::string, double>& scores) {
  std::vector<std::pair<std::string, double>> out(scores.begin(), scores.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

// Keeps w iff df(w, hate) > df(w, clean) strictly, then drops every seed
// form. Input order is preserved.
inline std::vector<std::pair<std::string, double>> trim_by_df(
    const std::vector<std::pair<std::string, double>>& ranked, const CorpusStats& stats_hate,
    const CorpusStats& stats_clean, const SeedLexicon& lexicon) {
  std::vector<std::pair<std::string, double>> kept;
  for (const auto& [word, score] : ranked) {
    if (lexicon.matches(word)) continue;
    if (doc_freq(stats_hate, word) > doc_freq(stats_clean, word))
      kept.emplace_back(word, score);
  }
  return kept;
}

struct ExpandParams {
  std::size_t boost_topn = 20;
  std::size_t graph_topn = 3;
  std::size_t graph_depth = 2;
  double damping = 0.85;
  double eps = 1e-10;
  std::size_t max_iter = 200;
  bool recompute_boost = true;  // refine pass re-derives boost from the enlarged seed
  bool boost_teleport = false;  // restart distribution proportional to boost
};

struct ExpandResult {
  std::vector<std::string> words;  // final candidates, revised rank order
  std::vector<std::pair<std::string, double>> scored;
  ContextualGraph graph;  // refine-pass union graph
  BoostTable boost;
  bool pagerank_converged = true;
};

// Full seed expansion: boost -> per-seed graphs -> union -> PageRank ->
// df trim, then a refine pass over (trimmed + seeds) with a revised
// PageRank and the same trim.
template <class ModelT>
ExpandResult expand_seed(const SeedLexicon& lexicon, const ModelT& model,
                         const CorpusStats& stats_hate, const CorpusStats& stats_clean,
                         const ExpandParams& params = {}) {
  ExpandResult result;
  result.boost = compute_boost(model, lexicon, params.boost_topn);

  std::vector<std::string> seeds;
  for (const auto& h : lexicon.all_forms())
    if (model.contains(h)) seeds.push_back(h);
  if (seeds.empty()) return result;

  auto run_pass = [&](const std::vector<std::string>& inputs, const BoostTable& boost)
      -> std::pair<ContextualGraph, PageRankResult> {
    std::vector<ContextualGraph> graphs;
    graphs.reserve(inputs.size());
    for (const auto& w : inputs) {
      if (!model.contains(w)) continue;
      try {
        graphs.push_back(
            build_graph(w, model, params.graph_depth, boost, params.graph_topn));
      } catch (const DegenerateVectorError&) {
        std::cerr << "[codelex] skipping seed with a degenerate vector: " << w << "\n";
      }
    }
    ContextualGraph g = union_graphs(graphs);
    std::map<std::string, double> teleport;
    if (params.boost_teleport)
      for (const auto& [w, c] : boost) teleport[w] = static_cast<double>(c);
    auto pr = pagerank(g, params.damping, params.eps, params.max_iter,
                       params.boost_teleport ? &teleport : nullptr);
    return {std::move(g), std::move(pr)};
  };

  auto [graph1, pr1] = run_pass(seeds, result.boost);
  auto trimmed1 = trim_by_df(ranked_scores(pr1.scores), stats_hate, stats_clean, lexicon);

  std::vector<std::string> refine_inputs;
  std::unordered_set<std::string> present;
  for (const auto& [w, s] : trimmed1) {
    if (present.insert(w).second) refine_inputs.push_back(w);
  }
  for (const auto& h : seeds)
    if (present.insert(h).second) refine_inputs.push_back(h);

  std::set<std::string> refine_set(refine_inputs.begin(), refine_inputs.end());
  BoostTable boost2 = params.recompute_boost
                          ? compute_boost_from_words(model, refine_set, params.boost_topn)
                          : result.boost;

  auto [graph2, pr2] = run_pass(refine_inputs, boost2);
  result.scored = trim_by_df(ranked_scores(pr2.scores), stats_hate, stats_clean, lexicon);
  for (const auto& [w, s] : result.scored) result.words.push_back(w);
  result.graph = std::move(graph2);
  result.pagerank_converged = pr1.converged && pr2.converged;
  return result;
}

inline void write_scores_tsv(const std::vector<std::pair<std::string, double>>& scored,
                             const std::string& path, const std::string& config_hash = "") {
  auto out = open_output(path);
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  out << std::setprecision(17);
  for (const auto& [word, score] : scored) out << word << '\t' << score << '\n';
}

}  // namespace codelex
