#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codelex/errors.hpp"
#include "codelex/text_util.hpp"

namespace codelex {

// Directed follower graph: edge (s, t) means "s follows t".
// Vertices are indexed in sorted id order so results do not depend on
// input file ordering.
class UserGraph {
 public:
  UserGraph() = default;

  UserGraph(std::initializer_list<std::pair<std::string, std::string>> edges)
      : UserGraph(std::vector<std::pair<std::string, std::string>>(edges)) {}

  UserGraph(const std::vector<std::pair<std::string, std::string>>& edges,
            const std::vector<std::string>& extra_vertices = {}) {
    std::set<std::string> ids(extra_vertices.begin(), extra_vertices.end());
    for (const auto& [s, t] : edges) {
      ids.insert(s);
      ids.insert(t);
    }
    ids_.assign(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;
    out_.resize(ids_.size());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [s, t] : edges) {
      if (s == t) {
        ++self_loops_skipped_;
        continue;
      }
      auto e = std::make_pair(index_.at(s), index_.at(t));
      if (seen.insert(e).second) out_[e.first].push_back(e.second);
    }
    for (auto& adj : out_) std::sort(adj.begin(), adj.end());
  }

  // One "follower<TAB>followee" pair per line; '#' lines ignored.
  static UserGraph from_edge_list(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto cols = split(std::string(t), '\t');
      if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
        throw InputError(path + ": line " + std::to_string(line_no) +
                         ": expected follower<TAB>followee");
      edges.emplace_back(cols[0], cols[1]);
    }
    return UserGraph(edges);
  }

  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& adj : out_) n += adj.size();
    return n;
  }
  std::size_t self_loops_skipped() const { return self_loops_skipped_; }
  const std::vector<std::string>& vertex_ids() const { return ids_; }
  bool has_vertex(const std::string& id) const { return index_.count(id) > 0; }
  const std::vector<std::size_t>& out_neighbors(std::size_t v) const { return out_[v]; }

  std::vector<std::vector<std::size_t>> undirected_adjacency() const {
    std::vector<std::set<std::size_t>> adj(size());
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v : out_[u]) {
        adj[u].insert(v);
        adj[v].insert(u);
      }
    std::vector<std::vector<std::size_t>> out(size());
    for (std::size_t u = 0; u < size(); ++u) out[u].assign(adj[u].begin(), adj[u].end());
    return out;
  }

  UserGraph induced(const std::set<std::string>& keep) const {
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t u = 0; u < size(); ++u) {
      if (!keep.count(ids_[u])) continue;
      for (std::size_t v : out_[u])
        if (keep.count(ids_[v])) edges.emplace_back(ids_[u], ids_[v]);
    }
    return UserGraph(edges, std::vector<std::string>(keep.begin(), keep.end()));
  }

  void write_edge_list(const std::string& path, const std::string& config_hash = "") const {
    auto out = open_output(path);
    if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v : out_[u]) out << ids_[u] << '\t' << ids_[v] << '\n';
  }

 private:
  std::vector<std::string> ids_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::size_t self_loops_skipped_ = 0;
};

using CentralityScores = std::map<std::string, double>;

// Brandes dependency accumulation from an explicit pivot set, extrapolated
// by |V| / |pivots|. With every vertex as a pivot this is exact
// betweenness. The random-sampling entry point below wraps this.
inline CentralityScores betweenness_from_pivots(const UserGraph& g,
                                                const std::vector<std::size_t>& pivot_indices,
                                                bool directed = true) {
  CentralityScores scores;
  const std::size_t n = g.size();
  if (n == 0) return scores;
  if (pivot_indices.empty())
    throw ParameterError("betweenness_from_pivots: pivot set must be nonempty");

  std::vector<std::vector<std::size_t>> adj;
  if (directed) {
    adj.resize(n);
    for (std::size_t u = 0; u < n; ++u) adj[u] = g.out_neighbors(u);
  } else {
    adj = g.undirected_adjacency();
  }

  const std::vector<std::size_t>& sources = pivot_indices;
  std::vector<double> acc(n, 0.0);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<std::vector<std::size_t>> pred(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s : sources) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1L);
    for (auto& p : pred) p.clear();
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (std::size_t w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t w = *it;
      for (std::size_t v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) acc[w] += delta[w];
    }
  }

  const double scale = static_cast<double>(n) / static_cast<double>(sources.size());
  for (std::size_t v = 0; v < n; ++v) scores[g.vertex_ids()[v]] = acc[v] * scale;
  return scores;
}

// Samples `pivots` source vertices uniformly without replacement and
// extrapolates. pivots == |V| reproduces exact betweenness.
inline CentralityScores approx_betweenness(const UserGraph& g, std::size_t pivots,
                                           std::uint64_t seed, bool directed = true) {
  const std::size_t n = g.size();
  if (n == 0) return {};
  if (pivots == 0) throw ParameterError("approx_betweenness: pivots must be >= 1");
  if (pivots > n)
    throw ParameterError("approx_betweenness: pivots exceed vertex count");
  std::vector<std::size_t> sources;
  if (pivots == n) {
    sources.resize(n);
    for (std::size_t i = 0; i < n; ++i) sources[i] = i;
  } else {
    sources = sample_indices(n, pivots, seed);
    std::sort(sources.begin(), sources.end());
  }
  return betweenness_from_pivots(g, sources, directed);
}

// authors plus the k highest-centrality non-author vertices.
inline std::set<std::string> extend_seed(const UserGraph& g,
                                         const std::set<std::string>& authors,
                                         std::size_t k, std::size_t pivots,
                                         std::uint64_t seed, bool directed = true) {
  for (const auto& a : authors)
    if (!g.has_vertex(a))
      throw ParameterError("extend_seed: author not in graph: " + a);
  std::set<std::string> result = authors;
  if (k == 0) return result;
  if (k > g.size() - authors.size()) {
    std::cerr << "[codelex] warning: extend_seed k=" << k
              << " exceeds available vertices; returning all vertices\n";
    result.insert(g.vertex_ids().begin(), g.vertex_ids().end());
    return result;
  }
  auto scores = approx_betweenness(g, pivots, seed, directed);
  std::vector<std::pair<std::string, double>> ranked;
  for (const auto& id : g.vertex_ids())
    if (!authors.count(id)) ranked.emplace_back(id, scores.at(id));
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (std::size_t i = 0; i < k; ++i) result.insert(ranked[i].first);
  return result;
}

// Uniform induced subgraph of n vertices, deterministic per seed.
inline UserGraph sample_subgraph(const UserGraph& g, std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > g.size())
    throw ParameterError("sample_subgraph: n out of range [1, |V|]");
  auto idx = sample_indices(g.size(), n, seed);
  std::set<std::string> keep;
  for (std::size_t i : idx) keep.insert(g.vertex_ids()[i]);
  return g.induced(keep);
}

inline void write_centrality_tsv(const CentralityScores& scores, const std::string& path,
                                 const std::string& config_hash = "") {
  auto out = open_output(path);
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  std::vector<std::pair<std::string, double>> ranked(scores.begin(), scores.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  out << std::setprecision(17);
  for (const auto& [id, score] : ranked) out << id << '\t' << score << '\n';
}

}  // namespace codelex
