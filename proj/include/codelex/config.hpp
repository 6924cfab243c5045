#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "codelex/errors.hpp"
#include "codelex/text_util.hpp"

namespace codelex {

// Every tunable in one place. Defaults mirror the reference experiment
// settings so a bare run needs no flags.
struct PipelineConfig {
  // inputs / outputs
  std::string out_dir = ".";
  std::string input_path;
  std::string source = "hate_community";
  std::string lexicon_path;
  std::string stoplist_path;
  std::string similarity_model_path;
  std::string relatedness_model_path;
  std::string similarity_freq_path;
  std::string relatedness_freq_path;
  std::string dependency_path;
  std::string hate_stats_path;
  std::string clean_stats_path;
  std::string candidates_path;
  std::string edges_path;
  std::string authors_path;
  std::string annotations_path;
  std::string truth_path;
  std::string report_path;

  // expansion / search parameters
  std::size_t boost_topn = 20;
  std::size_t graph_topn = 3;
  std::size_t graph_depth = 2;
  std::size_t search_topn = 5;
  std::size_t search_depth = 2;
  double th = 0.2;
  double damping = 0.85;
  double eps = 1e-10;
  std::size_t max_iter = 200;
  std::uint64_t rng_seed = 1;

  // training
  std::string embed_kind = "similarity";  // similarity | relatedness
  std::size_t dim_similarity = 200;
  std::size_t dim_relatedness = 300;
  std::size_t window = 5;
  std::string context = "";  // window | position | dependency (per-kind default)

  // community graph
  std::size_t pivots = 0;  // 0 = use every vertex
  std::size_t extend_k = 0;
  std::size_t sample_n = 0;
  bool betweenness_directed = true;

  // misc
  std::size_t tfidf_k = 50;
  bool boost_teleport = false;
  bool refine_recompute_boost = true;
};

namespace detail {

inline std::map<std::string, std::string> config_key_values(const PipelineConfig& c) {
  std::map<std::string, std::string> kv;
  auto put_num = [&](const char* key, auto v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    kv[key] = os.str();
  };
  kv["input_path"] = c.input_path;
  kv["source"] = c.source;
  kv["lexicon_path"] = c.lexicon_path;
  kv["stoplist_path"] = c.stoplist_path;
  kv["similarity_model_path"] = c.similarity_model_path;
  kv["relatedness_model_path"] = c.relatedness_model_path;
  kv["similarity_freq_path"] = c.similarity_freq_path;
  kv["relatedness_freq_path"] = c.relatedness_freq_path;
  kv["dependency_path"] = c.dependency_path;
  kv["hate_stats_path"] = c.hate_stats_path;
  kv["clean_stats_path"] = c.clean_stats_path;
  kv["candidates_path"] = c.candidates_path;
  kv["edges_path"] = c.edges_path;
  kv["authors_path"] = c.authors_path;
  kv["annotations_path"] = c.annotations_path;
  kv["truth_path"] = c.truth_path;
  kv["report_path"] = c.report_path;
  put_num("boost_topn", c.boost_topn);
  put_num("graph_topn", c.graph_topn);
  put_num("graph_depth", c.graph_depth);
  put_num("search_topn", c.search_topn);
  put_num("search_depth", c.search_depth);
  put_num("th", c.th);
  put_num("damping", c.damping);
  put_num("eps", c.eps);
  put_num("max_iter", c.max_iter);
  put_num("rng_seed", c.rng_seed);
  kv["embed_kind"] = c.embed_kind;
  put_num("dim_similarity", c.dim_similarity);
  put_num("dim_relatedness", c.dim_relatedness);
  put_num("window", c.window);
  kv["context"] = c.context;
  put_num("pivots", c.pivots);
  put_num("extend_k", c.extend_k);
  put_num("sample_n", c.sample_n);
  kv["betweenness_directed"] = c.betweenness_directed ? "true" : "false";
  put_num("tfidf_k", c.tfidf_k);
  kv["boost_teleport"] = c.boost_teleport ? "true" : "false";
  kv["refine_recompute_boost"] = c.refine_recompute_boost ? "true" : "false";
  return kv;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParameterError("config: bad boolean for " + key + ": '" + v + "'");
}

}  // namespace detail

// Fingerprint of the semantic configuration. out_dir is excluded so the
// same run into two directories produces identical artifacts.
inline std::string config_hash(const PipelineConfig& c) {
  std::ostringstream canon;
  for (const auto& [k, v] : detail::config_key_values(c)) canon << k << '=' << v << '\n';
  return hex64(fnv1a64(canon.str()));
}

inline void write_config(const PipelineConfig& c, const std::string& path) {
  auto out = open_output(path);
  out << "# resolved run configuration\n";
  for (const auto& [k, v] : detail::config_key_values(c)) out << k << " = " << v << '\n';
  out << "config_hash = " << config_hash(c) << '\n';
}

// Flat key = value file; '#' starts a comment. Unknown keys are fatal so
// typos cannot silently fall back to defaults.
inline void load_config(const std::string& path, PipelineConfig* c) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ParameterError(path + ": line " + std::to_string(line_no) +
                           ": expected key = value");
    std::string key(trim(t.substr(0, eq)));
    std::string value(trim(t.substr(eq + 1)));
    try {
      if (key == "out_dir") c->out_dir = value;
      else if (key == "input_path") c->input_path = value;
      else if (key == "source") c->source = value;
      else if (key == "lexicon_path") c->lexicon_path = value;
      else if (key == "stoplist_path") c->stoplist_path = value;
      else if (key == "similarity_model_path") c->similarity_model_path = value;
      else if (key == "relatedness_model_path") c->relatedness_model_path = value;
      else if (key == "similarity_freq_path") c->similarity_freq_path = value;
      else if (key == "relatedness_freq_path") c->relatedness_freq_path = value;
      else if (key == "dependency_path") c->dependency_path = value;
      else if (key == "hate_stats_path") c->hate_stats_path = value;
      else if (key == "clean_stats_path") c->clean_stats_path = value;
      else if (key == "candidates_path") c->candidates_path = value;
      else if (key == "edges_path") c->edges_path = value;
      else if (key == "authors_path") c->authors_path = value;
      else if (key == "annotations_path") c->annotations_path = value;
      else if (key == "truth_path") c->truth_path = value;
      else if (key == "report_path") c->report_path = value;
      else if (key == "boost_topn") c->boost_topn = std::stoull(value);
      else if (key == "graph_topn") c->graph_topn = std::stoull(value);
      else if (key == "graph_depth") c->graph_depth = std::stoull(value);
      else if (key == "search_topn") c->search_topn = std::stoull(value);
      else if (key == "search_depth") c->search_depth = std::stoull(value);
      else if (key == "th") c->th = std::stod(value);
      else if (key == "damping") c->damping = std::stod(value);
      else if (key == "eps") c->eps = std::stod(value);
      else if (key == "max_iter") c->max_iter = std::stoull(value);
      else if (key == "rng_seed") c->rng_seed = std::stoull(value);
      else if (key == "embed_kind") c->embed_kind = value;
      else if (key == "dim_similarity") c->dim_similarity = std::stoull(value);
      else if (key == "dim_relatedness") c->dim_relatedness = std::stoull(value);
      else if (key == "window") c->window = std::stoull(value);
      else if (key == "context") c->context = value;
      else if (key == "pivots") c->pivots = std::stoull(value);
      else if (key == "extend_k") c->extend_k = std::stoull(value);
      else if (key == "sample_n") c->sample_n = std::stoull(value);
      else if (key == "betweenness_directed")
        c->betweenness_directed = detail::parse_bool(key, value);
      else if (key == "tfidf_k") c->tfidf_k = std::stoull(value);
      else if (key == "boost_teleport") c->boost_teleport = detail::parse_bool(key, value);
      else if (key == "refine_recompute_boost")
        c->refine_recompute_boost = detail::parse_bool(key, value);
      else if (key == "config_hash") { /* ignored on load */ }
      else
        throw ParameterError(path + ": line " + std::to_string(line_no) +
                             ": unknown key '" + key + "'");
    } catch (const ParameterError&) {
      throw;
    } catch (const std::exception&) {
      throw ParameterError(path + ": line " + std::to_string(line_no) + ": bad value for '" +
                           key + "'");
    }
  }
}

}  // namespace codelex
