#pragma once

#include <cstddef>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codelex/context_graph.hpp"
#include "codelex/corpus.hpp"
#include "codelex/embedding.hpp"
#include "codelex/errors.hpp"

namespace codelex {

// Mixed contextual representation: neighbor lists from the hate-corpus
// similarity model (D_H) and relatedness model (W_H).
struct ContextRep {
  std::vector<Neighbor> hate_similar;
  std::vector<Neighbor> hate_related;
};

enum class Bucket { primary, secondary, rejected };

inline const char* bucket_name(Bucket b) {
  switch (b) {
    case Bucket::primary: return "primary";
    case Bucket::secondary: return "secondary";
    default: return "rejected";
  }
}

struct CodewordReport {
  std::string word;
  Bucket bucket = Bucket::rejected;
  bool th_similarity = false;
  bool th_relatedness = false;
  bool freq_check = false;
  std::set<std::string> matched_seed_words;  // seed vertices found in the word's graph
  double df_hate = 0.0;
  double df_clean = 0.0;
  std::string error;  // nonempty when the word could not be fully checked
};

template <class SimilarityModelT, class RelatednessModelT>
ContextRep context_rep(const std::string& word, const SimilarityModelT& model_similar,
                       const RelatednessModelT& model_related, std::size_t topn) {
  const bool in_sim = model_similar.contains(word);
  const bool in_rel = model_related.contains(word);
  if (!in_sim && !in_rel) throw NotInVocabularyError(word);
  ContextRep rep;
  if (in_sim)
    rep.hate_similar = model_similar.nearest_neighbors(word, topn);
  else
    std::cerr << "[codelex] warning: '" << word << "' missing from similarity model\n";
  if (in_rel)
    rep.hate_related = model_related.nearest_neighbors(word, topn);
  else
    std::cerr << "[codelex] warning: '" << word << "' missing from relatedness model\n";
  return rep;
}

struct PrimaryEvidence {
  bool th_similarity = false;
  bool th_relatedness = false;
  bool freq_check = false;
  double df_hate = 0.0;
  double df_clean = 0.0;
  bool primary() const { return (th_similarity || th_relatedness) && freq_check; }
};

// Def-style primary test: the fraction of seed words among the topn
// neighbors must reach th on either list, and the word must be more
// document-frequent in the hate corpus than in the clean one.
inline PrimaryEvidence primary_check(const std::string& word, const ContextRep& rep,
                                     const SeedLexicon& lexicon, std::size_t topn, double th,
                                     const CorpusStats& stats_hate,
                                     const CorpusStats& stats_clean) {
  if (topn == 0) throw ParameterError("primary_check: topn must be >= 1");
  if (th < 0.0 || th > 1.0) throw ParameterError("primary_check: th must lie in [0, 1]");
  auto seed_fraction = [&](const std::vector<Neighbor>& neighbors) {
    std::size_t hits = 0;
    for (const auto& nb : neighbors)
      if (lexicon.matches(nb.word)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(topn);
  };
  PrimaryEvidence ev;
  ev.th_similarity = seed_fraction(rep.hate_similar) >= th;
  ev.th_relatedness = seed_fraction(rep.hate_related) >= th;
  ev.df_hate = doc_freq(stats_hate, word);
  ev.df_clean = doc_freq(stats_clean, word);
  ev.freq_check = ev.df_hate > ev.df_clean;
  return ev;
}

struct SecondaryEvidence {
  bool linked = false;
  std::set<std::string> predecessors;        // union over matched seed vertices
  std::set<std::string> matched_seed_words;  // seed vertices that had predecessors
};

// Looks for seed-lexicon vertices inside the word's contextual graph and
// collects their predecessor vertices.
inline SecondaryEvidence secondary_check(const ContextualGraph& graph,
                                         const SeedLexicon& lexicon) {
  SecondaryEvidence ev;
  for (const auto& v : graph.vertices()) {
    if (!lexicon.matches(v)) continue;
    auto preds = graph.predecessors(v);
    if (preds.empty()) continue;
    ev.matched_seed_words.insert(v);
    ev.predecessors.insert(preds.begin(), preds.end());
  }
  ev.linked = !ev.predecessors.empty();
  return ev;
}

struct SurfaceParams {
  std::size_t topn = 5;
  std::size_t depth = 2;
  double th = 0.2;
};

// Classifies candidates into primary/secondary/rejected buckets in input
// order. Seed-variant candidates are excluded before any check; per-word
// failures are recorded on the report entry and processing continues.
template <class SimilarityModelT, class RelatednessModelT>
std::vector<CodewordReport> surface_codewords(
    const std::vector<std::string>& candidates, const SimilarityModelT& model_similar,
    const RelatednessModelT& model_related, const SeedLexicon& lexicon,
    const CorpusStats& stats_hate, const CorpusStats& stats_clean,
    const SurfaceParams& params = {}) {
  std::vector<CodewordReport> reports;
  const BoostTable no_boost;  // Def-7 graphs inspect structure only
  for (const auto& word : candidates) {
    if (lexicon.matches(word)) continue;
    CodewordReport report;
    report.word = word;
    try {
      auto rep = context_rep(word, model_similar, model_related, params.topn);
      auto ev = primary_check(word, rep, lexicon, params.topn, params.th, stats_hate,
                              stats_clean);
      report.th_similarity = ev.th_similarity;
      report.th_relatedness = ev.th_relatedness;
      report.freq_check = ev.freq_check;
      report.df_hate = ev.df_hate;
      report.df_clean = ev.df_clean;
      if (ev.primary()) {
        report.bucket = Bucket::primary;
      } else if (model_similar.contains(word)) {
        auto graph = build_graph(word, model_similar, params.depth, no_boost, params.topn);
        auto sec = secondary_check(graph, lexicon);
        report.matched_seed_words = sec.matched_seed_words;
        report.bucket = sec.linked ? Bucket::secondary : Bucket::rejected;
      } else {
        report.bucket = Bucket::rejected;
      }
    } catch (const Error& e) {
      report.bucket = Bucket::rejected;
      report.error = e.what();
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

// JSON-Lines report: a run-metadata line followed by one object per word.
inline void write_report_jsonl(const std::vector<CodewordReport>& reports,
                               const std::string& path, const std::string& config_hash = "") {
  auto out = open_output(path);
  nlohmann::json meta{{"kind", "codeword_report"}, {"config_hash", config_hash}};
  out << meta.dump() << '\n';
  for (const auto& r : reports) {
    nlohmann::json obj{
        {"word", r.word},
        {"bucket", bucket_name(r.bucket)},
        {"th_similarity", r.th_similarity},
        {"th_relatedness", r.th_relatedness},
        {"freq_check", r.freq_check},
        {"matched_seed_words", r.matched_seed_words},
        {"df_hate", r.df_hate},
        {"df_clean", r.df_clean},
    };
    if (!r.error.empty()) obj["error"] = r.error;
    out << obj.dump() << '\n';
  }
}

inline void write_report_summary_tsv(const std::vector<CodewordReport>& reports,
                                     const std::string& path,
                                     const std::string& config_hash = "") {
  auto out = open_output(path);
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  for (const auto& r : reports) out << r.word << '\t' << bucket_name(r.bucket) << '\n';
}

}  // namespace codelex
