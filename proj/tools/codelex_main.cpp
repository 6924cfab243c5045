// codelex: surface candidate code words from contrasting corpora.
//
// Subcommands mirror the pipeline stages: ingest -> embed -> expand ->
// surface, plus community-graph analytics, a tf-idf baseline, and
// annotation metrics. Every run echoes its resolved configuration into
// the output directory.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "codelex/codeword.hpp"
#include "codelex/community_graph.hpp"
#include "codelex/config.hpp"
#include "codelex/context_graph.hpp"
#include "codelex/corpus.hpp"
#include "codelex/count_trainer.hpp"
#include "codelex/embedding.hpp"
#include "codelex/errors.hpp"
#include "codelex/eval_metrics.hpp"

namespace fs = std::filesystem;
using namespace codelex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitParameterError = 2;
constexpr int kExitNoConvergence = 3;

void prepare_out_dir(const PipelineConfig& config) {
  fs::create_directories(config.out_dir);
  write_config(config, (fs::path(config.out_dir) / "run_config.txt").string());
}

std::string out_file(const PipelineConfig& config, const std::string& name) {
  return (fs::path(config.out_dir) / name).string();
}

std::vector<std::string> read_word_list(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty() && t[0] != '#') words.emplace_back(lowercase_ascii(t));
  }
  return words;
}

void write_word_list(const std::vector<std::string>& words, const std::string& path,
                     const std::string& hash) {
  auto out = open_output(path);
  out << "# config_hash=" << hash << "\n";
  for (const auto& w : words) out << w << '\n';
}

int run_ingest(const PipelineConfig& config) {
  prepare_out_dir(config);
  std::unordered_set<std::string> stoplist;
  if (!config.stoplist_path.empty()) {
    for (const auto& w : read_word_list(config.stoplist_path)) stoplist.insert(w);
  }
  auto result = ingest_jsonl(config.input_path, config.source,
                             stoplist.empty() ? nullptr : &stoplist);
  for (const auto& err : result.errors)
    std::cerr << config.input_path << ":" << err.line_no << ": " << err.message << "\n";
  const auto hash = config_hash(config);
  write_stats_tsv(result.corpus.stats, out_file(config, config.source + "_stats.tsv"), hash);
  write_doc_count_tsv(result.corpus.stats,
                      out_file(config, config.source + "_doc_count.tsv"), hash);
  std::cout << "ingested " << result.corpus.stats.n_docs << " documents ("
            << result.errors.size() << " skipped), vocabulary "
            << result.corpus.stats.term_count.size() << "\n";
  return kExitOk;
}

int run_embed(const PipelineConfig& config) {
  const std::string& kind = config.embed_kind;
  prepare_out_dir(config);
  auto result = ingest_jsonl(config.input_path, config.source);
  for (const auto& err : result.errors)
    std::cerr << config.input_path << ":" << err.line_no << ": " << err.message << "\n";

  ContextSpec spec;
  std::size_t dim = 0;
  if (kind == "relatedness") {
    spec.mode = ContextSpec::Mode::window;
    dim = config.dim_relatedness;
  } else {
    dim = config.dim_similarity;
    if (!config.dependency_path.empty()) {
      spec.mode = ContextSpec::Mode::dependency;
      spec.dependency_path = config.dependency_path;
    } else {
      spec.mode = ContextSpec::Mode::position;  // fallback when nothing is parsed
    }
  }
  spec.window = config.window;
  if (!config.context.empty()) {
    if (config.context == "window") spec.mode = ContextSpec::Mode::window;
    else if (config.context == "position") spec.mode = ContextSpec::Mode::position;
    else if (config.context == "dependency") spec.mode = ContextSpec::Mode::dependency;
    else throw ParameterError("unknown context mode: " + config.context);
  }

  auto model = train_count_model(result.corpus, spec, dim);
  model.corpus_tag = config.source == "clean" ? CorpusTag::clean : CorpusTag::hate;
  const auto stem = config.source + "_" + kind;
  save_vectors(model, out_file(config, stem + ".vec"));
  write_frequency_tsv(model, out_file(config, stem + "_freq.tsv"), config_hash(config));
  std::cout << "trained " << kind << " model: |V|=" << model.vocab_size() << " dim="
            << model.dim() << "\n";
  return kExitOk;
}

int run_community(const PipelineConfig& config) {
  prepare_out_dir(config);
  auto graph = UserGraph::from_edge_list(config.edges_path);
  if (graph.self_loops_skipped() > 0)
    std::cerr << "skipped " << graph.self_loops_skipped() << " self-loop edges\n";
  const auto hash = config_hash(config);
  const std::size_t pivots = config.pivots == 0 ? graph.size() : config.pivots;

  auto scores = approx_betweenness(graph, pivots, config.rng_seed,
                                   config.betweenness_directed);
  write_centrality_tsv(scores, out_file(config, "centrality.tsv"), hash);

  if (!config.authors_path.empty()) {
    std::set<std::string> authors;
    for (const auto& a : read_word_list(config.authors_path)) authors.insert(a);
    auto extended = extend_seed(graph, authors, config.extend_k, pivots, config.rng_seed,
                                config.betweenness_directed);
    write_word_list(std::vector<std::string>(extended.begin(), extended.end()),
                    out_file(config, "extended_seed.txt"), hash);
  }
  if (config.sample_n > 0) {
    auto sub = sample_subgraph(graph, config.sample_n, config.rng_seed);
    sub.write_edge_list(out_file(config, "subgraph_edges.tsv"), hash);
  }
  std::cout << "community graph: |V|=" << graph.size() << " |E|=" << graph.edge_count()
            << "\n";
  return kExitOk;
}

int run_expand(const PipelineConfig& config) {
  prepare_out_dir(config);
  auto lexicon = SeedLexicon::from_file(config.lexicon_path);
  auto model = load_vectors(config.similarity_model_path, config.similarity_freq_path);
  if (config.similarity_freq_path.empty())
    std::cerr << "warning: no frequency sidecar; boost log-terms all vanish\n";
  auto stats_hate = load_stats_tsv(config.hate_stats_path);
  auto stats_clean = load_stats_tsv(config.clean_stats_path);

  ExpandParams params;
  params.boost_topn = config.boost_topn;
  params.graph_topn = config.graph_topn;
  params.graph_depth = config.graph_depth;
  params.damping = config.damping;
  params.eps = config.eps;
  params.max_iter = config.max_iter;
  params.recompute_boost = config.refine_recompute_boost;
  params.boost_teleport = config.boost_teleport;

  auto result = expand_seed(lexicon, model, stats_hate, stats_clean, params);
  const auto hash = config_hash(config);
  write_word_list(result.words, out_file(config, "expanded_words.txt"), hash);
  write_scores_tsv(result.scored, out_file(config, "expanded_scores.tsv"), hash);
  result.graph.write_edge_tsv(out_file(config, "seed_graph.tsv"), hash);
  std::cout << "expanded seed of " << lexicon.words().size() << " words into "
            << result.words.size() << " candidates\n";
  if (!result.pagerank_converged) {
    std::cerr << "error: pagerank did not converge within max_iter="
              << config.max_iter << "\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int run_surface(const PipelineConfig& config) {
  prepare_out_dir(config);
  auto lexicon = SeedLexicon::from_file(config.lexicon_path);
  auto model_sim = load_vectors(config.similarity_model_path, config.similarity_freq_path);
  auto model_rel = load_vectors(config.relatedness_model_path, config.relatedness_freq_path);
  auto stats_hate = load_stats_tsv(config.hate_stats_path);
  auto stats_clean = load_stats_tsv(config.clean_stats_path);
  auto candidates = read_word_list(config.candidates_path);
  if (candidates.empty()) throw ParameterError("candidate list is empty");

  SurfaceParams params;
  params.topn = config.search_topn;
  params.depth = config.search_depth;
  params.th = config.th;

  auto reports = surface_codewords(candidates, model_sim, model_rel, lexicon, stats_hate,
                                   stats_clean, params);
  const auto hash = config_hash(config);
  write_report_jsonl(reports, out_file(config, "codeword_report.jsonl"), hash);
  write_report_summary_tsv(reports, out_file(config, "codeword_summary.tsv"), hash);

  std::size_t primary = 0, secondary = 0;
  for (const auto& r : reports) {
    if (r.bucket == Bucket::primary) ++primary;
    if (r.bucket == Bucket::secondary) ++secondary;
  }
  std::cout << "surfaced " << primary << " primary and " << secondary
            << " secondary code words from " << reports.size() << " candidates\n";
  return kExitOk;
}

int run_baseline(const PipelineConfig& config) {
  prepare_out_dir(config);
  auto stats = load_stats_tsv(config.hate_stats_path);
  auto ranked = tfidf_rank(stats, config.tfidf_k);
  const auto hash = config_hash(config);
  write_scores_tsv(ranked, out_file(config, "tfidf_topk.tsv"), hash);

  if (!config.report_path.empty()) {
    // annotate tf-idf ranks with the bucket each word landed in, if any
    std::map<std::string, std::string> buckets;
    auto in = open_input(config.report_path);
    std::string line;
    while (std::getline(in, line)) {
      auto t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto cols = split(std::string(t), '\t');
      if (cols.size() == 2) buckets[cols[0]] = cols[1];
    }
    auto out = open_output(out_file(config, "baseline_comparison.tsv"));
    out << "# config_hash=" << hash << "\n";
    out << std::setprecision(17);
    for (const auto& [word, score] : ranked) {
      auto it = buckets.find(word);
      out << word << '\t' << score << '\t'
          << (it == buckets.end() ? std::string("-") : it->second) << '\n';
    }
  }
  std::cout << "wrote tf-idf top " << ranked.size() << "\n";
  return kExitOk;
}

int run_eval(const PipelineConfig& config) {
  prepare_out_dir(config);
  auto matrix = AnnotationMatrix::from_csv(config.annotations_path);

  nlohmann::json metrics;
  metrics["config_hash"] = config_hash(config);
  metrics["n_items"] = matrix.items.size();
  metrics["n_annotators"] = matrix.annotators.size();
  try {
    metrics["krippendorff_alpha"] = krippendorff_alpha(matrix);
  } catch (const DegenerateMatrixError& e) {
    metrics["krippendorff_alpha"] = nullptr;
    metrics["krippendorff_alpha_note"] = e.what();
  }

  nlohmann::json majorities = nlohmann::json::object();
  std::map<std::string, BinaryLabel> predicted;
  for (std::size_t i = 0; i < matrix.items.size(); ++i) {
    auto ratings = matrix.item_ratings(i);
    if (ratings.empty()) continue;
    const int label = majority_label(ratings);
    majorities[matrix.items[i]] = label;
    predicted[matrix.items[i]] = likert_to_binary(label);
  }
  metrics["majority_labels"] = majorities;

  if (!config.truth_path.empty()) {
    std::map<std::string, BinaryLabel> truth;
    auto in = open_input(config.truth_path);
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
      ++line_no;
      auto t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto cols = split(std::string(t), ',');
      if (cols.size() != 2)
        throw InputError(config.truth_path + ": line " + std::to_string(line_no) +
                         ": expected item_id,rating");
      if (!saw_header) {
        saw_header = true;
        if (lowercase_ascii(trim(cols[0])) == "item_id") continue;
      }
      truth[std::string(trim(cols[0]))] =
          likert_to_binary(std::stoi(std::string(trim(cols[1]))));
    }
    BinaryEval eval;
    for (const auto& [item, pred] : predicted) {
      auto it = truth.find(item);
      if (it != truth.end()) eval.items.push_back({pred, it->second});
    }
    for (BinaryLabel positive : {BinaryLabel::hate, BinaryLabel::not_hate}) {
      auto m = precision_recall_f1(eval, positive);
      nlohmann::json cls;
      cls["precision"] = m.precision ? nlohmann::json(*m.precision) : nlohmann::json();
      cls["recall"] = m.recall ? nlohmann::json(*m.recall) : nlohmann::json();
      cls["f1"] = m.f1 ? nlohmann::json(*m.f1) : nlohmann::json();
      if (!m.note.empty()) cls["note"] = m.note;
      metrics["classification"][binary_label_name(positive)] = cls;
    }
  }

  auto out = open_output(out_file(config, "metrics.json"));
  out << metrics.dump(2) << '\n';
  std::cout << "wrote metrics.json\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codelex: contextual code-word surfacing pipeline"};
  app.require_subcommand(1);

  PipelineConfig config;
  std::string config_path;
  std::size_t dim_override = 0;

  // The config file loads first so explicit flags win over it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  if (!config_path.empty()) {
    try {
      load_config(config_path, &config);
    } catch (const ParameterError& e) {
      std::cerr << "parameter error: " << e.what() << "\n";
      return kExitParameterError;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitInputError;
    }
  }

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key=value config file");
    cmd->add_option("--out-dir", config.out_dir, "output directory");
  };

  const auto corpus_tags = CLI::IsMember({"hate_community", "clean", "keyword_hate"});
  auto* ingest = app.add_subcommand("ingest", "tokenize a JSONL corpus and write stats");
  add_common(ingest);
  ingest->add_option("--input", config.input_path, "JSONL corpus");
  ingest->add_option("--source", config.source, "corpus tag (hate_community|clean|keyword_hate)")
      ->check(corpus_tags);
  ingest->add_option("--stoplist", config.stoplist_path, "optional stopword list");

  auto* embed = app.add_subcommand("embed", "train a count-based embedding model");
  add_common(embed);
  embed->add_option("--input", config.input_path, "JSONL corpus");
  embed->add_option("--source", config.source, "corpus tag")->check(corpus_tags);
  embed->add_option("--kind", config.embed_kind, "similarity|relatedness")
      ->check(CLI::IsMember({"similarity", "relatedness"}));
  embed->add_option("--context", config.context, "window|position|dependency");
  embed->add_option("--deps-file", config.dependency_path, "pre-parsed dependency rows");
  embed->add_option("--dim", dim_override, "override the per-kind dimensionality default");
  embed->add_option("--window", config.window, "context window size");

  auto* community = app.add_subcommand("community", "follower-graph centrality analytics");
  add_common(community);
  community->add_option("--edges", config.edges_path, "edge list follower<TAB>followee");
  community->add_option("--authors", config.authors_path, "author vertex list");
  community->add_option("--pivots", config.pivots, "betweenness pivots (0 = exact)");
  community->add_option("--extend-k", config.extend_k, "vertices to add to the seed");
  community->add_option("--sample-n", config.sample_n, "random subgraph size");
  community->add_option("--seed", config.rng_seed, "RNG seed");
  community->add_flag("--undirected{false}", config.betweenness_directed,
                      "treat follow edges as undirected");

  auto* expand = app.add_subcommand("expand", "bootstrap the seed lexicon");
  add_common(expand);
  expand->add_option("--lexicon", config.lexicon_path, "seed keyword list");
  expand->add_option("--similarity-model", config.similarity_model_path, "D_H vector file");
  expand->add_option("--similarity-freq", config.similarity_freq_path, "frequency sidecar");
  expand->add_option("--hate-stats", config.hate_stats_path, "hate corpus stats tsv");
  expand->add_option("--clean-stats", config.clean_stats_path, "clean corpus stats tsv");
  expand->add_option("--boost-topn", config.boost_topn, "boost neighbor count");
  expand->add_option("--graph-topn", config.graph_topn, "graph expansion topn");
  expand->add_option("--graph-depth", config.graph_depth, "graph expansion depth");
  expand->add_option("--damping", config.damping, "PageRank damping");
  expand->add_option("--eps", config.eps, "PageRank convergence epsilon");
  expand->add_option("--max-iter", config.max_iter, "PageRank iteration cap");
  expand->add_flag("--boost-teleport", config.boost_teleport,
                   "restart distribution proportional to boost");
  expand->add_flag("--no-recompute-boost{false}", config.refine_recompute_boost,
                   "reuse the first-pass boost in the refine pass");

  auto* surface = app.add_subcommand("surface", "classify candidates into buckets");
  add_common(surface);
  surface->add_option("--candidates", config.candidates_path, "expanded word list");
  surface->add_option("--lexicon", config.lexicon_path, "seed keyword list");
  surface->add_option("--similarity-model", config.similarity_model_path, "D_H vectors");
  surface->add_option("--similarity-freq", config.similarity_freq_path, "sidecar");
  surface->add_option("--relatedness-model", config.relatedness_model_path, "W_H vectors");
  surface->add_option("--relatedness-freq", config.relatedness_freq_path, "sidecar");
  surface->add_option("--hate-stats", config.hate_stats_path, "hate corpus stats tsv");
  surface->add_option("--clean-stats", config.clean_stats_path, "clean corpus stats tsv");
  surface->add_option("--topn", config.search_topn, "context representation size");
  surface->add_option("--depth", config.search_depth, "secondary graph depth");
  surface->add_option("--th", config.th, "primary threshold");

  auto* baseline = app.add_subcommand("baseline", "tf-idf keyword baseline");
  add_common(baseline);
  baseline->add_option("--hate-stats", config.hate_stats_path, "corpus stats tsv");
  baseline->add_option("--k", config.tfidf_k, "top-k size");
  baseline->add_option("--report", config.report_path, "codeword summary tsv to compare");

  auto* eval = app.add_subcommand("eval", "annotation agreement and classification metrics");
  add_common(eval);
  eval->add_option("--annotations", config.annotations_path, "item,annotator,rating CSV");
  eval->add_option("--truth", config.truth_path, "item_id,rating ground-truth CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dim_override > 0) {
      config.dim_similarity = dim_override;
      config.dim_relatedness = dim_override;
    }
    if (ingest->parsed()) {
      if (config.input_path.empty()) throw ParameterError("ingest: --input is required");
      return run_ingest(config);
    }
    if (embed->parsed()) {
      if (config.input_path.empty()) throw ParameterError("embed: --input is required");
      return run_embed(config);
    }
    if (community->parsed()) {
      if (config.edges_path.empty()) throw ParameterError("community: --edges is required");
      return run_community(config);
    }
    if (expand->parsed()) {
      if (config.lexicon_path.empty()) throw ParameterError("expand: --lexicon is required");
      return run_expand(config);
    }
    if (surface->parsed()) {
      if (config.candidates_path.empty())
        throw ParameterError("surface: --candidates is required");
      return run_surface(config);
    }
    if (baseline->parsed()) {
      if (config.hate_stats_path.empty())
        throw ParameterError("baseline: --hate-stats is required");
      return run_baseline(config);
    }
    if (eval->parsed()) {
      if (config.annotations_path.empty())
        throw ParameterError("eval: --annotations is required");
      return run_eval(config);
    }
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParameterError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
