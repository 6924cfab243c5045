#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "codelex/errors.hpp"
#include "codelex/text_util.hpp"
#include "codelex/tokenizer.hpp"

namespace codelex {

struct Document {
  std::string id;
  std::string text;
  std::string source;
  std::vector<std::string> tokens;
};

// Document-level counts for one corpus. doc_count(w) is the number of
// documents containing w at least once, term_count(w) the total number
// of occurrences.
struct CorpusStats {
  std::size_t n_docs = 0;
  std::unordered_map<std::string, std::size_t> doc_count;
  std::unordered_map<std::string, std::size_t> term_count;

  void add_document(const std::vector<std::string>& tokens) {
    ++n_docs;
    std::unordered_set<std::string> seen;
    for (const auto& t : tokens) {
      ++term_count[t];
      if (seen.insert(t).second) ++doc_count[t];
    }
  }
};

struct Corpus {
  std::string source;
  std::vector<Document> docs;
  CorpusStats stats;
};

struct LineError {
  std::size_t line_no = 0;
  std::string message;
};

struct IngestResult {
  Corpus corpus;
  std::vector<LineError> errors;
};

// Reads JSON-Lines documents ({"id": ..., "text": ..., "source"?: ...}).
// Malformed lines are reported and skipped; an unreadable file is fatal.
inline IngestResult ingest_jsonl(const std::string& path, const std::string& source,
                                 const std::unordered_set<std::string>* stoplist = nullptr) {
  auto in = open_input(path);
  IngestResult result;
  result.corpus.source = source;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      result.errors.push_back({line_no, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("text") || !obj["text"].is_string()) {
      result.errors.push_back({line_no, "missing string fields 'id'/'text'"});
      continue;
    }
    Document doc;
    doc.id = obj["id"].get<std::string>();
    doc.text = obj["text"].get<std::string>();
    doc.source = obj.value("source", source);
    if (doc.id.empty()) {
      result.errors.push_back({line_no, "empty document id"});
      continue;
    }
    if (!ids.insert(doc.id).second) {
      result.errors.push_back({line_no, "duplicate document id: " + doc.id});
      continue;
    }
    doc.tokens = tokenize(doc.text);
    if (stoplist != nullptr) {
      std::erase_if(doc.tokens,
                    [&](const std::string& t) { return stoplist->count(t) > 0; });
    }
    result.corpus.stats.add_document(doc.tokens);
    result.corpus.docs.push_back(std::move(doc));
  }
  return result;
}

// df(w) = doc_count(w) / N. Zero for unseen words.
inline double doc_freq(const CorpusStats& stats, const std::string& word) {
  if (stats.n_docs == 0) throw ParameterError("doc_freq: empty corpus");
  auto it = stats.doc_count.find(word);
  if (it == stats.doc_count.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(stats.n_docs);
}

// Corpus-global tf-idf: term_count(w) * ln(N / doc_count(w)), top k,
// ties broken lexicographically.
inline std::vector<std::pair<std::string, double>> tfidf_rank(const CorpusStats& stats,
                                                              std::size_t k) {
  if (stats.n_docs == 0) throw ParameterError("tfidf_rank: empty corpus");
  std::vector<std::pair<std::string, double>> scored;
  if (k == 0) return scored;
  scored.reserve(stats.term_count.size());
  const double n = static_cast<double>(stats.n_docs);
  for (const auto& [word, tc] : stats.term_count) {
    const double dc = static_cast<double>(stats.doc_count.at(word));
    scored.emplace_back(word, static_cast<double>(tc) * std::log(n / dc));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

// Two-column export: word <TAB> doc_count, sorted by word.
inline void write_doc_count_tsv(const CorpusStats& stats, const std::string& path,
                                const std::string& config_hash = "") {
  auto out = open_output(path);
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  std::map<std::string, std::size_t> sorted(stats.doc_count.begin(), stats.doc_count.end());
  for (const auto& [word, count] : sorted) out << word << '\t' << count << '\n';
}

// Full stats file used to hand counts between pipeline stages.
inline void write_stats_tsv(const CorpusStats& stats, const std::string& path,
                            const std::string& config_hash = "") {
  auto out = open_output(path);
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  out << "# n_docs=" << stats.n_docs << "\n";
  std::map<std::string, std::size_t> sorted(stats.doc_count.begin(), stats.doc_count.end());
  for (const auto& [word, dc] : sorted)
    out << word << '\t' << dc << '\t' << stats.term_count.at(word) << '\n';
}

inline CorpusStats load_stats_tsv(const std::string& path) {
  auto in = open_input(path);
  CorpusStats stats;
  bool have_n = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      auto eq = t.find("n_docs=");
      if (eq != std::string_view::npos) {
        stats.n_docs = std::stoull(std::string(t.substr(eq + 7)));
        have_n = true;
      }
      continue;
    }
    auto cols = split(std::string(t), '\t');
    if (cols.size() != 3)
      throw InputError(path + ": line " + std::to_string(line_no) +
                       ": expected word<TAB>doc_count<TAB>term_count");
    try {
      stats.doc_count[cols[0]] = std::stoull(cols[1]);
      stats.term_count[cols[0]] = std::stoull(cols[2]);
    } catch (const std::exception&) {
      throw InputError(path + ": line " + std::to_string(line_no) + ": bad count");
    }
  }
  if (!have_n) throw InputError(path + ": missing '# n_docs=' header");
  return stats;
}

}  // namespace codelex
