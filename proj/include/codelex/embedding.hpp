#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "codelex/errors.hpp"
#include "codelex/text_util.hpp"

namespace codelex {

enum class ModelKind { unspecified, relatedness, similarity };
enum class CorpusTag { unspecified, clean, hate };

struct Neighbor {
  std::string word;
  double score = 0.0;  // cosine, in [-1, 1]
};

// Dense word-vector store with cosine and top-n neighbor queries.
// Immutable once built; queries are safe to run concurrently.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;

  EmbeddingModel(std::vector<std::string> words, std::vector<double> data,
                 std::size_t dim,
                 std::unordered_map<std::string, std::size_t> frequency = {})
      : words_(std::move(words)), data_(std::move(data)), dim_(dim),
        frequency_(std::move(frequency)) {
    if (dim_ == 0) throw ParameterError("embedding dimension must be positive");
    if (data_.size() != words_.size() * dim_)
      throw ParameterError("vector data size does not match vocab * dim");
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (!index_.emplace(words_[i], i).second)
        throw InputError("duplicate word in vocabulary: " + words_[i]);
    }
    norms_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      double s = 0.0;
      for (std::size_t d = 0; d < dim_; ++d) {
        double x = data_[i * dim_ + d];
        s += x * x;
      }
      norms_[i] = std::sqrt(s);
    }
  }

  ModelKind kind = ModelKind::unspecified;
  CorpusTag corpus_tag = CorpusTag::unspecified;

  std::size_t dim() const { return dim_; }
  std::size_t vocab_size() const { return words_.size(); }
  const std::vector<std::string>& vocabulary() const { return words_; }
  bool contains(const std::string& word) const { return index_.count(word) > 0; }

  const double* row(std::size_t i) const { return data_.data() + i * dim_; }

  std::size_t index_of(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) throw NotInVocabularyError(word);
    return it->second;
  }

  // frq(w): sidecar occurrence count, defaults to 1 when unknown.
  double frequency(const std::string& word) const {
    auto it = frequency_.find(word);
    return it == frequency_.end() ? 1.0 : static_cast<double>(it->second);
  }

  void set_frequencies(std::unordered_map<std::string, std::size_t> freq) {
    frequency_ = std::move(freq);
  }
  const std::unordered_map<std::string, std::size_t>& frequencies() const {
    return frequency_;
  }

  double cosine(const std::string& w1, const std::string& w2) const {
    const std::size_t i = index_of(w1), j = index_of(w2);
    if (norms_[i] == 0.0)
      throw DegenerateVectorError("zero vector for word: " + w1);
    if (norms_[j] == 0.0)
      throw DegenerateVectorError("zero vector for word: " + w2);
    return dot(i, j) / (norms_[i] * norms_[j]);
  }

  // Top-n cosine neighbors of `word`, excluding the word itself.
  // Ties break lexicographically, so any prefix of the ranking is stable.
  std::vector<Neighbor> nearest_neighbors(const std::string& word,
                                          std::size_t topn) const {
    const std::size_t q = index_of(word);
    std::vector<Neighbor> out;
    if (topn == 0) return out;
    if (norms_[q] == 0.0)
      throw DegenerateVectorError("zero vector for word: " + word);
    std::vector<Neighbor> scored;
    scored.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (i == q || norms_[i] == 0.0) continue;
      scored.push_back({words_[i], dot(q, i) / (norms_[q] * norms_[i])});
    }
    std::sort(scored.begin(), scored.end(), [](const Neighbor& a, const Neighbor& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.word < b.word;
    });
    if (scored.size() > topn) scored.resize(topn);
    return scored;
  }

 private:
  double dot(std::size_t i, std::size_t j) const {
    const double* a = row(i);
    const double* b = row(j);
    double s = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) s += a[d] * b[d];
    return s;
  }

  std::vector<std::string> words_;
  std::vector<double> data_;  // row-major vocab_size x dim
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> frequency_;
};

// Frequency sidecar: word <TAB> count, '#' lines ignored.
inline std::unordered_map<std::string, std::size_t> load_frequency_tsv(
    const std::string& path) {
  auto in = open_input(path);
  std::unordered_map<std::string, std::size_t> freq;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cols = split(std::string(t), '\t');
    if (cols.size() != 2)
      throw InputError(path + ": line " + std::to_string(line_no) +
                       ": expected word<TAB>count");
    try {
      freq[cols[0]] = std::stoull(cols[1]);
    } catch (const std::exception&) {
      throw InputError(path + ": line " + std::to_string(line_no) + ": bad count");
    }
  }
  return freq;
}

inline void write_frequency_tsv(const EmbeddingModel& model, const std::string& path,
                                const std::string& config_hash = "") {
  auto out = open_output(path);
  if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
  std::map<std::string, std::size_t> sorted(model.frequencies().begin(),
                                            model.frequencies().end());
  for (const auto& [word, count] : sorted) out << word << '\t' << count << '\n';
}

// Text vector format: header "<vocab_size> <dim>", then "word v1 ... v_dim".
inline EmbeddingModel load_vectors(const std::string& path,
                                   const std::string& freq_path = "") {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + ": empty vector file");
  auto header = split_ws(line);
  std::size_t vocab_size = 0, dim = 0;
  try {
    if (header.size() != 2) throw std::invalid_argument("bad header");
    vocab_size = std::stoull(header[0]);
    dim = std::stoull(header[1]);
  } catch (const std::exception&) {
    throw InputError(path + ": header must be '<vocab_size> <dim>'");
  }
  if (dim == 0) throw InputError(path + ": dimension must be positive");

  std::vector<std::string> words;
  std::vector<double> data;
  words.reserve(vocab_size);
  data.reserve(vocab_size * dim);
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row_no;
    auto cols = split_ws(line);
    if (cols.size() != dim + 1)
      throw InputError(path + ": row " + std::to_string(row_no) + " ('" +
                       (cols.empty() ? std::string() : cols[0]) + "') has " +
                       std::to_string(cols.empty() ? 0 : cols.size() - 1) +
                       " values, expected " + std::to_string(dim));
    words.push_back(cols[0]);
    for (std::size_t d = 1; d <= dim; ++d) {
      try {
        data.push_back(std::stod(cols[d]));
      } catch (const std::exception&) {
        throw InputError(path + ": row " + std::to_string(row_no) +
                         ": bad number '" + cols[d] + "'");
      }
    }
  }
  if (words.size() != vocab_size)
    throw InputError(path + ": header declares " + std::to_string(vocab_size) +
                     " words but file has " + std::to_string(words.size()));

  std::unordered_map<std::string, std::size_t> freq;
  if (!freq_path.empty()) freq = load_frequency_tsv(freq_path);
  return EmbeddingModel(std::move(words), std::move(data), dim, std::move(freq));
}

inline void save_vectors(const EmbeddingModel& model, const std::string& path) {
  auto out = open_output(path);
  out << model.vocab_size() << ' ' << model.dim() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < model.vocab_size(); ++i) {
    out << model.vocabulary()[i];
    const double* r = model.row(i);
    for (std::size_t d = 0; d < model.dim(); ++d) out << ' ' << r[d];
    out << '\n';
  }
}

}  // namespace codelex
