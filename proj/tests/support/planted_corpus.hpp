#pragma once

// Synthetic two-corpus fixture with known planted code words.
//
// Five seed keywords live in five "hate" subtopics. Every sentence is a
// fixed "modifier SLOT modifier" template: slot words only ever see
// modifiers at offsets +-1 and modifiers only ever see slot words at
// +-1 and modifiers at +-2, so under position-labeled contexts the slot
// vocabulary and the modifier vocabulary occupy disjoint feature sets.
// In the hate corpus each planted word is substituted into its seed's
// slot for most of its occurrences; in the clean corpus it only keeps
// its benign usage, at a lower document frequency. Decoys occupy the
// same slots but are MORE frequent in the clean corpus, so the df
// contrast must reject them.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codelex/text_util.hpp"

namespace toy {

struct PlantedFixture {
  std::vector<std::string> seeds;    // the seed lexicon
  std::vector<std::string> planted;  // words substituted into seed slots
  std::vector<std::string> decoys;   // slot words that fail the df contrast
  std::vector<std::pair<std::string, std::string>> hate_docs;   // (id, text)
  std::vector<std::pair<std::string, std::string>> clean_docs;  // (id, text)
  std::size_t vocab_size_target = 0;
  // per planted word, hate-corpus occurrences: (substituted into a seed
  // slot, benign home-topic usage)
  std::map<std::string, std::pair<int, int>> plant_hate_usage;
};

namespace detail {

constexpr std::size_t kSubtopics = 5;
constexpr std::size_t kBenignTopics = 15;
constexpr std::size_t kModsPerTopic = 20;
constexpr std::size_t kSharedMods = 10;
constexpr std::size_t kFuncWords = 10;
constexpr std::size_t kNounsPerTopic = 6;

struct Vocab {
  std::vector<std::vector<std::string>> hmod;  // per subtopic
  std::vector<std::string> shared;
  std::vector<std::string> func;
  std::vector<std::vector<std::string>> bmod;   // per benign topic
  std::vector<std::vector<std::string>> bnoun;  // per benign topic
  std::vector<std::string> seed, plant, decoy;
};

inline Vocab make_vocab() {
  Vocab v;
  for (std::size_t t = 0; t < kSubtopics; ++t) {
    v.hmod.emplace_back();
    for (std::size_t j = 0; j < kModsPerTopic; ++j)
      v.hmod[t].push_back("hmod" + std::to_string(t) + "x" + std::to_string(j));
    v.seed.push_back("seedword" + std::to_string(t));
    v.plant.push_back("plantword" + std::to_string(t));
    v.decoy.push_back("decoyword" + std::to_string(t));
  }
  for (std::size_t j = 0; j < kSharedMods; ++j) v.shared.push_back("sharedmod" + std::to_string(j));
  for (std::size_t j = 0; j < kFuncWords; ++j) v.func.push_back("func" + std::to_string(j));
  for (std::size_t b = 0; b < kBenignTopics; ++b) {
    v.bmod.emplace_back();
    v.bnoun.emplace_back();
    for (std::size_t j = 0; j < kModsPerTopic; ++j)
      v.bmod[b].push_back("bmod" + std::to_string(b) + "x" + std::to_string(j));
    for (std::size_t j = 0; j < kNounsPerTopic; ++j)
      v.bnoun[b].push_back("bnoun" + std::to_string(b) + "x" + std::to_string(j));
  }
  return v;
}

inline std::string hate_sentence(const Vocab& v, std::size_t t, const std::string& slot,
                                 std::mt19937_64& rng) {
  auto mod = [&]() -> const std::string& {
    const auto roll = codelex::uniform_below(rng, 10);
    if (roll < 7) return v.hmod[t][codelex::uniform_below(rng, kModsPerTopic)];
    if (roll < 9) return v.shared[codelex::uniform_below(rng, kSharedMods)];
    return v.func[codelex::uniform_below(rng, kFuncWords)];
  };
  std::string text = mod() + " " + slot + " " + mod();
  if (codelex::uniform_below(rng, 3) == 0) text += ".";
  return text;
}

inline std::string benign_sentence(const Vocab& v, std::size_t b, const std::string& slot,
                                   std::mt19937_64& rng) {
  auto mod = [&]() -> const std::string& {
    if (codelex::uniform_below(rng, 10) < 9)
      return v.bmod[b][codelex::uniform_below(rng, kModsPerTopic)];
    return v.func[codelex::uniform_below(rng, kFuncWords)];
  };
  return mod() + " " + slot + " " + mod();
}

}  // namespace detail

inline PlantedFixture make_planted_fixture(std::uint64_t seed) {
  using namespace detail;
  std::mt19937_64 rng(seed);
  Vocab v = make_vocab();

  PlantedFixture fx;
  fx.seeds = v.seed;
  fx.planted = v.plant;
  fx.decoys = v.decoy;
  fx.vocab_size_target = kSubtopics * (3 + kModsPerTopic) + kSharedMods + kFuncWords +
                         kBenignTopics * (kModsPerTopic + kNounsPerTopic);

  std::vector<std::string> hate_texts, clean_texts;

  // hate corpus: 264 subtopic docs per seed (132 seed / 87 plant / 45 decoy)
  for (std::size_t t = 0; t < kSubtopics; ++t) {
    for (int i = 0; i < 132; ++i) hate_texts.push_back(hate_sentence(v, t, v.seed[t], rng));
    for (int i = 0; i < 87; ++i) hate_texts.push_back(hate_sentence(v, t, v.plant[t], rng));
    for (int i = 0; i < 45; ++i) hate_texts.push_back(hate_sentence(v, t, v.decoy[t], rng));
    fx.plant_hate_usage[v.plant[t]].first = 87;
  }
  // hate corpus: 72 benign docs per topic; planted words keep a smaller
  // benign usage in their home topic (30 of 72)
  for (std::size_t b = 0; b < kBenignTopics; ++b) {
    int plant_docs = b < kSubtopics ? 30 : 0;
    for (int i = 0; i < plant_docs; ++i)
      hate_texts.push_back(benign_sentence(v, b, v.plant[b], rng));
    if (plant_docs > 0) fx.plant_hate_usage[v.plant[b]].second = plant_docs;
    for (int i = plant_docs; i < 72; ++i)
      hate_texts.push_back(benign_sentence(
          v, b, v.bnoun[b][codelex::uniform_below(rng, kNounsPerTopic)], rng));
  }

  // clean corpus: 70 seedless subtopic-style docs per subtopic, decoy-heavy
  for (std::size_t t = 0; t < kSubtopics; ++t) {
    for (int i = 0; i < 60; ++i) clean_texts.push_back(hate_sentence(v, t, v.decoy[t], rng));
    for (int i = 0; i < 4; ++i) clean_texts.push_back(hate_sentence(v, t, v.plant[t], rng));
    for (int i = 0; i < 6; ++i)
      clean_texts.push_back(hate_sentence(
          v, t, v.bnoun[t][codelex::uniform_below(rng, kNounsPerTopic)], rng));
  }
  // clean corpus benign bulk: first ten topics get 137 docs, the rest 136
  for (std::size_t b = 0; b < kBenignTopics; ++b) {
    const int docs = b < 10 ? 137 : 136;
    const int plant_docs = b < kSubtopics ? 25 : 0;
    for (int i = 0; i < plant_docs; ++i)
      clean_texts.push_back(benign_sentence(v, b, v.plant[b], rng));
    for (int i = plant_docs; i < docs; ++i)
      clean_texts.push_back(benign_sentence(
          v, b, v.bnoun[b][codelex::uniform_below(rng, kNounsPerTopic)], rng));
  }

  // shuffle so corpus order carries no signal
  for (std::size_t i = hate_texts.size(); i > 1; --i)
    std::swap(hate_texts[i - 1], hate_texts[codelex::uniform_below(rng, i)]);
  for (std::size_t i = clean_texts.size(); i > 1; --i)
    std::swap(clean_texts[i - 1], clean_texts[codelex::uniform_below(rng, i)]);

  for (std::size_t i = 0; i < hate_texts.size(); ++i)
    fx.hate_docs.emplace_back("h" + std::to_string(i), hate_texts[i]);
  for (std::size_t i = 0; i < clean_texts.size(); ++i)
    fx.clean_docs.emplace_back("c" + std::to_string(i), clean_texts[i]);
  return fx;
}

inline void write_jsonl(const std::vector<std::pair<std::string, std::string>>& docs,
                        const std::string& path) {
  auto out = codelex::open_output(path);
  for (const auto& [id, text] : docs) {
    nlohmann::json obj{{"id", id}, {"text", text}};
    out << obj.dump() << '\n';
  }
}

}  // namespace toy
