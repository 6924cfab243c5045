#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "codelex/codeword.hpp"
#include "support/tmp_dir.hpp"
#include "support/toy_models.hpp"

using namespace codelex;

namespace {

CorpusStats stats_of(std::size_t n_docs,
                     const std::vector<std::pair<std::string, std::size_t>>& doc_counts) {
  CorpusStats s;
  s.n_docs = n_docs;
  for (const auto& [w, c] : doc_counts) {
    s.doc_count[w] = c;
    s.term_count[w] = c;
  }
  return s;
}

ContextRep rep_with(std::vector<std::string> similar, std::vector<std::string> related) {
  ContextRep rep;
  double score = 0.9;
  for (auto& w : similar) rep.hate_similar.push_back({std::move(w), score -= 0.01});
  score = 0.9;
  for (auto& w : related) rep.hate_related.push_back({std::move(w), score -= 0.01});
  return rep;
}

}  // namespace

TEST_CASE("context_rep") {
  auto d_h = toy::angular_model({{"w", 0}, {"p", 5}, {"q", 40}});
  auto w_h = toy::angular_model({{"w", 0}, {"r", 7}, {"s", 50}});

  SECTION("topn = 0 gives two empty lists") {
    auto rep = context_rep("w", d_h, w_h, 0);
    CHECK(rep.hate_similar.empty());
    CHECK(rep.hate_related.empty());
  }

  SECTION("the two models answer independently") {
    auto rep = context_rep("w", d_h, w_h, 1);
    REQUIRE(rep.hate_similar.size() == 1);
    REQUIRE(rep.hate_related.size() == 1);
    CHECK(rep.hate_similar[0].word == "p");
    CHECK(rep.hate_related[0].word == "r");
  }

  SECTION("word known to one model only yields one empty side") {
    auto rep = context_rep("p", d_h, w_h, 2);
    CHECK(rep.hate_similar.size() == 2);
    CHECK(rep.hate_related.empty());
  }

  SECTION("word in neither vocabulary is fatal") {
    CHECK_THROWS_AS(context_rep("ghost", d_h, w_h, 2), NotInVocabularyError);
  }
}

TEST_CASE("primary_check") {
  SeedLexicon lex({"slur"});
  auto hate = stats_of(10, {{"w", 5}});
  auto clean = stats_of(10, {{"w", 2}});
  auto clean_heavy = stats_of(10, {{"w", 8}});

  SECTION("no lexicon word in either list fails") {
    auto rep = rep_with({"a", "b", "c", "d", "e"}, {"f", "g", "h", "i", "j"});
    auto ev = primary_check("w", rep, lex, 5, 0.2, hate, clean);
    CHECK_FALSE(ev.primary());
    CHECK_FALSE(ev.th_similarity);
    CHECK_FALSE(ev.th_relatedness);
    CHECK(ev.freq_check);
  }

  SECTION("one seed among five neighbors exactly meets th = 0.2") {
    auto rep = rep_with({"slur", "b", "c", "d", "e"}, {"f", "g", "h", "i", "j"});
    auto ev = primary_check("w", rep, lex, 5, 0.2, hate, clean);
    CHECK(ev.th_similarity);
    CHECK(ev.primary());
  }

  SECTION("seed plural variants count toward the intersection") {
    auto rep = rep_with({"slurs", "b", "c", "d", "e"}, {});
    auto ev = primary_check("w", rep, lex, 5, 0.2, hate, clean);
    CHECK(ev.th_similarity);
  }

  SECTION("thresholds pass but df contrast fails") {
    auto rep = rep_with({"slur", "b", "c", "d", "e"}, {"slur", "g", "h", "i", "j"});
    auto ev = primary_check("w", rep, lex, 5, 0.2, hate, clean_heavy);
    CHECK(ev.th_similarity);
    CHECK(ev.th_relatedness);
    CHECK_FALSE(ev.freq_check);
    CHECK_FALSE(ev.primary());
  }

  SECTION("exhaustive truth table matches (a or b) and c") {
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b)
        for (int c = 0; c <= 1; ++c) {
          auto rep = rep_with(a ? std::vector<std::string>{"slur", "x", "y", "z", "q"}
                                : std::vector<std::string>{"v", "x", "y", "z", "q"},
                              b ? std::vector<std::string>{"slur", "x", "y", "z", "q"}
                                : std::vector<std::string>{"v", "x", "y", "z", "q"});
          auto ev = primary_check("w", rep, lex, 5, 0.2, hate, c ? clean : clean_heavy);
          CHECK(ev.th_similarity == (a == 1));
          CHECK(ev.th_relatedness == (b == 1));
          CHECK(ev.freq_check == (c == 1));
          CHECK(ev.primary() == (((a == 1) || (b == 1)) && (c == 1)));
        }
  }

  SECTION("lowering th never demotes a word") {
    auto rep = rep_with({"slur", "b", "c", "d", "e"}, {});
    for (double th_hi : {0.2, 0.4, 0.9}) {
      auto hi = primary_check("w", rep, lex, 5, th_hi, hate, clean);
      for (double th_lo = 0.0; th_lo <= th_hi; th_lo += 0.05) {
        auto lo = primary_check("w", rep, lex, 5, th_lo, hate, clean);
        if (hi.primary()) CHECK(lo.primary());
      }
    }
  }

  SECTION("parameter validation") {
    auto rep = rep_with({}, {});
    CHECK_THROWS_AS(primary_check("w", rep, lex, 0, 0.2, hate, clean), ParameterError);
    CHECK_THROWS_AS(primary_check("w", rep, lex, 5, 1.5, hate, clean), ParameterError);
  }
}

TEST_CASE("secondary_check") {
  SeedLexicon lex({"slur"});

  SECTION("graph without lexicon vertices") {
    ContextualGraph g;
    g.add_edge_max("a", "b", 0.5);
    auto ev = secondary_check(g, lex);
    CHECK_FALSE(ev.linked);
    CHECK(ev.predecessors.empty());
  }

  SECTION("edge x -> slur yields predecessor {x}") {
    ContextualGraph g;
    g.add_edge_max("x", "slur", 0.5);
    auto ev = secondary_check(g, lex);
    CHECK(ev.linked);
    CHECK(ev.predecessors == std::set<std::string>{"x"});
    CHECK(ev.matched_seed_words == std::set<std::string>{"slur"});
  }

  SECTION("lexicon vertex with no predecessors does not count") {
    ContextualGraph g;
    g.add_vertex("slur");
    g.add_edge_max("slur", "b", 0.5);
    auto ev = secondary_check(g, lex);
    CHECK_FALSE(ev.linked);
    CHECK(ev.predecessors.empty());
  }

  SECTION("variant vertices match") {
    ContextualGraph g;
    g.add_edge_max("x", "slurs", 0.5);
    auto ev = secondary_check(g, lex);
    CHECK(ev.linked);
    CHECK(ev.matched_seed_words == std::set<std::string>{"slurs"});
  }
}

TEST_CASE("surface_codewords") {
  // D_H: cw sits next to the seed; benign sits in its own corner.
  auto d_h = toy::angular_model({{"slur", 0}, {"cw", 5}, {"mid", 9}, {"benign", 90},
                                 {"b2", 95}, {"b3", 100}, {"b4", 105}, {"b5", 110}});
  auto w_h = toy::angular_model({{"slur", 0}, {"cw", 6}, {"mid", 12}, {"benign", 91},
                                 {"b2", 96}, {"b3", 101}, {"b4", 106}, {"b5", 111}});
  SeedLexicon lex({"slur"});
  auto hate = stats_of(10, {{"cw", 6}, {"mid", 5}, {"benign", 2}, {"slur", 8},
                            {"b2", 3}, {"b3", 3}, {"b4", 3}, {"b5", 3}});
  auto clean = stats_of(10, {{"cw", 1}, {"mid", 1}, {"benign", 6},
                             {"b2", 3}, {"b3", 3}, {"b4", 3}, {"b5", 3}});
  SurfaceParams params;
  params.topn = 3;
  params.depth = 2;
  params.th = 0.2;

  SECTION("planted word lands in the primary bucket") {
    auto reports = surface_codewords(std::vector<std::string>{"cw"}, d_h, w_h, lex, hate,
                                     clean, params);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].bucket == Bucket::primary);
    CHECK(reports[0].freq_check);
  }

  SECTION("lexicon plural is excluded before any check") {
    auto reports = surface_codewords(std::vector<std::string>{"slurs", "cw"}, d_h, w_h, lex,
                                     hate, clean, params);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].word == "cw");
  }

  SECTION("candidate passing primary never touches the graph") {
    toy::CountingModel counted(d_h);
    auto reports = surface_codewords(std::vector<std::string>{"cw"}, counted, w_h, lex,
                                     hate, clean, params);
    REQUIRE(reports[0].bucket == Bucket::primary);
    // one query from context_rep only; build_graph would have added more
    CHECK(counted.total_queries() == 1);
  }

  SECTION("df failure downgrades to secondary via the graph route") {
    auto clean_heavy = stats_of(10, {{"cw", 9}, {"mid", 1}, {"benign", 6}});
    auto reports = surface_codewords(std::vector<std::string>{"cw"}, d_h, w_h, lex, hate,
                                     clean_heavy, params);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].bucket == Bucket::secondary);
    CHECK(reports[0].matched_seed_words == std::set<std::string>{"slur"});
  }

  SECTION("word far from every seed is rejected") {
    auto reports = surface_codewords(std::vector<std::string>{"benign"}, d_h, w_h, lex,
                                     hate, clean, params);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].bucket == Bucket::rejected);
  }

  SECTION("unknown candidate records an error and processing continues") {
    auto reports = surface_codewords(std::vector<std::string>{"ghost", "cw"}, d_h, w_h, lex,
                                     hate, clean, params);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].bucket == Bucket::rejected);
    CHECK_FALSE(reports[0].error.empty());
    CHECK(reports[1].bucket == Bucket::primary);
  }

  SECTION("no word sits in two buckets and primary implies freq_check") {
    std::vector<std::string> all{"cw", "mid", "benign", "b2", "b3", "b4", "b5"};
    auto reports = surface_codewords(all, d_h, w_h, lex, hate, clean, params);
    for (const auto& r : reports) {
      if (r.bucket == Bucket::primary) {
        CHECK(r.freq_check);
        CHECK((r.th_similarity || r.th_relatedness));
      }
      if (r.bucket == Bucket::secondary) CHECK_FALSE(r.matched_seed_words.empty());
    }
  }
}

TEST_CASE("report files") {
  toy::TmpDir dir("report");
  CodewordReport r1;
  r1.word = "cw";
  r1.bucket = Bucket::primary;
  r1.th_similarity = true;
  r1.freq_check = true;
  r1.df_hate = 0.5;
  r1.df_clean = 0.125;
  CodewordReport r2;
  r2.word = "zzz";
  r2.bucket = Bucket::rejected;
  r2.error = "word not in vocabulary: zzz";

  write_report_jsonl({r1, r2}, dir.file("r.jsonl"), "beef");
  auto lines = toy::slurp(dir.file("r.jsonl"));
  CHECK(lines.find("\"config_hash\":\"beef\"") != std::string::npos);
  CHECK(lines.find("\"word\":\"cw\"") != std::string::npos);
  CHECK(lines.find("\"bucket\":\"primary\"") != std::string::npos);
  CHECK(lines.find("\"error\"") != std::string::npos);

  write_report_summary_tsv({r1, r2}, dir.file("r.tsv"));
  CHECK(toy::slurp(dir.file("r.tsv")) == "cw\tprimary\nzzz\trejected\n");
}
