#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "support/tmp_dir.hpp"

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CODELEX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

}  // namespace

TEST_CASE("cli exit codes") {
  toy::TmpDir dir("cli");

  SECTION("missing input file exits 1") {
    CHECK(run_cli("ingest --input " + dir.file("nope.jsonl") + " --out-dir " +
                  dir.file("out")) == 1);
  }

  SECTION("empty lexicon exits 2") {
    auto lex = dir.write("empty.txt", "# nothing here\n");
    auto vec = dir.write("m.vec", "2 2\na 1 0\nb 0 1\n");
    auto stats = dir.write("s.tsv", "# n_docs=10\na\t5\t5\nb\t2\t2\n");
    CHECK(run_cli("expand --lexicon " + lex + " --similarity-model " + vec +
                  " --hate-stats " + stats + " --clean-stats " + stats + " --out-dir " +
                  dir.file("out")) == 2);
  }

  SECTION("out-of-range damping exits 2") {
    auto lex = dir.write("lex.txt", "slur\n");
    auto vec = dir.write("m.vec", "2 2\nslur 1 0\ncw 0.9 0.2\n");
    auto stats = dir.write("s.tsv", "# n_docs=10\nslur\t5\t5\ncw\t2\t2\n");
    CHECK(run_cli("expand --lexicon " + lex + " --similarity-model " + vec +
                  " --hate-stats " + stats + " --clean-stats " + stats +
                  " --damping 1.5 --out-dir " + dir.file("out")) == 2);
  }

  SECTION("pagerank starved of iterations exits 3 but still writes output") {
    auto lex = dir.write("lex.txt", "slur\n");
    auto vec = dir.write("m.vec",
                         "4 2\nslur 1 0\ncw 0.95 0.3\nbenign 0.7 0.7\nfar -1 0.1\n");
    auto hate = dir.write("h.tsv",
                          "# n_docs=10\nslur\t6\t6\ncw\t4\t4\nbenign\t2\t2\nfar\t1\t1\n");
    auto clean = dir.write("c.tsv",
                           "# n_docs=10\ncw\t1\t1\nbenign\t6\t6\nfar\t1\t1\n");
    const int rc = run_cli("expand --lexicon " + lex + " --similarity-model " + vec +
                           " --hate-stats " + hate + " --clean-stats " + clean +
                           " --max-iter 1 --eps 1e-16 --out-dir " + dir.file("out3"));
    CHECK(rc == 3);
    CHECK(std::filesystem::exists(dir.file("out3") + "/expanded_words.txt"));
  }
}

TEST_CASE("cli config file with flag overrides") {
  toy::TmpDir dir("clicfg");
  auto stats = dir.write("s.tsv", "# n_docs=4\naa\t1\t3\nbb\t2\t2\ncc\t1\t1\ndd\t1\t1\n");
  auto cfg = dir.write("run.cfg", "hate_stats_path = " + stats + "\ntfidf_k = 3\n");

  REQUIRE(run_cli("baseline --config " + cfg + " --out-dir " + dir.file("o1")) == 0);
  auto out1 = toy::slurp(dir.file("o1") + "/tfidf_topk.tsv");
  CHECK(std::count(out1.begin(), out1.end(), '\n') == 4);  // hash line + 3 rows

  // explicit flag wins over the config file
  REQUIRE(run_cli("baseline --config " + cfg + " --k 2 --out-dir " + dir.file("o2")) == 0);
  auto out2 = toy::slurp(dir.file("o2") + "/tfidf_topk.tsv");
  CHECK(std::count(out2.begin(), out2.end(), '\n') == 3);

  // every run echoes its resolved config
  CHECK(std::filesystem::exists(dir.file("o1") + "/run_config.txt"));
  auto echoed = toy::slurp(dir.file("o1") + "/run_config.txt");
  CHECK(echoed.find("config_hash = ") != std::string::npos);
  CHECK(echoed.find("tfidf_k = 3") != std::string::npos);
}

TEST_CASE("cli rejects unknown corpus tags") {
  toy::TmpDir dir("clitag");
  auto input = dir.write("d.jsonl", "{\"id\":\"1\",\"text\":\"a b\"}\n");
  CHECK(run_cli("ingest --input " + input + " --source bogus --out-dir " +
                dir.file("out")) != 0);
  CHECK(run_cli("ingest --input " + input + " --source keyword_hate --out-dir " +
                dir.file("out")) == 0);
}
