#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "subgroup_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(SUBGROUP_CLI) + " " + args + " >" +
                          (kWork / "stdout.txt").string() + " 2>" + (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out_text() { return testing::read_text((kWork / "stdout.txt").string()); }
std::string err_text() { return testing::read_text((kWork / "stderr.txt").string()); }

struct Workspace {
  Workspace() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};

}  // namespace

TEST_CASE("usage errors exit with 1") {
  Workspace ws;
  CHECK(run("") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("analyze --lambda") == 1);
  CHECK(run("analyze --no-such-flag 3") == 1);
  // Missing transcript and seeds.
  CHECK(run("analyze --out " + (kWork / "o").string()) == 1);
  CHECK(run("analyze --transcript " + testing::fixture_path("four_speakers.txt") + " --seeds " +
            testing::fixture_path("four_speakers_seeds.csv") + " --lambda 2") == 1);
  CHECK(run("--help") == 0);
}

TEST_CASE("data errors exit with 2") {
  Workspace ws;
  std::ofstream(kWork / "bad.txt") << "A: x\n: nobody\n";
  CHECK(run("relations --transcript " + (kWork / "bad.txt").string() + " --out " +
            (kWork / "o").string()) == 2);
  CHECK(err_text().find("line 2") != std::string::npos);
}

TEST_CASE("relations subcommand prints the four-speaker matrix") {
  Workspace ws;
  REQUIRE(run("relations --transcript " + testing::fixture_path("four_speakers.txt") + " --out " +
              (kWork / "rel").string()) == 0);
  CHECK(out_text() ==
        "character,P1,P2,P3,P4\nP1,0,1.5,3.5,2\nP2,1.5,0,1,0\nP3,3.5,1,0,0.5\nP4,2,0,0.5,0\n");
  CHECK(fs::exists(kWork / "rel" / "relations.json"));
  REQUIRE(run("relations --transcript " + testing::fixture_path("four_speakers.txt") + " --w2 0 --out " +
              (kWork / "rel2").string()) == 0);
  CHECK(out_text().find("P3,3,1,0,0\n") != std::string::npos);
}

TEST_CASE("synth, analyze, rank and eval chain together") {
  Workspace ws;
  const auto corpus = kWork / "corpus";
  REQUIRE(run("synth --out " + corpus.string() + " --seed 5") == 0);
  for (const auto* f : {"transcript.txt", "gold_labels.csv", "gold_hierarchy.csv", "seeds.csv", "analyze.conf"})
    CHECK(fs::exists(corpus / f));

  const auto out = kWork / "analysis";
  REQUIRE(run("analyze --config " + (corpus / "analyze.conf").string() + " --out " + out.string()) == 0);
  const auto printed = nlohmann::json::parse(out_text());
  CHECK(printed.contains("fuzzy_accuracy"));
  for (const auto* f : {"M1.csv", "M2.csv", "relations.csv", "influence.csv", "hierarchy.json", "summary.json"})
    CHECK(fs::exists(out / f));

  // Flags override the config file.
  const auto out2 = kWork / "analysis_lambda0";
  REQUIRE(run("analyze --config " + (corpus / "analyze.conf").string() + " --lambda 0 --out " + out2.string()) == 0);
  const auto summary = nlohmann::json::parse(testing::read_text((out2 / "summary.json").string()));
  CHECK(summary["config"]["lambda"].get<double>() == 0.0);

  const auto ranked = kWork / "ranked";
  REQUIRE(run("rank --transcript " + (corpus / "transcript.txt").string() + " --labels " +
              (out / "M2.csv").string() + " --gold-hierarchy " + (corpus / "gold_hierarchy.csv").string() +
              " --out " + ranked.string()) == 0);
  CHECK(testing::read_text((ranked / "influence.csv").string()) ==
        testing::read_text((out / "influence.csv").string()));
  CHECK(testing::read_text((ranked / "hierarchy.json").string()) ==
        testing::read_text((out / "hierarchy.json").string()));

  REQUIRE(run("eval --predicted " + (out / "M2.csv").string() + " --gold " +
              (corpus / "gold_labels.csv").string() + " --hierarchy " + (out / "hierarchy.json").string() +
              " --gold-hierarchy " + (corpus / "gold_hierarchy.csv").string()) == 0);
  const auto ev = nlohmann::json::parse(out_text());
  CHECK(ev["accuracy"].get<double>() == printed["fuzzy_accuracy"].get<double>());
  const auto hier = nlohmann::json::parse(testing::read_text((out / "hierarchy.json").string()));
  REQUIRE(ev["ranking_errors"].size() == hier["gold"].size());
  for (std::size_t k = 0; k < hier["gold"].size(); ++k)
    CHECK(ev["ranking_errors"][k]["error"].get<double>() ==
          doctest::Approx(hier["gold"][k]["error"].get<double>()).epsilon(1e-12));

  CHECK(run("eval --predicted " + (out / "M2.csv").string()) == 1);
}
