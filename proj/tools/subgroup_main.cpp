// Command-line front end: analyze, synth, relations, rank, eval.
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subgroup/error.hpp"
#include "subgroup/fuzzy.hpp"
#include "subgroup/pipeline.hpp"
#include "subgroup/relations.hpp"
#include "subgroup/synth.hpp"

namespace {

using namespace subgroup;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

/// Flag values kept as strings and applied over the config file, so flags
/// always win.
struct Overrides {
  std::optional<std::string> config;
  std::vector<std::string> transcripts;
  std::map<std::string, std::string> values;

  void bind(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }

  PipelineConfig build() const {
    PipelineConfig cfg;
    if (config) cfg.merge_file(*config);
    if (!transcripts.empty()) {
      cfg.transcripts.clear();
      for (const auto& t : transcripts) cfg.set("transcript", t);
    }
    for (const auto& [k, v] : values) cfg.set(k, v);
    return cfg;
  }
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option_function<std::string>(
      "--config", [&o](const std::string& v) { o.config = v; }, "key = value config file");
  app->add_option("--transcript", o.transcripts, "Transcript file (repeatable)");
  o.bind(app, "--format", "format", "speaker_colon | pretagged");
  o.bind(app, "--delimiter", "delimiter", "blank_line | scene_marker");
  o.bind(app, "--lexicon", "lexicon", "word<TAB>TAG lexicon");
  o.bind(app, "--jobs", "jobs", "Worker threads");
  o.bind(app, "--out", "out", "Output directory");
}

void add_analysis(CLI::App* app, Overrides& o) {
  o.bind(app, "--seeds", "seeds", "Seed labels CSV (NAME,GANG|POLICE)");
  o.bind(app, "--gold", "gold_labels", "Gold labels CSV for accuracy");
  o.bind(app, "--gold-hierarchy", "gold_hierarchy", "Gold hierarchy CSV");
  o.bind(app, "--lambda", "lambda", "Second-box relation blend in [0,1]");
  o.bind(app, "--d-mode", "d_mode", "normalized | raw_scaled[:s]");
  o.bind(app, "--min-count", "min_count", "Seed feature threshold");
  o.bind(app, "--seed", "rng_seed", "RNG seed");
  o.bind(app, "--kmeans-restarts", "kmeans_restarts", "Random k-means restarts");
  o.bind(app, "--top-coverage", "top_coverage", "Influence coverage in (0,1]");
  o.bind(app, "--weights", "weights", "Six hierarchy weights");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_json(const nlohmann::ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

int run_analyze(const Overrides& o) {
  const auto cfg = o.build();
  const auto result = run_pipeline(cfg);
  write_outputs(result.files, cfg.out_dir);
  nlohmann::ordered_json doc{{"out", cfg.out_dir},
                             {"characters", result.transcript.characters().size()},
                             {"turns", result.transcript.turns().size()}};
  if (result.fuzzy_accuracy) {
    doc["fuzzy_accuracy"] = *result.fuzzy_accuracy;
    if (result.kmeans_accuracy) doc["kmeans_accuracy"] = *result.kmeans_accuracy;
    else doc["kmeans_accuracy"] = nullptr;
  }
  print_json(doc);
  return kExitOk;
}

int run_relations(const Overrides& o) {
  auto cfg = o.build();
  if (cfg.transcripts.empty()) throw ConfigError("no transcript given");
  const auto t = load_transcripts(cfg);
  const auto r = build_relation_matrix(t, cfg.relation_weights, cfg.jobs);
  write_outputs({{"relations.csv", relations_to_csv(r)}, {"relations.json", relations_to_json(r)}},
                cfg.out_dir);
  std::cout << relations_to_csv(r);
  return kExitOk;
}

int run_rank(const Overrides& o, const std::optional<std::string>& labels_path) {
  const auto cfg = o.build();
  if (cfg.transcripts.empty()) throw ConfigError("no transcript given");
  const auto t = load_transcripts(cfg);
  std::optional<std::map<CharacterId, Group>> labels;
  if (labels_path) labels = load_label_csv(*labels_path);
  std::optional<std::vector<Ranking>> gold;
  if (!cfg.gold_hierarchy.empty()) gold = load_gold_hierarchy(cfg.gold_hierarchy);
  const auto files = rank_outputs(t, labels ? &*labels : nullptr, gold ? &*gold : nullptr,
                                  make_tagger(cfg), make_hierarchy_lexicons(cfg), cfg);
  write_outputs(files, cfg.out_dir);
  std::cout << files.at("influence.csv");
  return kExitOk;
}

int run_eval(const std::optional<std::string>& predicted, const std::optional<std::string>& gold,
             const std::optional<std::string>& hierarchy,
             const std::optional<std::string>& gold_hierarchy, const std::optional<std::string>& out) {
  nlohmann::ordered_json doc;
  if (predicted || gold) {
    if (!predicted || !gold) throw ConfigError("--predicted and --gold go together");
    const auto pred_all = load_label_csv(*predicted);
    const auto gold_labels = load_label_csv(*gold);
    std::map<CharacterId, Group> pred;
    for (const auto& [id, g] : gold_labels) {
      const auto it = pred_all.find(id);
      if (it == pred_all.end()) throw DataError("no prediction for '" + id.str() + "'");
      pred.emplace(id, it->second);
    }
    doc["accuracy"] = accuracy(pred, gold_labels);
    doc["characters"] = gold_labels.size();
  }
  if (hierarchy || gold_hierarchy) {
    if (!hierarchy || !gold_hierarchy) throw ConfigError("--hierarchy and --gold-hierarchy go together");
    const auto gold_rankings = load_gold_hierarchy(*gold_hierarchy);
    nlohmann::json obtained_doc;
    try {
      obtained_doc = nlohmann::json::parse(read_text(*hierarchy));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("invalid hierarchy JSON: ") + e.what());
    }
    nlohmann::ordered_json errors = nlohmann::ordered_json::array();
    const auto& sections = obtained_doc.contains("gold") ? obtained_doc["gold"] : obtained_doc["groups"];
    for (const auto& g : gold_rankings) {
      for (const auto& section : sections) {
        if (section.value("group", "") != g.group || !section.contains("members")) continue;
        Ranking obtained;
        obtained.group = g.group;
        for (const auto& m : section["members"]) {
          obtained.members.emplace_back(m.at("character").get<std::string>());
          obtained.scores.push_back(m.value("score", 0.0));
        }
        Ranking actual;
        actual.group = g.group;
        for (std::size_t k = 0; k < g.members.size(); ++k)
          if (std::find(obtained.members.begin(), obtained.members.end(), g.members[k]) != obtained.members.end())
            actual.members.push_back(g.members[k]);
        if (actual.members.size() != obtained.members.size() || actual.members.size() < 2) continue;
        errors.push_back({{"group", g.group}, {"error", ranking_error(actual, obtained)}});
      }
    }
    doc["ranking_errors"] = errors;
  }
  if (doc.empty()) throw ConfigError("eval needs --predicted/--gold or --hierarchy/--gold-hierarchy");
  if (out) write_outputs({{"eval.json", doc.dump(2) + "\n"}}, *out);
  print_json(doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgroup, influence and hierarchy detection in written conversations"};
  app.require_subcommand(1);

  Overrides analyze_o, relations_o, rank_o;

  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline");
  add_common(analyze, analyze_o);
  add_analysis(analyze, analyze_o);

  auto* relations = app.add_subcommand("relations", "Build the relation matrix");
  add_common(relations, relations_o);
  relations_o.bind(relations, "--w1", "w1", "Weight for adjacent turns");
  relations_o.bind(relations, "--w2", "w2", "Weight for turns two apart");

  auto* rank = app.add_subcommand("rank", "Influence and hierarchy reports");
  add_common(rank, rank_o);
  std::optional<std::string> rank_labels;
  rank->add_option_function<std::string>(
      "--labels", [&](const std::string& v) { rank_labels = v; }, "Labels CSV (e.g. M2.csv)");
  rank_o.bind(rank, "--gold-hierarchy", "gold_hierarchy", "Gold hierarchy CSV");
  rank_o.bind(rank, "--top-coverage", "top_coverage", "Influence coverage in (0,1]");
  rank_o.bind(rank, "--weights", "weights", "Six hierarchy weights");

  auto* eval = app.add_subcommand("eval", "Score labels or rankings against gold files");
  std::optional<std::string> eval_pred, eval_gold, eval_hier, eval_gold_hier, eval_out;
  eval->add_option_function<std::string>("--predicted", [&](const std::string& v) { eval_pred = v; },
                                         "Predicted labels CSV");
  eval->add_option_function<std::string>("--gold", [&](const std::string& v) { eval_gold = v; },
                                         "Gold labels CSV");
  eval->add_option_function<std::string>("--hierarchy", [&](const std::string& v) { eval_hier = v; },
                                         "hierarchy.json");
  eval->add_option_function<std::string>(
      "--gold-hierarchy", [&](const std::string& v) { eval_gold_hier = v; }, "Gold hierarchy CSV");
  eval->add_option_function<std::string>("--out", [&](const std::string& v) { eval_out = v; },
                                         "Output directory");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  SynthSpec spec;
  std::string synth_out = "synth";
  synth->add_option("--out", synth_out, "Output directory");
  synth->add_option("--seed", spec.rng_seed, "RNG seed");
  synth->add_option("--chars-per-group", spec.characters_per_group, "Characters per group");
  synth->add_option("--p-in", spec.p_in, "Within-group participant probability");
  synth->add_option("--overlap", spec.overlap, "Shared transition mass in [0,1]");
  synth->add_option("--conversations", spec.conversations, "Number of conversations");
  synth->add_option("--seeds-per-class", spec.seeds_per_class, "Seed characters per class");
  synth->add_option("--min-turns", spec.min_turns, "Minimum turns per conversation");
  synth->add_option("--max-turns", spec.max_turns, "Maximum turns per conversation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(analyze_o);
    if (*relations) return run_relations(relations_o);
    if (*rank) return run_rank(rank_o, rank_labels);
    if (*eval) return run_eval(eval_pred, eval_gold, eval_hier, eval_gold_hier, eval_out);
    if (*synth) {
      const auto corpus = generate_synthetic_corpus(spec);
      const std::string config =
          "# analyze config for this corpus\n"
          "transcript = transcript.txt\n"
          "seeds = seeds.csv\n"
          "gold_labels = gold_labels.csv\n"
          "gold_hierarchy = gold_hierarchy.csv\n"
          "rng_seed = " + std::to_string(spec.rng_seed) + "\n";
      write_outputs({{"transcript.txt", corpus.transcript_text},
                     {"gold_labels.csv", corpus.gold_labels_csv()},
                     {"gold_hierarchy.csv", corpus.gold_hierarchy_csv()},
                     {"seeds.csv", corpus.seeds_csv()},
                     {"analyze.conf", config}},
                    synth_out);
      std::cout << "wrote " << corpus.characters.size() << " characters to " << synth_out << "\n";
      return kExitOk;
    }
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case StageError::Kind::kConfig: return kExitUsage;
      case StageError::Kind::kData: return kExitData;
      case StageError::Kind::kInternal: return kExitInternal;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
