#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subgroup/corpus.hpp"
#include "subgroup/features.hpp"
#include "subgroup/fuzzy.hpp"
#include "subgroup/membership.hpp"
#include "subgroup/ranking.hpp"
#include "subgroup/relations.hpp"
#include "subgroup/synth.hpp"

namespace subgroup {

struct PipelineConfig {
  std::vector<std::string> transcripts;
  std::string seeds;
  std::string gold_labels;     // optional
  std::string gold_hierarchy;  // optional
  std::string lexicon;         // optional, bundled when empty
  std::string modals, hedges, profanity, address;  // optional

  TranscriptFormat format = TranscriptFormat::kSpeakerColon;
  Delimiter delimiter = Delimiter::kBlankLine;
  FeatureOptions features;
  GroupCenters<double> centers = GroupCenters<double>::rules();
  double lambda = 0.5;
  RelationWeights relation_weights;
  HierarchyVector hierarchy_weights = HierarchyVector::Ones();
  double top_coverage = 0.9;
  std::string out_dir = "out";
  std::uint64_t rng_seed = 0;
  int kmeans_restarts = 0;
  unsigned jobs = 1;

  /// Sets one `key = value` entry. Throws ConfigError on unknown keys or
  /// unparsable values.
  void set(std::string_view key, std::string_view value);
  /// Plain `key = value` lines, `#` comments.
  void merge_file(const std::string& path);
  /// Throws ConfigError when values are out of range or required paths are
  /// missing.
  void validate() const;
};

/// Everything `analyze` produces, kept in memory until written.
struct PipelineResult {
  Transcript transcript;
  FeatureAnalysis features;
  RelationMatrix relations;
  MembershipMatrix first;
  MembershipMatrix second;
  std::map<CharacterId, HardLabel> labels;
  /// Empty when the baseline could not run (e.g. too few distinct vectors).
  std::optional<KMeansResult> kmeans;
  InfluenceReport influence;
  std::vector<Ranking> rankings;
  std::optional<double> fuzzy_accuracy;
  std::optional<double> first_box_accuracy;
  std::optional<double> kmeans_accuracy;
  /// file name -> content
  std::map<std::string, std::string> files;
};

/// Runs every stage. Failures surface as StageError naming the stage.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Writes `files` under `dir`; on failure every file written so far is
/// removed before rethrowing.
void write_outputs(const std::map<std::string, std::string>& files, const std::string& dir);

// Individual stages, shared by the CLI subcommands and run_pipeline.

Transcript load_transcripts(const PipelineConfig& config);
Tagger make_tagger(const PipelineConfig& config);
HierarchyLexicons make_hierarchy_lexicons(const PipelineConfig& config);

/// influence.csv and hierarchy.json from a transcript and labels. Without
/// labels all characters form one group named "ALL".
std::map<std::string, std::string> rank_outputs(
    const Transcript& t, const std::map<CharacterId, Group>* labels,
    const std::vector<Ranking>* gold, const Tagger& tagger,
    const HierarchyLexicons& lex, const PipelineConfig& config,
    InfluenceReport* influence_out = nullptr, std::vector<Ranking>* rankings_out = nullptr);

}  // namespace subgroup
