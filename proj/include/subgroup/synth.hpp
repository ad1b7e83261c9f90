#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "subgroup/corpus.hpp"
#include "subgroup/features.hpp"
#include "subgroup/labels.hpp"
#include "subgroup/ranking.hpp"
#include "subgroup/tagger.hpp"

namespace subgroup {

/// Per-turn probabilities of the hierarchy markers for one level, plus the
/// level's relative speaking activity.
struct LevelRates {
  double modal = 0.0;
  double hedge = 0.0;
  double profanity = 0.0;
  double address = 0.0;
  double question = 0.0;
  /// Chance of echoing each marker category of the prompt that the reply lacks.
  double coordination = 0.0;
  double activity = 1.0;
};

struct SynthSpec {
  std::size_t characters_per_group = 8;
  /// Probability that a conversation participant comes from the
  /// conversation's home group.
  double p_in = 0.8;
  /// Fraction of transition mass moved to transitions shared by all groups.
  double overlap = 0.5;
  std::size_t conversations = 80;
  std::size_t min_participants = 2;
  std::size_t max_participants = 4;
  std::size_t min_turns = 6;
  std::size_t max_turns = 14;
  std::size_t min_tokens = 4;
  std::size_t max_tokens = 10;
  std::size_t seeds_per_class = 4;
  /// Level 0 is the top of each group's hierarchy.
  std::array<LevelRates, 3> levels{
      LevelRates{0.5, 0.04, 0.35, 0.5, 0.5, 0.9, 3.0},
      LevelRates{0.25, 0.2, 0.15, 0.25, 0.25, 0.5, 2.0},
      LevelRates{0.05, 0.45, 0.03, 0.05, 0.08, 0.1, 1.0}};
  std::uint64_t rng_seed = 1;

  /// Throws ConfigError for infeasible values.
  void validate() const;
};

/// First-order Markov chain over the ten non-OTHER tags.
struct TagChain {
  Eigen::Matrix<double, 10, 1> start;
  Eigen::Matrix<double, 10, 10> transition;  // rows sum to 1
};

/// Tag used for chain state `i`.
PosTag chain_tag(int state);

struct SynthCharacter {
  CharacterId name;
  Group group = Group::kGang;
  int level = 0;
  int rank = 0;  // 1-based gold position inside the group
  double activity = 1.0;
  std::size_t planted_turns = 0;
};

struct SynthCorpus {
  std::string transcript_text;  // speaker-colon format
  std::vector<SynthCharacter> characters;
  SeedLabels seeds;
  std::array<TagChain, 3> chains;  // by Group index

  std::map<CharacterId, Group> gold_labels() const;
  std::map<CharacterId, std::size_t> planted_counts() const;
  /// Gold hierarchy per group, ordered by rank.
  std::vector<Ranking> gold_rankings() const;

  std::string gold_labels_csv() const;     // NAME,GROUP
  std::string gold_hierarchy_csv() const;  // NAME,GROUP,LEVEL,RANK
  std::string seeds_csv() const;           // NAME,GANG|POLICE
};

/// Group chains for a spec: each group owns a disjoint block of transitions;
/// `overlap` of every row's mass moves to the shared block. The informant
/// chain is the even mixture of the gang and police chains.
std::array<TagChain, 3> make_group_chains(double overlap, std::uint64_t rng_seed);

/// Words rendered for a tag: lexicon entries the tagger maps back to the
/// same tag, excluding hierarchy-marker terms.
std::map<PosTag, std::vector<std::string>> reverse_lexicon(const Tagger& tagger,
                                                           const HierarchyLexicons& lex);

SynthCorpus generate_synthetic_corpus(const SynthSpec& spec,
                                      const Tagger& tagger = Tagger(),
                                      const HierarchyLexicons& lex = HierarchyLexicons::builtin());

/// Reads `NAME,GROUP,LEVEL,RANK` (LEVEL may be omitted: `NAME,GROUP,RANK`).
std::vector<Ranking> parse_gold_hierarchy(std::string_view csv);
std::vector<Ranking> load_gold_hierarchy(const std::string& path);

}  // namespace subgroup
