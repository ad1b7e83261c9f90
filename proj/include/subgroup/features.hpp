#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "subgroup/corpus.hpp"
#include "subgroup/labels.hpp"
#include "subgroup/pos.hpp"
#include "subgroup/tagger.hpp"

namespace subgroup {

/// A POS bigram or trigram. Unused trailing slots hold kOther.
struct PosGram {
  std::array<PosTag, 3> tags{PosTag::kOther, PosTag::kOther, PosTag::kOther};
  std::uint8_t length = 0;

  static PosGram bigram(PosTag a, PosTag b) { return {{a, b, PosTag::kOther}, 2}; }
  static PosGram trigram(PosTag a, PosTag b, PosTag c) { return {{a, b, c}, 3}; }

  std::span<const PosTag> view() const { return {tags.data(), length}; }

  /// "DETERMINER+NOUN".
  std::string str() const;

  friend auto operator<=>(const PosGram&, const PosGram&) = default;
  friend bool operator==(const PosGram&, const PosGram&) = default;
};

/// Multiset of grams.
using GramCounts = std::map<PosGram, std::size_t>;
using GramSet = std::set<PosGram>;

struct GramConfig {
  bool bigrams = true;
  bool trigrams = true;
};

/// Grams inside one tagged turn; grams made only of OTHER are dropped.
GramCounts turn_grams(std::span<const TaggedToken> tokens, const GramConfig& config);

/// Sum of turn_grams over every turn of `c`. Throws DataError if `c` is absent.
GramCounts extract_character_features(const Transcript& t, const CharacterId& c,
                                      const Tagger& tagger, const GramConfig& config);

/// Seed characters with a known affiliation; only GANG and POLICE are valid.
using SeedLabels = std::map<CharacterId, Group>;

/// CSV `NAME,GANG|POLICE`, `#` comments and blank lines ignored.
SeedLabels parse_seed_labels(std::string_view csv);
SeedLabels load_seed_labels(const std::string& path);

struct SeedSpaces {
  GramSet police;  // initial police features
  GramSet gang;    // initial gang features
};

/// Features whose count summed over one class's seeds reaches `min_count`.
SeedSpaces build_seed_spaces(const std::map<CharacterId, GramCounts>& features,
                             const SeedLabels& labels, std::size_t min_count);

struct FeatureSpace {
  GramSet initial_police;
  GramSet initial_gang;
  GramSet police;  // initial_police minus initial_gang
  GramSet gang;    // initial_gang minus initial_police
};

/// Removes shared features from both sides. Throws DataError when a side ends
/// up empty.
std::pair<GramSet, GramSet> orthogonalize(const GramSet& initial_police,
                                          const GramSet& initial_gang);

/// A counts gang features, B counts police features.
struct AbCounts {
  std::size_t gang = 0;
  std::size_t police = 0;

  friend bool operator==(const AbCounts&, const AbCounts&) = default;
};

AbCounts count_ab(const GramCounts& features, const GramSet& police, const GramSet& gang);

/// How the third coordinate d = A - B is scaled.
struct DMode {
  enum class Kind { kNormalized, kRawScaled };
  Kind kind = Kind::kNormalized;
  double scale = 1.0;

  static DMode normalized() { return {Kind::kNormalized, 1.0}; }
  static DMode raw_scaled(double s) { return {Kind::kRawScaled, s}; }

  /// "normalized", "raw_scaled" (scale 15) or "raw_scaled:<s>".
  static DMode parse(std::string_view text);
  std::string str() const;
};

/// (a, b, d). A + B = 0 maps to (0.5, 0.5, 0).
Eigen::Vector3d ab_vector(const AbCounts& counts, const DMode& mode);

struct CharacterFeatureStats {
  AbCounts counts;
  double a_ratio = 0.5;
  double b_ratio = 0.5;
  double d = 0.0;
  Eigen::Vector3d x = Eigen::Vector3d(0.5, 0.5, 0.0);
};

CharacterFeatureStats make_stats(const AbCounts& counts, const DMode& mode);

struct FeatureOptions {
  GramConfig grams;
  std::size_t min_count = 3;
  DMode d_mode;
};

struct FeatureAnalysis {
  FeatureSpace space;
  std::map<CharacterId, GramCounts> grams;
  std::map<CharacterId, CharacterFeatureStats> stats;
};

/// Extraction, seed spaces, orthogonalization and per-character (a, b, d).
/// `jobs` threads share the per-character work; the result does not depend
/// on it.
FeatureAnalysis analyze_features(const Transcript& t, const SeedLabels& seeds,
                                 const Tagger& tagger, const FeatureOptions& options,
                                 unsigned jobs = 1);

}  // namespace subgroup
