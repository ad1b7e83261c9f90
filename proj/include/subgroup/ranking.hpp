#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "subgroup/corpus.hpp"
#include "subgroup/tagger.hpp"

namespace subgroup {

// ---------------------------------------------------------------------------
// Influence by comment volume

struct InfluenceEntry {
  CharacterId name;
  std::string affiliation;
  std::size_t comments = 0;
};

struct InfluenceReport {
  std::vector<InfluenceEntry> members;  // count descending, then name
  std::size_t total_comments = 0;
  double coverage = 0.0;  // listed comments / total_comments
};

/// Smallest prefix of the descending order whose cumulative count reaches
/// top_coverage * total. Characters missing from `affiliations` are listed
/// as "UNKNOWN". Throws ConfigError unless 0 < top_coverage <= 1 and
/// DataError for empty or all-zero counts.
InfluenceReport influence_ranking(const std::map<CharacterId, std::size_t>& counts,
                                  const std::map<CharacterId, std::string>& affiliations,
                                  double top_coverage = 0.9);

/// member,affiliation,comments
std::string influence_to_csv(const InfluenceReport& report);

// ---------------------------------------------------------------------------
// Hierarchy features

/// Terms of one or more words, matched against consecutive tokens.
class TermList {
 public:
  TermList() = default;
  /// One term per line; `#` starts a comment.
  static TermList parse(std::string_view content);
  static TermList load(const std::string& path);

  void add(std::string_view term);
  /// Number of token positions where some term starts.
  std::size_t count_in(std::span<const std::string> tokens) const;
  bool contains(std::string_view single_word) const;

  const std::vector<std::vector<std::string>>& terms() const noexcept { return terms_; }

 private:
  std::vector<std::vector<std::string>> terms_;
};

struct HierarchyLexicons {
  TermList modals;
  TermList hedges;
  TermList profanity;
  TermList address;

  static const HierarchyLexicons& builtin();
  bool mentions(std::string_view word) const;
};

inline constexpr int kHierarchyFeatureCount = 6;
using HierarchyVector = Eigen::Matrix<double, kHierarchyFeatureCount, 1>;

struct HierarchyFeatures {
  double coordination = 0.0;
  std::size_t questions = 0;
  std::size_t modal_verbs = 0;
  std::size_t hedges = 0;
  std::size_t profanity = 0;
  std::size_t terms_of_address = 0;

  /// Order: coordination, questions, modals, hedges, profanity, address.
  HierarchyVector as_vector() const;
};

/// The four POS categories compared when measuring coordination.
bool is_coordination_marker(PosTag tag) noexcept;

/// Counts over `c`'s turns. Coordination is the mean, over turns of `c` that
/// directly follow another speaker in the same conversation, of the fraction
/// of the four marker categories (determiner, pronoun, preposition,
/// conjunction) present in both the prompt and the reply; 0 with no such turn.
HierarchyFeatures hierarchy_features(const Transcript& t, const CharacterId& c,
                                     const Tagger& tagger, const HierarchyLexicons& lex);

/// hierarchy_features for every character, computed on `jobs` threads.
std::map<CharacterId, HierarchyFeatures> all_hierarchy_features(
    const Transcript& t, const Tagger& tagger, const HierarchyLexicons& lex,
    unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Rankings

struct Ranking {
  std::string group;
  std::vector<CharacterId> members;  // position k + 1 is members[k]
  std::vector<double> scores;

  /// 1-based; throws DataError for a non-member.
  int position_of(const CharacterId& c) const;
};

/// Per-feature z-scores inside the group (constant features score 0), summed
/// with `weights`, sorted descending with name as tie-break. Throws DataError
/// for fewer than two members or a member without features.
Ranking hierarchy_rank(std::string group, std::span<const CharacterId> members,
                       const std::map<CharacterId, HierarchyFeatures>& features,
                       const HierarchyVector& weights = HierarchyVector::Ones());

/// e = 3 / (n^3 - n) * sum_k (R_k - E_k)^2 over positions 1..n. Throws
/// DataError unless both are permutations of 1..n of the same length n > 1.
double ranking_error(std::span<const int> actual, std::span<const int> obtained);

/// Aligns the two rankings by member. Throws DataError on differing members.
double ranking_error(const Ranking& actual, const Ranking& obtained);

}  // namespace subgroup
