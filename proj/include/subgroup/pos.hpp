#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace subgroup {

enum class PosTag : std::uint8_t {
  kNoun,
  kPronoun,
  kAdjective,
  kDeterminer,
  kVerb,
  kAuxVerb,
  kAdverb,
  kPreposition,
  kConjunction,
  kInterjection,
  kOther,  // punctuation, numbers, symbols
};

inline constexpr std::size_t kPosTagCount = 11;

inline constexpr std::array<PosTag, kPosTagCount> kAllPosTags = {
    PosTag::kNoun,        PosTag::kPronoun,     PosTag::kAdjective,
    PosTag::kDeterminer,  PosTag::kVerb,        PosTag::kAuxVerb,
    PosTag::kAdverb,      PosTag::kPreposition, PosTag::kConjunction,
    PosTag::kInterjection, PosTag::kOther};

/// Canonical upper-case name, e.g. "AUX_VERB".
std::string_view to_string(PosTag tag) noexcept;

/// Accepts canonical names and the Penn Treebank tag set (NN, VBZ, MD, ...).
std::optional<PosTag> parse_pos_tag(std::string_view name) noexcept;

struct TaggedToken {
  std::string token;
  PosTag tag;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// Splits `word_TAG` at the last underscore. Returns nullopt when the tag is
/// unknown or either side is empty. The word is lowercased.
std::optional<TaggedToken> parse_tagged_token(std::string_view item);

}  // namespace subgroup
