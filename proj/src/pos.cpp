#include "subgroup/pos.hpp"

#include <utility>

#include "util.hpp"

namespace subgroup {

std::string_view to_string(PosTag tag) noexcept {
  switch (tag) {
    case PosTag::kNoun: return "NOUN";
    case PosTag::kPronoun: return "PRONOUN";
    case PosTag::kAdjective: return "ADJECTIVE";
    case PosTag::kDeterminer: return "DETERMINER";
    case PosTag::kVerb: return "VERB";
    case PosTag::kAuxVerb: return "AUX_VERB";
    case PosTag::kAdverb: return "ADVERB";
    case PosTag::kPreposition: return "PREPOSITION";
    case PosTag::kConjunction: return "CONJUNCTION";
    case PosTag::kInterjection: return "INTERJECTION";
    case PosTag::kOther: return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) noexcept {
  static constexpr std::pair<std::string_view, PosTag> kNames[] = {
      {"NOUN", PosTag::kNoun},
      {"PRONOUN", PosTag::kPronoun},
      {"ADJECTIVE", PosTag::kAdjective},
      {"DETERMINER", PosTag::kDeterminer},
      {"VERB", PosTag::kVerb},
      {"AUX_VERB", PosTag::kAuxVerb},
      {"ADVERB", PosTag::kAdverb},
      {"PREPOSITION", PosTag::kPreposition},
      {"CONJUNCTION", PosTag::kConjunction},
      {"INTERJECTION", PosTag::kInterjection},
      {"OTHER", PosTag::kOther},
      // Penn Treebank
      {"NN", PosTag::kNoun},
      {"NNS", PosTag::kNoun},
      {"NNP", PosTag::kNoun},
      {"NNPS", PosTag::kNoun},
      {"PRP", PosTag::kPronoun},
      {"PRP$", PosTag::kDeterminer},
      {"WP", PosTag::kPronoun},
      {"WP$", PosTag::kDeterminer},
      {"EX", PosTag::kPronoun},
      {"JJ", PosTag::kAdjective},
      {"JJR", PosTag::kAdjective},
      {"JJS", PosTag::kAdjective},
      {"CD", PosTag::kAdjective},
      {"DT", PosTag::kDeterminer},
      {"PDT", PosTag::kDeterminer},
      {"WDT", PosTag::kDeterminer},
      {"VB", PosTag::kVerb},
      {"VBD", PosTag::kVerb},
      {"VBG", PosTag::kVerb},
      {"VBN", PosTag::kVerb},
      {"VBP", PosTag::kVerb},
      {"VBZ", PosTag::kVerb},
      {"MD", PosTag::kAuxVerb},
      {"RB", PosTag::kAdverb},
      {"RBR", PosTag::kAdverb},
      {"RBS", PosTag::kAdverb},
      {"WRB", PosTag::kAdverb},
      {"RP", PosTag::kAdverb},
      {"IN", PosTag::kPreposition},
      {"TO", PosTag::kPreposition},
      {"CC", PosTag::kConjunction},
      {"UH", PosTag::kInterjection},
      {"FW", PosTag::kNoun},
      {"POS", PosTag::kOther},
      {"SYM", PosTag::kOther},
      {"LS", PosTag::kOther},
      {".", PosTag::kOther},
      {",", PosTag::kOther},
      {":", PosTag::kOther},
      {"(", PosTag::kOther},
      {")", PosTag::kOther},
      {"``", PosTag::kOther},
      {"''", PosTag::kOther},
      {"$", PosTag::kOther},
      {"#", PosTag::kOther},
  };
  const std::string up = detail::to_upper(name);
  for (const auto& [key, tag] : kNames)
    if (key == up) return tag;
  return std::nullopt;
}

std::optional<TaggedToken> parse_tagged_token(std::string_view item) {
  // Tag names may themselves contain '_' (AUX_VERB), so try the earlier
  // separator first when the longer suffix is a valid tag.
  const auto last = item.rfind('_');
  if (last == std::string_view::npos || last == 0 || last + 1 == item.size()) return std::nullopt;
  std::size_t sep = last;
  if (const auto prev = item.rfind('_', last - 1); prev != std::string_view::npos && prev > 0 &&
                                                   parse_pos_tag(item.substr(prev + 1)))
    sep = prev;
  const auto tag = parse_pos_tag(item.substr(sep + 1));
  if (!tag) return std::nullopt;
  return TaggedToken{detail::to_lower(item.substr(0, sep)), *tag};
}

}  // namespace subgroup
