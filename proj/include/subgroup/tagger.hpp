#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subgroup/corpus.hpp"
#include "subgroup/pos.hpp"

namespace subgroup {

/// Word to tag table. File format: `word<TAB>TAG` per line, `#` comments.
class Lexicon {
 public:
  Lexicon() = default;

  /// The bundled English lexicon.
  static const Lexicon& builtin();
  static Lexicon parse(std::string_view content);
  static Lexicon load(const std::string& path);

  void add(std::string word, PosTag tag);
  std::optional<PosTag> find(std::string_view word) const;
  std::size_t size() const noexcept { return table_.size(); }

  /// Sorted words carrying `tag`.
  std::vector<std::string> words_with_tag(PosTag tag) const;

 private:
  std::unordered_map<std::string, PosTag> table_;
};

/// Lexicon lookup, then suffix rules, then NOUN for words containing a letter
/// and OTHER for everything else.
class Tagger {
 public:
  explicit Tagger(Lexicon lexicon = Lexicon::builtin());

  PosTag tag_word(std::string_view token) const;
  std::vector<TaggedToken> tag(std::span<const std::string> tokens) const;

  const Lexicon& lexicon() const noexcept { return lexicon_; }

 private:
  Lexicon lexicon_;
};

/// Suffix rule applied to a token not found in the lexicon.
std::optional<PosTag> suffix_rule(std::string_view token) noexcept;

std::vector<TaggedToken> tag_turn(std::span<const std::string> tokens,
                                  const Tagger& tagger);

/// Tagged token stream for a turn: tokenize + tag for speaker-colon input,
/// or the `token_TAG` items for pre-tagged input.
std::vector<TaggedToken> tagged_tokens(const Turn& turn, TranscriptFormat format,
                                       const Tagger& tagger);

}  // namespace subgroup
