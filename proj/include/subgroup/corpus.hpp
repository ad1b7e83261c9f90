#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace subgroup {

/// Normalized speaker key: trimmed and ASCII-uppercased. Never empty.
class CharacterId {
 public:
  /// Throws DataError when `raw` normalizes to an empty string.
  explicit CharacterId(std::string_view raw);

  const std::string& str() const noexcept { return key_; }

  friend auto operator<=>(const CharacterId&, const CharacterId&) = default;
  friend bool operator==(const CharacterId&, const CharacterId&) = default;

 private:
  std::string key_;
};

struct Turn {
  CharacterId speaker;
  std::string text;
  std::size_t index = 0;
  std::size_t conversation_id = 0;

  friend bool operator==(const Turn&, const Turn&) = default;
};

/// Half-open range of turn indices.
struct ConversationRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const ConversationRange&, const ConversationRange&) = default;
};

enum class TranscriptFormat { kSpeakerColon, kPretagged };

enum class Delimiter {
  kBlankLine,    // blank lines and `== ... ==` markers both end a conversation
  kSceneMarker,  // only `== ... ==` markers do; blank lines are ignored
};

struct ParseOptions {
  TranscriptFormat format = TranscriptFormat::kSpeakerColon;
  Delimiter delimiter = Delimiter::kBlankLine;
  /// Treat lines without a colon as errors instead of skipping them.
  bool strict = false;
};

struct ParseWarning {
  std::size_t line = 0;
  std::string message;
};

/// Immutable, validated turn sequence.
class Transcript {
 public:
  /// Validates indices, partition, and speaker bookkeeping; throws DataError.
  Transcript(TranscriptFormat format, std::vector<Turn> turns,
             std::vector<ConversationRange> conversations);

  TranscriptFormat format() const noexcept { return format_; }
  const std::vector<Turn>& turns() const noexcept { return turns_; }
  /// Sorted, unique.
  const std::vector<CharacterId>& characters() const noexcept { return characters_; }
  const std::vector<ConversationRange>& conversations() const noexcept {
    return conversations_;
  }
  bool contains(const CharacterId& c) const;

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  TranscriptFormat format_;
  std::vector<Turn> turns_;
  std::vector<ConversationRange> conversations_;
  std::vector<CharacterId> characters_;
};

/// Parses `NAME: utterance` lines. Consecutive lines by the same speaker
/// inside one conversation merge into a single turn.
Transcript parse_transcript(std::string_view raw, const ParseOptions& options = {},
                            std::vector<ParseWarning>* warnings = nullptr);

Transcript load_transcript(const std::string& path, const ParseOptions& options = {},
                           std::vector<ParseWarning>* warnings = nullptr);

/// Concatenates transcripts as consecutive conversation blocks.
Transcript concatenate(const std::vector<Transcript>& parts);

/// Text form accepted by parse_transcript (blank line between conversations).
std::string to_speaker_colon(const Transcript& t);

/// Canonical JSON: {characters, conversations, turns, format}.
std::string to_canonical_json(const Transcript& t);
Transcript from_canonical_json(std::string_view json);

std::map<CharacterId, std::size_t> comment_counts(const Transcript& t);

/// Lowercased words with punctuation split into single-character tokens.
/// Apostrophes between alphanumerics stay inside the word.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace subgroup
