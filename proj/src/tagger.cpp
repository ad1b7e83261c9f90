#include "subgroup/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "subgroup/error.hpp"
#include "util.hpp"

namespace subgroup {

namespace embedded {
extern const std::string_view lexicon;
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = Lexicon::parse(embedded::lexicon);
  return lex;
}

Lexicon Lexicon::parse(std::string_view content) {
  Lexicon lex;
  const auto lines = detail::split_lines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = detail::trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(n + 1, "expected 'word<TAB>TAG'");
    const auto word = detail::trim(line.substr(0, tab));
    const auto tag_name = detail::trim(line.substr(tab + 1));
    const auto tag = parse_pos_tag(tag_name);
    if (word.empty()) throw ParseError(n + 1, "empty word");
    if (!tag) throw ParseError(n + 1, "unknown tag '" + std::string(tag_name) + "'");
    lex.add(detail::to_lower(word), *tag);
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  try {
    return parse(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

void Lexicon::add(std::string word, PosTag tag) { table_.insert_or_assign(std::move(word), tag); }

std::optional<PosTag> Lexicon::find(std::string_view word) const {
  const auto it = table_.find(std::string(word));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Lexicon::words_with_tag(PosTag tag) const {
  std::vector<std::string> out;
  for (const auto& [word, t] : table_)
    if (t == tag) out.push_back(word);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PosTag> suffix_rule(std::string_view token) noexcept {
  struct Rule {
    std::string_view suffix;
    PosTag tag;
  };
  // Longest suffixes first; each needs a stem of at least three characters.
  static constexpr Rule kRules[] = {
      {"ness", PosTag::kNoun},      {"tion", PosTag::kNoun},      {"sion", PosTag::kNoun},
      {"ment", PosTag::kNoun},      {"ship", PosTag::kNoun},      {"ance", PosTag::kNoun},
      {"ence", PosTag::kNoun},      {"able", PosTag::kAdjective}, {"ible", PosTag::kAdjective},
      {"less", PosTag::kAdjective}, {"ical", PosTag::kAdjective}, {"ing", PosTag::kVerb},
      {"ity", PosTag::kNoun},       {"ism", PosTag::kNoun},       {"ist", PosTag::kNoun},
      {"ous", PosTag::kAdjective},  {"ful", PosTag::kAdjective},  {"ive", PosTag::kAdjective},
      {"ish", PosTag::kAdjective},  {"ize", PosTag::kVerb},       {"ise", PosTag::kVerb},
      {"ify", PosTag::kVerb},       {"ly", PosTag::kAdverb},      {"ed", PosTag::kVerb},
  };
  for (const auto& rule : kRules)
    if (token.size() >= rule.suffix.size() + 3 && token.ends_with(rule.suffix)) return rule.tag;
  return std::nullopt;
}

Tagger::Tagger(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

PosTag Tagger::tag_word(std::string_view token) const {
  if (const auto hit = lexicon_.find(token)) return *hit;
  const bool has_letter = std::any_of(token.begin(), token.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) || u >= 0x80;
  });
  if (!has_letter) return PosTag::kOther;
  if (const auto rule = suffix_rule(token)) return *rule;
  return PosTag::kNoun;
}

std::vector<TaggedToken> Tagger::tag(std::span<const std::string> tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back({t, tag_word(t)});
  return out;
}

std::vector<TaggedToken> tag_turn(std::span<const std::string> tokens, const Tagger& tagger) {
  return tagger.tag(tokens);
}

std::vector<TaggedToken> tagged_tokens(const Turn& turn, TranscriptFormat format,
                                       const Tagger& tagger) {
  if (format == TranscriptFormat::kSpeakerColon) return tagger.tag(tokenize(turn.text));

  std::vector<TaggedToken> out;
  std::size_t pos = 0;
  const std::string_view text = turn.text;
  while (pos < text.size()) {
    const auto end = text.find_first_of(" \t", pos);
    const auto item = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (!item.empty()) {
      auto parsed = parse_tagged_token(item);
      if (!parsed) throw DataError("bad tagged token '" + std::string(item) + "'");
      out.push_back(std::move(*parsed));
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace subgroup
