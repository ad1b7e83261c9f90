#include "subgroup/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <json.hpp>

#include "subgroup/error.hpp"
#include "subgroup/pos.hpp"
#include "util.hpp"

namespace subgroup {

namespace {

bool is_scene_marker(std::string_view line) {
  return line.size() >= 4 && line.starts_with("==") && line.ends_with("==");
}

bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

CharacterId::CharacterId(std::string_view raw) : key_(detail::to_upper(detail::trim(raw))) {
  if (key_.empty()) throw DataError("empty character name");
}

Transcript::Transcript(TranscriptFormat format, std::vector<Turn> turns,
                       std::vector<ConversationRange> conversations)
    : format_(format), turns_(std::move(turns)), conversations_(std::move(conversations)) {
  for (std::size_t i = 0; i < turns_.size(); ++i)
    if (turns_[i].index != i) throw DataError("turn indices must be contiguous from 0");

  std::size_t expected = 0;
  for (std::size_t c = 0; c < conversations_.size(); ++c) {
    const auto& range = conversations_[c];
    if (range.begin != expected || range.end <= range.begin)
      throw DataError("conversation ranges must partition the turns");
    for (std::size_t i = range.begin; i < range.end; ++i) {
      if (i >= turns_.size()) throw DataError("conversation range past the last turn");
      if (turns_[i].conversation_id != c) throw DataError("turn conversation id mismatch");
    }
    expected = range.end;
  }
  if (expected != turns_.size()) throw DataError("conversation ranges must partition the turns");

  std::set<CharacterId> names;
  for (const auto& t : turns_) names.insert(t.speaker);
  characters_.assign(names.begin(), names.end());
}

bool Transcript::contains(const CharacterId& c) const {
  return std::binary_search(characters_.begin(), characters_.end(), c);
}

Transcript parse_transcript(std::string_view raw, const ParseOptions& options,
                            std::vector<ParseWarning>* warnings) {
  if (detail::trim(raw).empty()) throw ParseError(0, "empty transcript");

  std::vector<Turn> turns;
  std::vector<ConversationRange> conversations;
  std::size_t conversation_start = 0;
  bool conversation_open = false;

  auto close_conversation = [&] {
    if (!conversation_open) return;
    conversations.push_back({conversation_start, turns.size()});
    conversation_open = false;
  };

  const auto lines = detail::split_lines(raw);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const std::string_view line = detail::trim(lines[n]);

    if (line.empty()) {
      if (options.delimiter == Delimiter::kBlankLine) close_conversation();
      continue;
    }
    if (is_scene_marker(line)) {
      close_conversation();
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      if (options.strict) throw ParseError(line_no, "expected 'NAME: utterance'");
      if (warnings) warnings->push_back({line_no, "skipped line without speaker tag"});
      continue;
    }
    const std::string_view name = detail::trim(line.substr(0, colon));
    if (name.empty()) throw ParseError(line_no, "empty speaker name");
    const std::string_view text = detail::trim(line.substr(colon + 1));

    if (options.format == TranscriptFormat::kPretagged) {
      std::size_t pos = 0;
      while (pos < text.size()) {
        const auto end = text.find_first_of(" \t", pos);
        const auto item = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        if (!item.empty() && !parse_tagged_token(item))
          throw ParseError(line_no, "bad tagged token '" + std::string(item) + "'");
        if (end == std::string_view::npos) break;
        pos = end + 1;
      }
    }

    CharacterId speaker(name);
    if (conversation_open && !turns.empty() && turns.back().speaker == speaker) {
      auto& prev = turns.back().text;
      if (!prev.empty() && !text.empty()) prev += ' ';
      prev += text;
      continue;
    }
    if (!conversation_open) {
      conversation_open = true;
      conversation_start = turns.size();
    }
    turns.push_back({std::move(speaker), std::string(text), turns.size(), conversations.size()});
  }
  close_conversation();

  if (turns.empty()) throw ParseError(0, "transcript contains no turns");
  return Transcript(options.format, std::move(turns), std::move(conversations));
}

Transcript load_transcript(const std::string& path, const ParseOptions& options,
                           std::vector<ParseWarning>* warnings) {
  try {
    return parse_transcript(detail::read_file(path), options, warnings);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

Transcript concatenate(const std::vector<Transcript>& parts) {
  if (parts.empty()) throw DataError("no transcripts");
  std::vector<Turn> turns;
  std::vector<ConversationRange> conversations;
  const TranscriptFormat format = parts.front().format();
  for (const auto& part : parts) {
    if (part.format() != format) throw DataError("cannot mix transcript formats");
    const std::size_t turn_offset = turns.size();
    const std::size_t conv_offset = conversations.size();
    for (const auto& r : part.conversations())
      conversations.push_back({r.begin + turn_offset, r.end + turn_offset});
    for (const auto& t : part.turns())
      turns.push_back({t.speaker, t.text, t.index + turn_offset, t.conversation_id + conv_offset});
  }
  return Transcript(format, std::move(turns), std::move(conversations));
}

std::string to_speaker_colon(const Transcript& t) {
  std::string out;
  for (std::size_t c = 0; c < t.conversations().size(); ++c) {
    if (c > 0) out += '\n';
    const auto& range = t.conversations()[c];
    for (std::size_t i = range.begin; i < range.end; ++i) {
      const auto& turn = t.turns()[i];
      out += turn.speaker.str();
      out += ':';
      if (!turn.text.empty()) {
        out += ' ';
        out += turn.text;
      }
      out += '\n';
    }
  }
  return out;
}

std::string to_canonical_json(const Transcript& t) {
  nlohmann::ordered_json doc;
  doc["format"] = t.format() == TranscriptFormat::kPretagged ? "pretagged" : "speaker_colon";
  auto& chars = doc["characters"] = nlohmann::ordered_json::array();
  for (const auto& c : t.characters()) chars.push_back(c.str());
  auto& convs = doc["conversations"] = nlohmann::ordered_json::array();
  for (const auto& r : t.conversations()) convs.push_back({r.begin, r.end});
  auto& turns = doc["turns"] = nlohmann::ordered_json::array();
  for (const auto& turn : t.turns())
    turns.push_back({{"speaker", turn.speaker.str()},
                     {"text", turn.text},
                     {"conversation_id", turn.conversation_id}});
  return doc.dump(2) + "\n";
}

Transcript from_canonical_json(std::string_view json) {
  try {
    const auto doc = nlohmann::json::parse(json);
    TranscriptFormat format = TranscriptFormat::kSpeakerColon;
    if (doc.contains("format")) {
      const auto f = doc.at("format").get<std::string>();
      if (f == "pretagged") format = TranscriptFormat::kPretagged;
      else if (f != "speaker_colon") throw DataError("unknown transcript format '" + f + "'");
    }
    std::vector<ConversationRange> conversations;
    for (const auto& r : doc.at("conversations"))
      conversations.push_back({r.at(0).get<std::size_t>(), r.at(1).get<std::size_t>()});
    std::vector<Turn> turns;
    for (const auto& item : doc.at("turns"))
      turns.push_back({CharacterId(item.at("speaker").get<std::string>()),
                       item.at("text").get<std::string>(), turns.size(),
                       item.at("conversation_id").get<std::size_t>()});
    Transcript t(format, std::move(turns), std::move(conversations));
    std::vector<std::string> listed;
    for (const auto& c : doc.at("characters")) listed.push_back(CharacterId(c.get<std::string>()).str());
    std::vector<std::string> actual;
    for (const auto& c : t.characters()) actual.push_back(c.str());
    std::sort(listed.begin(), listed.end());
    if (listed != actual) throw DataError("character list does not match the turns");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid transcript JSON: ") + e.what());
  }
}

std::map<CharacterId, std::size_t> comment_counts(const Transcript& t) {
  std::map<CharacterId, std::size_t> counts;
  for (const auto& turn : t.turns()) ++counts[turn.speaker];
  return counts;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) tokens.push_back(detail::to_lower(word));
    word.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_word_char(c)) {
      word += static_cast<char>(c);
    } else if (c == '\'' && !word.empty() && i + 1 < text.size() &&
               is_word_char(static_cast<unsigned char>(text[i + 1]))) {
      word += '\'';
    } else {
      flush();
      if (!std::isspace(c)) tokens.emplace_back(1, static_cast<char>(c));
    }
  }
  flush();
  return tokens;
}

}  // namespace subgroup
