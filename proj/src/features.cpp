#include "subgroup/features.hpp"

#include <algorithm>
#include <iterator>
#include <vector>

#include "subgroup/error.hpp"
#include "util.hpp"

namespace subgroup {

namespace {

bool all_other(std::span<const PosTag> tags) {
  return std::all_of(tags.begin(), tags.end(), [](PosTag t) { return t == PosTag::kOther; });
}

}  // namespace

std::string PosGram::str() const {
  std::string out;
  for (const PosTag t : view()) {
    if (!out.empty()) out += '+';
    out += to_string(t);
  }
  return out;
}

GramCounts turn_grams(std::span<const TaggedToken> tokens, const GramConfig& config) {
  GramCounts counts;
  const std::size_t n = tokens.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (config.bigrams) {
      const auto g = PosGram::bigram(tokens[i].tag, tokens[i + 1].tag);
      if (!all_other(g.view())) ++counts[g];
    }
    if (config.trigrams && i + 2 < n) {
      const auto g = PosGram::trigram(tokens[i].tag, tokens[i + 1].tag, tokens[i + 2].tag);
      if (!all_other(g.view())) ++counts[g];
    }
  }
  return counts;
}

GramCounts extract_character_features(const Transcript& t, const CharacterId& c,
                                      const Tagger& tagger, const GramConfig& config) {
  if (!t.contains(c)) throw DataError("character '" + c.str() + "' not in transcript");
  GramCounts total;
  for (const auto& turn : t.turns()) {
    if (turn.speaker != c) continue;
    const auto tokens = tagged_tokens(turn, t.format(), tagger);
    for (const auto& [gram, n] : turn_grams(tokens, config)) total[gram] += n;
  }
  return total;
}

SeedLabels parse_seed_labels(std::string_view csv) {
  SeedLabels seeds;
  const auto lines = detail::split_lines(csv);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = detail::strip_comment(lines[n]);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line, ',');
    if (seeds.empty() && detail::is_header_row(fields)) continue;
    if (fields.size() != 2) throw ParseError(n + 1, "expected 'NAME,GANG|POLICE'");
    const auto group = parse_group(fields[1]);
    if (!group) throw ParseError(n + 1, "unknown group '" + std::string(fields[1]) + "'");
    if (*group == Group::kInformant) throw ParseError(n + 1, "seeds must be GANG or POLICE");
    const CharacterId id(fields[0]);
    const auto [it, fresh] = seeds.emplace(id, *group);
    if (!fresh && it->second != *group)
      throw ParseError(n + 1, "conflicting labels for '" + id.str() + "'");
  }
  return seeds;
}

SeedLabels load_seed_labels(const std::string& path) {
  try {
    return parse_seed_labels(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

SeedSpaces build_seed_spaces(const std::map<CharacterId, GramCounts>& features,
                             const SeedLabels& labels, std::size_t min_count) {
  GramCounts police_total, gang_total;
  std::size_t police_seeds = 0, gang_seeds = 0;
  for (const auto& [id, group] : labels) {
    const auto it = features.find(id);
    if (it == features.end()) throw DataError("seed '" + id.str() + "' has no turns");
    auto& target = group == Group::kPolice ? police_total : gang_total;
    (group == Group::kPolice ? police_seeds : gang_seeds) += 1;
    for (const auto& [gram, n] : it->second) target[gram] += n;
  }
  if (police_seeds == 0) throw DataError("no POLICE seed characters");
  if (gang_seeds == 0) throw DataError("no GANG seed characters");

  SeedSpaces spaces;
  for (const auto& [gram, n] : police_total)
    if (n >= min_count) spaces.police.insert(gram);
  for (const auto& [gram, n] : gang_total)
    if (n >= min_count) spaces.gang.insert(gram);
  return spaces;
}

std::pair<GramSet, GramSet> orthogonalize(const GramSet& initial_police,
                                          const GramSet& initial_gang) {
  GramSet police, gang;
  std::set_difference(initial_police.begin(), initial_police.end(), initial_gang.begin(),
                      initial_gang.end(), std::inserter(police, police.end()));
  std::set_difference(initial_gang.begin(), initial_gang.end(), initial_police.begin(),
                      initial_police.end(), std::inserter(gang, gang.end()));
  if (police.empty() || gang.empty())
    throw DataError("groups linguistically indistinguishable under current config");
  return {std::move(police), std::move(gang)};
}

AbCounts count_ab(const GramCounts& features, const GramSet& police, const GramSet& gang) {
  AbCounts out;
  for (const auto& [gram, n] : features) {
    if (gang.contains(gram)) out.gang += n;
    else if (police.contains(gram)) out.police += n;
  }
  return out;
}

DMode DMode::parse(std::string_view text) {
  text = detail::trim(text);
  if (text == "normalized") return normalized();
  if (text == "raw_scaled") return raw_scaled(15.0);
  if (text.starts_with("raw_scaled:")) {
    const double s = detail::parse_double(text.substr(11), "d-mode scale");
    if (s == 0.0) throw ConfigError("raw_scaled scale must be non-zero");
    return raw_scaled(s);
  }
  throw ConfigError("unknown d-mode '" + std::string(text) + "'");
}

std::string DMode::str() const {
  if (kind == Kind::kNormalized) return "normalized";
  return "raw_scaled:" + detail::format_double(scale);
}

Eigen::Vector3d ab_vector(const AbCounts& counts, const DMode& mode) {
  if (mode.kind == DMode::Kind::kRawScaled && mode.scale == 0.0)
    throw ConfigError("raw_scaled scale must be non-zero");
  const auto total = counts.gang + counts.police;
  if (total == 0) return {0.5, 0.5, 0.0};
  const double a = static_cast<double>(counts.gang) / static_cast<double>(total);
  const double b = static_cast<double>(counts.police) / static_cast<double>(total);
  const double diff = static_cast<double>(counts.gang) - static_cast<double>(counts.police);
  const double d = mode.kind == DMode::Kind::kNormalized ? diff / static_cast<double>(total)
                                                         : diff / mode.scale;
  return {a, b, d};
}

CharacterFeatureStats make_stats(const AbCounts& counts, const DMode& mode) {
  CharacterFeatureStats s;
  s.counts = counts;
  s.x = ab_vector(counts, mode);
  s.a_ratio = s.x(0);
  s.b_ratio = s.x(1);
  s.d = s.x(2);
  return s;
}

FeatureAnalysis analyze_features(const Transcript& t, const SeedLabels& seeds,
                                 const Tagger& tagger, const FeatureOptions& options,
                                 unsigned jobs) {
  const auto& chars = t.characters();

  // Tagging each turn once, then bucketing by speaker.
  std::vector<GramCounts> per_turn(t.turns().size());
  detail::parallel_for(per_turn.size(), jobs, [&](std::size_t i) {
    const auto& turn = t.turns()[i];
    per_turn[i] = turn_grams(tagged_tokens(turn, t.format(), tagger), options.grams);
  });

  FeatureAnalysis out;
  for (const auto& c : chars) out.grams[c];
  for (std::size_t i = 0; i < per_turn.size(); ++i) {
    auto& bucket = out.grams[t.turns()[i].speaker];
    for (const auto& [gram, n] : per_turn[i]) bucket[gram] += n;
  }

  auto spaces = build_seed_spaces(out.grams, seeds, options.min_count);
  out.space.initial_police = std::move(spaces.police);
  out.space.initial_gang = std::move(spaces.gang);
  std::tie(out.space.police, out.space.gang) =
      orthogonalize(out.space.initial_police, out.space.initial_gang);

  for (const auto& c : chars)
    out.stats[c] = make_stats(count_ab(out.grams[c], out.space.police, out.space.gang),
                              options.d_mode);
  return out;
}

}  // namespace subgroup
