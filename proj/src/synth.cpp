#include "subgroup/synth.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "subgroup/error.hpp"
#include "subgroup/random.hpp"
#include "util.hpp"

namespace subgroup {

namespace {

constexpr int kStates = 10;

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

/// Level sizes for a group of n: roughly 1/7 heads, 2/7 middle, rest low.
std::array<std::size_t, 3> level_sizes(std::size_t n) {
  if (n == 1) return {1, 0, 0};
  if (n == 2) return {1, 1, 0};
  std::size_t head = std::max<std::size_t>(1, (n + 3) / 7);
  std::size_t mid = std::max<std::size_t>(1, (2 * n + 3) / 7);
  if (head + mid >= n) mid = n - head - 1;
  return {head, mid, n - head - mid};
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

const std::string& pick(const std::vector<std::string>& words, RandomStream& rng) {
  return words[rng.range(0, words.size() - 1)];
}

std::vector<std::string> term_words(const TermList& list, RandomStream& rng) {
  const auto& terms = list.terms();
  return terms[rng.range(0, terms.size() - 1)];
}

}  // namespace

void SynthSpec::validate() const {
  if (characters_per_group == 0) throw ConfigError("characters_per_group must be positive");
  if (!valid_probability(p_in)) throw ConfigError("p_in must lie in [0, 1]");
  if (!valid_probability(overlap)) throw ConfigError("overlap must lie in [0, 1]");
  if (conversations == 0) throw ConfigError("conversations must be positive");
  if (min_participants < 2 || max_participants < min_participants)
    throw ConfigError("participants range must satisfy 2 <= min <= max");
  if (min_turns < 2 || max_turns < min_turns)
    throw ConfigError("turn range must satisfy 2 <= min <= max");
  if (min_tokens < 1 || max_tokens < min_tokens)
    throw ConfigError("token range must satisfy 1 <= min <= max");
  if (seeds_per_class == 0 || seeds_per_class > characters_per_group)
    throw ConfigError("seeds_per_class must lie in [1, characters_per_group]");
  if (3 * characters_per_group < 2) throw ConfigError("need at least two characters");
  for (const auto& l : levels) {
    for (const double p : {l.modal, l.hedge, l.profanity, l.address, l.question, l.coordination})
      if (!valid_probability(p)) throw ConfigError("level rates must lie in [0, 1]");
    if (!(l.activity > 0.0)) throw ConfigError("level activity must be positive");
  }
}

PosTag chain_tag(int state) { return kAllPosTags[static_cast<std::size_t>(state)]; }

std::array<TagChain, 3> make_group_chains(double overlap, std::uint64_t rng_seed) {
  RandomStream rng = RandomStream(rng_seed).split("chains");
  // Each (from, to) transition has one owner: gang, police, or shared.
  std::array<Eigen::Matrix<double, kStates, kStates>, 3> blocks;
  for (auto& b : blocks) b.setZero();
  for (int i = 0; i < kStates; ++i)
    for (int j = 0; j < kStates; ++j) blocks[(i + 2 * j) % 3](i, j) = 0.25 + rng.uniform();
  for (auto& b : blocks)
    for (int i = 0; i < kStates; ++i) b.row(i) /= b.row(i).sum();

  std::array<TagChain, 3> chains;
  const auto start = Eigen::Matrix<double, kStates, 1>::Constant(1.0 / kStates);
  for (auto& c : chains) c.start = start;
  chains[index_of(Group::kGang)].transition = (1.0 - overlap) * blocks[0] + overlap * blocks[2];
  chains[index_of(Group::kPolice)].transition = (1.0 - overlap) * blocks[1] + overlap * blocks[2];
  chains[index_of(Group::kInformant)].transition =
      0.5 * (chains[0].transition + chains[1].transition);
  return chains;
}

std::map<PosTag, std::vector<std::string>> reverse_lexicon(const Tagger& tagger,
                                                           const HierarchyLexicons& lex) {
  std::map<PosTag, std::vector<std::string>> out;
  for (const PosTag tag : kAllPosTags) {
    if (tag == PosTag::kOther) continue;
    for (const auto& word : tagger.lexicon().words_with_tag(tag)) {
      const auto tokens = tokenize(word);
      if (tokens.size() != 1 || tokens[0] != word) continue;
      if (tagger.tag_word(word) != tag || lex.mentions(word)) continue;
      out[tag].push_back(word);
    }
    if (out[tag].empty())
      throw DataError("lexicon has no renderable word for " + std::string(to_string(tag)));
  }
  return out;
}

SynthCorpus generate_synthetic_corpus(const SynthSpec& spec, const Tagger& tagger,
                                      const HierarchyLexicons& lex) {
  spec.validate();
  for (const auto* list : {&lex.modals, &lex.hedges, &lex.profanity, &lex.address})
    if (list->terms().empty()) throw ConfigError("hierarchy lexicons must be non-empty");

  const RandomStream root(spec.rng_seed);
  SynthCorpus corpus;
  corpus.chains = make_group_chains(spec.overlap, spec.rng_seed);
  const auto words = reverse_lexicon(tagger, lex);

  // Characters: neutral names in shuffled order, so names carry no group.
  const std::size_t per_group = spec.characters_per_group;
  const std::size_t total = 3 * per_group;
  std::vector<std::size_t> name_order(total);
  std::iota(name_order.begin(), name_order.end(), 1);
  {
    RandomStream rng = root.split("names");
    for (std::size_t i = total; i > 1; --i) std::swap(name_order[i - 1], name_order[rng.range(0, i - 1)]);
  }
  const int width = total >= 100 ? 3 : 2;
  auto make_name = [&](std::size_t k) {
    std::string digits = std::to_string(k);
    return "C" + std::string(static_cast<std::size_t>(width) - std::min<std::size_t>(digits.size(), width), '0') + digits;
  };

  RandomStream activity_rng = root.split("activity");
  const auto sizes = level_sizes(per_group);
  for (const Group g : kAllGroups) {
    std::vector<SynthCharacter> members;
    std::size_t slot = 0;
    for (int level = 0; level < 3; ++level)
      for (std::size_t k = 0; k < sizes[static_cast<std::size_t>(level)]; ++k, ++slot) {
        SynthCharacter c{CharacterId(make_name(name_order[index_of(g) * per_group + slot])), g, level};
        c.activity = spec.levels[static_cast<std::size_t>(level)].activity *
                     (0.8 + 0.4 * activity_rng.uniform());
        members.push_back(std::move(c));
      }
    std::stable_sort(members.begin(), members.end(), [](const auto& x, const auto& y) {
      return x.level != y.level ? x.level < y.level : x.name < y.name;
    });
    for (std::size_t r = 0; r < members.size(); ++r) {
      members[r].rank = static_cast<int>(r) + 1;
      if (g != Group::kInformant && r < spec.seeds_per_class) corpus.seeds.emplace(members[r].name, g);
      corpus.characters.push_back(std::move(members[r]));
    }
  }

  std::array<std::vector<std::size_t>, 3> by_group;
  for (std::size_t i = 0; i < corpus.characters.size(); ++i)
    by_group[index_of(corpus.characters[i].group)].push_back(i);

  RandomStream conv_rng = root.split("conversations");
  RandomStream text_rng = root.split("text");

  auto render_turn = [&](const SynthCharacter& who, const std::vector<PosTag>* prompt_tags,
                         std::vector<PosTag>& tags_out) {
    const auto& chain = corpus.chains[index_of(who.group)];
    const auto& rates = spec.levels[static_cast<std::size_t>(who.level)];
    const std::size_t length = text_rng.range(spec.min_tokens, spec.max_tokens);

    std::vector<std::string> body;
    std::vector<PosTag> tags;
    int state = static_cast<int>(text_rng.categorical(chain.start));
    for (std::size_t k = 0; k < length; ++k) {
      if (k > 0) state = static_cast<int>(text_rng.categorical(chain.transition.row(state).transpose()));
      tags.push_back(chain_tag(state));
      body.push_back(pick(words.at(chain_tag(state)), text_rng));
    }

    std::vector<std::string> out;
    if (text_rng.bernoulli(rates.profanity)) {
      for (auto& w : term_words(lex.profanity, text_rng)) out.push_back(std::move(w));
      out.push_back(",");
    }
    if (text_rng.bernoulli(rates.hedge)) {
      for (auto& w : term_words(lex.hedges, text_rng)) out.push_back(std::move(w));
      out.push_back(",");
    }
    if (text_rng.bernoulli(rates.modal)) {
      for (auto& w : term_words(lex.modals, text_rng)) out.push_back(std::move(w));
    }
    out.insert(out.end(), body.begin(), body.end());

    if (prompt_tags) {
      for (const PosTag marker : {PosTag::kDeterminer, PosTag::kPronoun, PosTag::kPreposition,
                                  PosTag::kConjunction}) {
        const bool in_prompt = std::find(prompt_tags->begin(), prompt_tags->end(), marker) != prompt_tags->end();
        const bool in_reply = std::find(tags.begin(), tags.end(), marker) != tags.end();
        if (in_prompt && !in_reply && text_rng.bernoulli(rates.coordination)) {
          out.push_back(pick(words.at(marker), text_rng));
          tags.push_back(marker);
        }
      }
    }
    if (text_rng.bernoulli(rates.address)) {
      out.push_back(",");
      for (auto& w : term_words(lex.address, text_rng)) out.push_back(std::move(w));
    }
    out.push_back(text_rng.bernoulli(rates.question) ? "?" : ".");
    tags_out = std::move(tags);
    return join_tokens(out);
  };

  std::string text;
  std::vector<std::size_t> turns_of(corpus.characters.size(), 0);

  auto emit_conversation = [&](const std::vector<std::size_t>& participants, std::size_t turns) {
    if (!text.empty()) text += '\n';
    Eigen::VectorXd weights(static_cast<Eigen::Index>(participants.size()));
    for (std::size_t i = 0; i < participants.size(); ++i)
      weights(static_cast<Eigen::Index>(i)) = corpus.characters[participants[i]].activity;
    std::size_t current = participants.size();
    std::vector<PosTag> prompt;
    for (std::size_t k = 0; k < turns; ++k) {
      Eigen::VectorXd w = weights;
      if (current < participants.size()) w(static_cast<Eigen::Index>(current)) = 0.0;
      current = conv_rng.categorical(w);
      const auto& who = corpus.characters[participants[current]];
      std::vector<PosTag> tags;
      const auto line = render_turn(who, k == 0 ? nullptr : &prompt, tags);
      text += who.name.str() + ": " + line + "\n";
      ++turns_of[participants[current]];
      prompt = std::move(tags);
    }
  };

  for (std::size_t c = 0; c < spec.conversations; ++c) {
    const auto home = conv_rng.range(0, 2);
    const std::size_t want = std::min(total, conv_rng.range(spec.min_participants, spec.max_participants));
    std::vector<std::size_t> participants;
    std::set<std::size_t> used;
    while (participants.size() < want) {
      std::size_t g = home;
      if (!conv_rng.bernoulli(spec.p_in)) g = (home + 1 + conv_rng.range(0, 1)) % 3;
      std::vector<std::size_t> pool;
      for (const auto i : by_group[g])
        if (!used.contains(i)) pool.push_back(i);
      if (pool.empty())
        for (std::size_t i = 0; i < total; ++i)
          if (!used.contains(i)) pool.push_back(i);
      Eigen::VectorXd w(static_cast<Eigen::Index>(pool.size()));
      for (std::size_t i = 0; i < pool.size(); ++i)
        w(static_cast<Eigen::Index>(i)) = corpus.characters[pool[i]].activity;
      const auto chosen = pool[conv_rng.categorical(w)];
      used.insert(chosen);
      participants.push_back(chosen);
    }
    emit_conversation(participants, conv_rng.range(spec.min_turns, spec.max_turns));
  }

  // Anyone who never spoke gets a short exchange with a groupmate.
  for (std::size_t i = 0; i < total; ++i) {
    if (turns_of[i] > 0) continue;
    const auto& mates = by_group[index_of(corpus.characters[i].group)];
    std::size_t partner = i;
    for (const auto m : mates)
      if (m != i) {
        partner = m;
        break;
      }
    if (partner == i) partner = (i + 1) % total;
    emit_conversation({i, partner}, spec.min_turns);
  }

  for (std::size_t i = 0; i < total; ++i) corpus.characters[i].planted_turns = turns_of[i];
  corpus.transcript_text = std::move(text);
  return corpus;
}

std::map<CharacterId, Group> SynthCorpus::gold_labels() const {
  std::map<CharacterId, Group> out;
  for (const auto& c : characters) out.emplace(c.name, c.group);
  return out;
}

std::map<CharacterId, std::size_t> SynthCorpus::planted_counts() const {
  std::map<CharacterId, std::size_t> out;
  for (const auto& c : characters)
    if (c.planted_turns > 0) out.emplace(c.name, c.planted_turns);
  return out;
}

std::vector<Ranking> SynthCorpus::gold_rankings() const {
  std::vector<Ranking> out;
  for (const Group g : kAllGroups) {
    std::vector<const SynthCharacter*> members;
    for (const auto& c : characters)
      if (c.group == g) members.push_back(&c);
    std::sort(members.begin(), members.end(), [](auto* x, auto* y) { return x->rank < y->rank; });
    Ranking r;
    r.group = std::string(to_string(g));
    for (const auto* m : members) {
      r.members.push_back(m->name);
      r.scores.push_back(static_cast<double>(members.size()) - m->rank + 1);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string SynthCorpus::gold_labels_csv() const {
  std::string out;
  for (const auto& [id, g] : gold_labels()) out += id.str() + "," + std::string(to_string(g)) + "\n";
  return out;
}

std::string SynthCorpus::gold_hierarchy_csv() const {
  std::string out;
  for (const auto& c : characters)
    out += c.name.str() + "," + std::string(to_string(c.group)) + "," + std::to_string(c.level) +
           "," + std::to_string(c.rank) + "\n";
  return out;
}

std::string SynthCorpus::seeds_csv() const {
  std::string out;
  for (const auto& [id, g] : seeds) out += id.str() + "," + std::string(to_string(g)) + "\n";
  return out;
}

std::vector<Ranking> parse_gold_hierarchy(std::string_view csv) {
  std::map<std::string, std::vector<std::pair<int, CharacterId>>> groups;
  std::vector<std::string> group_order;
  const auto lines = detail::split_lines(csv);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = detail::strip_comment(lines[n]);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line, ',');
    if (groups.empty() && detail::is_header_row(fields)) continue;
    if (fields.size() != 3 && fields.size() != 4)
      throw ParseError(n + 1, "expected 'NAME,GROUP,LEVEL,RANK'");
    int rank = 0;
    try {
      rank = static_cast<int>(detail::parse_int(fields.back(), "rank"));
    } catch (const ConfigError&) {
      throw ParseError(n + 1, "invalid rank '" + std::string(fields.back()) + "'");
    }
    const std::string group = detail::to_upper(fields[1]);
    if (group.empty()) throw ParseError(n + 1, "empty group");
    if (!groups.contains(group)) group_order.push_back(group);
    groups[group].emplace_back(rank, CharacterId(fields[0]));
  }
  std::vector<Ranking> out;
  for (const auto& name : group_order) {
    auto members = groups[name];
    std::sort(members.begin(), members.end());
    Ranking r;
    r.group = name;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members[k].first != static_cast<int>(k) + 1)
        throw DataError("gold ranks for " + name + " must be 1..n without gaps");
      r.members.push_back(members[k].second);
      r.scores.push_back(static_cast<double>(members.size() - k));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Ranking> load_gold_hierarchy(const std::string& path) {
  try {
    return parse_gold_hierarchy(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

}  // namespace subgroup
