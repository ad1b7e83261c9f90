#include <doctest.h>

#include <random>

#include "subgroup/error.hpp"
#include "subgroup/features.hpp"
#include "subgroup/synth.hpp"
#include "support.hpp"

using namespace subgroup;
using enum PosTag;

namespace {

std::vector<TaggedToken> tagged(std::initializer_list<PosTag> tags) {
  std::vector<TaggedToken> out;
  for (const auto t : tags) out.push_back({"w", t});
  return out;
}

/// Pretagged transcript whose single speaker says each tag sequence as a turn.
Transcript pretagged(const std::vector<std::pair<std::string, std::vector<PosTag>>>& turns) {
  std::string text;
  for (const auto& [who, tags] : turns) {
    text += who + ":";
    for (const auto t : tags) text += " w_" + std::string(to_string(t));
    text += "\n";
  }
  ParseOptions opts;
  opts.format = TranscriptFormat::kPretagged;
  return parse_transcript(text, opts);
}

/// Recount of A and B straight from the tag stream, windowing every turn
/// of `who` and testing each window against the reduced sets.
AbCounts scan_ab(const Transcript& t, const CharacterId& who, const Tagger& tagger,
                 const GramSet& police, const GramSet& gang) {
  AbCounts out;
  for (const auto& turn : t.turns()) {
    if (turn.speaker != who) continue;
    std::vector<PosTag> tags;
    for (const auto& tok : tagged_tokens(turn, t.format(), tagger)) tags.push_back(tok.tag);
    for (std::size_t len = 2; len <= 3; ++len) {
      for (std::size_t i = 0; i + len <= tags.size(); ++i) {
        PosGram g = len == 2 ? PosGram::bigram(tags[i], tags[i + 1])
                             : PosGram::trigram(tags[i], tags[i + 1], tags[i + 2]);
        if (gang.count(g)) ++out.gang;
        if (police.count(g)) ++out.police;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("grams within one turn") {
  const GramConfig bigrams_only{true, false};
  const auto g = turn_grams(tagged({kDeterminer, kNoun, kVerb}), bigrams_only);
  CHECK(g == GramCounts{{PosGram::bigram(kDeterminer, kNoun), 1}, {PosGram::bigram(kNoun, kVerb), 1}});

  const auto both = turn_grams(tagged({kDeterminer, kNoun, kVerb}), GramConfig{});
  CHECK(both.size() == 3);
  CHECK(both.at(PosGram::trigram(kDeterminer, kNoun, kVerb)) == 1);

  // All-OTHER grams are dropped; mixed ones stay.
  const auto punct = turn_grams(tagged({kOther, kOther, kNoun}), GramConfig{});
  CHECK(punct.count(PosGram::bigram(kOther, kOther)) == 0);
  CHECK(punct.count(PosGram::bigram(kOther, kNoun)) == 1);
  CHECK(punct.count(PosGram::trigram(kOther, kOther, kNoun)) == 1);
}

TEST_CASE("no grams across turns") {
  const auto t = pretagged({{"A", {kDeterminer, kNoun}}, {"B", {kVerb}}, {"A", {kDeterminer, kNoun}}});
  const auto g = extract_character_features(t, CharacterId("A"), Tagger(), GramConfig{true, false});
  CHECK(g == GramCounts{{PosGram::bigram(kDeterminer, kNoun), 2}});
  CHECK_THROWS_AS(extract_character_features(t, CharacterId("Z"), Tagger(), GramConfig{}), DataError);
}

TEST_CASE("gram names") {
  CHECK(PosGram::bigram(kDeterminer, kNoun).str() == "DETERMINER+NOUN");
  CHECK(PosGram::trigram(kPronoun, kAuxVerb, kVerb).str() == "PRONOUN+AUX_VERB+VERB");
}

TEST_CASE("seed spaces use a summed threshold") {
  const auto dn = PosGram::bigram(kDeterminer, kNoun);
  const auto vp = PosGram::bigram(kVerb, kPronoun);
  const std::map<CharacterId, GramCounts> feats{
      {CharacterId("P1"), {{dn, 3}}}, {CharacterId("P2"), {{dn, 2}, {vp, 1}}},
      {CharacterId("G1"), {{vp, 5}}}};
  const SeedLabels seeds{{CharacterId("P1"), Group::kPolice},
                         {CharacterId("P2"), Group::kPolice},
                         {CharacterId("G1"), Group::kGang}};
  const auto s = build_seed_spaces(feats, seeds, 2);
  CHECK(s.police == GramSet{dn});
  CHECK(s.gang == GramSet{vp});

  // A gram shown by both classes lands in both initial sets.
  const auto both = build_seed_spaces(feats, seeds, 1);
  CHECK(both.police == GramSet{dn, vp});
  CHECK(both.gang == GramSet{vp});

  const auto empty = build_seed_spaces(feats, seeds, 100);
  CHECK(empty.police.empty());
  CHECK(empty.gang.empty());
  CHECK_THROWS_AS(orthogonalize(empty.police, empty.gang), DataError);

  CHECK_THROWS_AS(build_seed_spaces(feats, {{CharacterId("P1"), Group::kPolice}}, 1), DataError);
}

TEST_CASE("orthogonalize is a two-sided set difference") {
  const auto a = PosGram::bigram(kNoun, kVerb), b = PosGram::bigram(kVerb, kNoun),
             c = PosGram::bigram(kNoun, kNoun), d = PosGram::bigram(kVerb, kVerb);
  const auto [fp, fg] = orthogonalize({a, b, c}, {c, d});
  CHECK(fp == GramSet{a, b});
  CHECK(fg == GramSet{d});
  const auto [p2, g2] = orthogonalize({a}, {b});
  CHECK(p2 == GramSet{a});
  CHECK(g2 == GramSet{b});
  CHECK_THROWS_AS(orthogonalize({a, b}, {a, b}), DataError);
}

TEST_CASE("count_ab and ab_vector arithmetic") {
  const auto a = PosGram::bigram(kNoun, kVerb), b = PosGram::bigram(kVerb, kNoun);
  CHECK(count_ab({{a, 4}, {b, 12}}, {a}, {b}) == AbCounts{12, 4});
  CHECK(count_ab({{PosGram::bigram(kNoun, kNoun), 9}}, {a}, {b}) == AbCounts{0, 0});

  const auto x = ab_vector({12, 4}, DMode::normalized());
  CHECK(x(0) == doctest::Approx(0.75));
  CHECK(x(1) == doctest::Approx(0.25));
  CHECK(x(2) == doctest::Approx(0.5));
  CHECK(ab_vector({15, 0}, DMode::raw_scaled(15)) == Eigen::Vector3d(1, 0, 1));
  CHECK(ab_vector({0, 0}, DMode::normalized()) == Eigen::Vector3d(0.5, 0.5, 0));
  CHECK_THROWS_AS(ab_vector({1, 1}, DMode::raw_scaled(0)), ConfigError);
}

TEST_CASE("d-mode parsing") {
  CHECK(DMode::parse("normalized").kind == DMode::Kind::kNormalized);
  CHECK(DMode::parse("raw_scaled").scale == 15.0);
  CHECK(DMode::parse("raw_scaled:4").scale == 4.0);
  CHECK_THROWS_AS(DMode::parse("raw_scaled:0"), ConfigError);
  CHECK_THROWS_AS(DMode::parse("cubic"), ConfigError);
}

TEST_CASE("ratios form a simplex edge on random counts") {
  std::mt19937 gen(3);
  std::uniform_int_distribution<std::size_t> count(0, 50);
  for (int i = 0; i < 500; ++i) {
    const AbCounts c{count(gen), count(gen)};
    const auto s = make_stats(c, DMode::normalized());
    CHECK(s.x.allFinite());
    CHECK(s.a_ratio >= 0.0);
    CHECK(s.b_ratio <= 1.0);
    CHECK(s.d >= -1.0);
    CHECK(s.d <= 1.0);
    if (c.gang + c.police > 0) CHECK(s.a_ratio + s.b_ratio == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("count_ab matches a direct scan of the tag stream") {
  SynthSpec spec;
  spec.conversations = 30;
  spec.overlap = 0.6;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    spec.rng_seed = seed;
    const auto corpus = generate_synthetic_corpus(spec);
    const auto t = parse_transcript(corpus.transcript_text);
    const Tagger tagger;
    const auto fa = analyze_features(t, corpus.seeds, tagger, FeatureOptions{});
    for (const auto& c : t.characters()) {
      const auto oracle = scan_ab(t, c, tagger, fa.space.police, fa.space.gang);
      CHECK(fa.stats.at(c).counts == oracle);
    }
  }
}

TEST_CASE("the four-speaker fixture scans consistently") {
  const auto t = parse_transcript(testing::fixture("four_speakers.txt"));
  const auto seeds = load_seed_labels(testing::fixture_path("four_speakers_seeds.csv"));
  FeatureOptions opts;
  opts.min_count = 1;
  const Tagger tagger;
  const auto fa = analyze_features(t, seeds, tagger, opts);
  for (const auto& g : fa.space.police) CHECK(fa.space.gang.count(g) == 0);
  for (const auto& c : t.characters())
    CHECK(fa.stats.at(c).counts == scan_ab(t, c, tagger, fa.space.police, fa.space.gang));
}

TEST_CASE("swapping seed labels mirrors the feature analysis") {
  SynthSpec spec;
  spec.conversations = 40;
  const auto corpus = generate_synthetic_corpus(spec);
  const auto t = parse_transcript(corpus.transcript_text);
  SeedLabels swapped;
  for (const auto& [id, g] : corpus.seeds)
    swapped.emplace(id, g == Group::kGang ? Group::kPolice : Group::kGang);
  const Tagger tagger;
  const auto fa = analyze_features(t, corpus.seeds, tagger, FeatureOptions{});
  const auto fb = analyze_features(t, swapped, tagger, FeatureOptions{});
  CHECK(fa.space.police == fb.space.gang);
  CHECK(fa.space.gang == fb.space.police);
  for (const auto& [id, s] : fa.stats) {
    const auto& m = fb.stats.at(id).x;
    CHECK(m(0) == s.x(1));
    CHECK(m(1) == s.x(0));
    CHECK(m(2) == -s.x(2));
  }
}

TEST_CASE("parallel feature analysis matches the serial one") {
  const auto corpus = generate_synthetic_corpus(SynthSpec{});
  const auto t = parse_transcript(corpus.transcript_text);
  const Tagger tagger;
  const auto serial = analyze_features(t, corpus.seeds, tagger, FeatureOptions{}, 1);
  const auto threaded = analyze_features(t, corpus.seeds, tagger, FeatureOptions{}, 4);
  CHECK(serial.space.police == threaded.space.police);
  CHECK(serial.space.gang == threaded.space.gang);
  CHECK(serial.grams == threaded.grams);
  for (const auto& [id, s] : serial.stats) CHECK(threaded.stats.at(id).x == s.x);
}

TEST_CASE("seed label files") {
  const auto seeds = parse_seed_labels("NAME,GROUP\navon, gang\nmcnulty,POLICE\n");
  CHECK(seeds.size() == 2);
  CHECK(seeds.at(CharacterId("AVON")) == Group::kGang);
  CHECK_THROWS_AS(parse_seed_labels("A,GANG\nB,INFORMANT\n"), ParseError);
  CHECK_THROWS_AS(parse_seed_labels("A,GANG\nA,POLICE\n"), ParseError);
  CHECK_THROWS_AS(parse_seed_labels("A,GANG,extra\n"), ParseError);
}
