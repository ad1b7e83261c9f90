#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "subgroup/error.hpp"
#include "subgroup/ranking.hpp"
#include "subgroup/synth.hpp"

using namespace subgroup;

namespace {

/// Pearson correlation of the two position vectors.
double spearman(const std::vector<int>& r, const std::vector<int>& e) {
  const double n = static_cast<double>(r.size());
  const double mr = std::accumulate(r.begin(), r.end(), 0.0) / n;
  const double me = std::accumulate(e.begin(), e.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    sxy += (r[k] - mr) * (e[k] - me);
    sxx += (r[k] - mr) * (r[k] - mr);
    syy += (e[k] - me) * (e[k] - me);
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<int> iota_from_one(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::map<CharacterId, HierarchyFeatures> feats(
    std::initializer_list<std::pair<const char*, HierarchyFeatures>> items) {
  std::map<CharacterId, HierarchyFeatures> out;
  for (const auto& [n, f] : items) out.emplace(CharacterId(n), f);
  return out;
}

}  // namespace

TEST_CASE("ranking error arithmetic") {
  CHECK(ranking_error(std::vector<int>{1, 2, 3}, std::vector<int>{1, 2, 3}) == 0.0);
  CHECK(ranking_error(std::vector<int>{1, 2, 3}, std::vector<int>{3, 2, 1}) == 1.0);
  CHECK(ranking_error(std::vector<int>{1, 2, 3}, std::vector<int>{2, 1, 3}) == 0.25);
  CHECK_THROWS_AS(ranking_error(std::vector<int>{1}, std::vector<int>{1}), DataError);
  CHECK_THROWS_AS(ranking_error(std::vector<int>{1, 2}, std::vector<int>{1, 2, 3}), DataError);
  CHECK_THROWS_AS(ranking_error(std::vector<int>{1, 1}, std::vector<int>{1, 2}), DataError);
  CHECK_THROWS_AS(ranking_error(std::vector<int>{0, 1}, std::vector<int>{1, 2}), DataError);
}

TEST_CASE("ranking error matches one minus spearman over two") {
  std::mt19937 gen(12);
  for (int n = 2; n <= 30; ++n) {
    for (int k = 0; k < 20; ++k) {
      auto r = iota_from_one(n), e = iota_from_one(n);
      std::shuffle(r.begin(), r.end(), gen);
      std::shuffle(e.begin(), e.end(), gen);
      const double err = ranking_error(r, e);
      CHECK(err >= 0.0);
      CHECK(err <= 1.0);
      CHECK(err == doctest::Approx((1.0 - spearman(r, e)) / 2).epsilon(1e-12));
    }
  }
}

TEST_CASE("ranking objects compare by member position") {
  Ranking gold{"GANG", {CharacterId("A"), CharacterId("B"), CharacterId("C")}, {3, 2, 1}};
  Ranking got{"GANG", {CharacterId("B"), CharacterId("A"), CharacterId("C")}, {3, 2, 1}};
  CHECK(ranking_error(gold, got) == 0.25);
  CHECK(got.position_of(CharacterId("A")) == 2);
  Ranking other{"GANG", {CharacterId("A"), CharacterId("B"), CharacterId("Z")}, {3, 2, 1}};
  CHECK_THROWS_AS(ranking_error(gold, other), DataError);
}

TEST_CASE("influence ranking") {
  SUBCASE("largest count first") {
    const std::map<CharacterId, std::size_t> counts{
        {CharacterId("McNulty"), 373}, {CharacterId("Bunk"), 238}, {CharacterId("Omar"), 120},
        {CharacterId("Stringer"), 200}};
    const auto rep = influence_ranking(counts, {{CharacterId("MCNULTY"), "POLICE"}});
    CHECK(rep.members.front().name == CharacterId("MCNULTY"));
    CHECK(rep.members.front().affiliation == "POLICE");
    CHECK(rep.members.back().affiliation == "UNKNOWN");
    CHECK(rep.total_comments == 931);
  }
  SUBCASE("single character") {
    const auto rep = influence_ranking({{CharacterId("A"), 4}}, {});
    CHECK(rep.members.size() == 1);
    CHECK(rep.coverage == 1.0);
  }
  SUBCASE("uniform counts") {
    std::map<CharacterId, std::size_t> counts;
    for (int i = 0; i < 10; ++i) counts[CharacterId("C" + std::to_string(i))] = 7;
    const auto rep = influence_ranking(counts, {}, 0.9);
    CHECK(rep.members.size() == 9);
    CHECK(rep.coverage == doctest::Approx(0.9));
    CHECK(rep.members.front().name == CharacterId("C0"));  // ties by name
    CHECK(influence_ranking(counts, {}, 1.0).members.size() == 10);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(influence_ranking({{CharacterId("A"), 1}}, {}, 0.0), ConfigError);
    CHECK_THROWS_AS(influence_ranking({{CharacterId("A"), 1}}, {}, 1.01), ConfigError);
    CHECK_THROWS_AS(influence_ranking({}, {}), DataError);
  }
  SUBCASE("csv layout") {
    const auto rep = influence_ranking({{CharacterId("A"), 3}, {CharacterId("B"), 1}},
                                       {{CharacterId("A"), "GANG"}}, 0.5);
    CHECK(influence_to_csv(rep) == "member,affiliation,comments\nA,GANG,3\n");
  }
}

TEST_CASE("hierarchy features of one utterance") {
  const auto t = parse_transcript("A: Would you maybe go?\n");
  const auto f = hierarchy_features(t, CharacterId("A"), Tagger(), HierarchyLexicons::builtin());
  CHECK(f.modal_verbs >= 1);
  CHECK(f.hedges >= 1);
  CHECK(f.questions == 1);
  CHECK(f.coordination == 0.0);  // nobody spoke before A
}

TEST_CASE("coordination counts shared marker categories") {
  // Prompt: DET, PRONOUN, PREP. Reply: DET, PREP, CONJ. Shared: 2 of 4.
  const auto t = parse_transcript("A: the dog sat with me\nB: the cat and the rat from here\n");
  const auto f = hierarchy_features(t, CharacterId("B"), Tagger(), HierarchyLexicons::builtin());
  CHECK(f.coordination == doctest::Approx(0.5));
  CHECK(is_coordination_marker(PosTag::kConjunction));
  CHECK_FALSE(is_coordination_marker(PosTag::kNoun));
}

TEST_CASE("multiword lexicon terms and custom lists") {
  auto hedges = TermList::parse("# hedges\nsort of\nmaybe\n");
  CHECK(hedges.terms().size() == 2);
  const std::vector<std::string> tokens{"it", "is", "sort", "of", "maybe", "sort"};
  CHECK(hedges.count_in(tokens) == 2);
  CHECK(hedges.contains("sort"));
  const auto& lex = HierarchyLexicons::builtin();
  CHECK(lex.modals.contains("would"));
  CHECK(lex.hedges.contains("maybe"));
  CHECK_FALSE(lex.profanity.terms().empty());
  CHECK_FALSE(lex.address.terms().empty());
}

TEST_CASE("all characters at once agrees with one at a time") {
  const auto corpus = generate_synthetic_corpus(SynthSpec{});
  const auto t = parse_transcript(corpus.transcript_text);
  const Tagger tagger;
  const auto& lex = HierarchyLexicons::builtin();
  const auto all = all_hierarchy_features(t, tagger, lex, 3);
  for (const auto& c : t.characters()) {
    const auto one = hierarchy_features(t, c, tagger, lex);
    CHECK(all.at(c).as_vector() == one.as_vector());
    CHECK(one.coordination >= 0.0);
    CHECK(one.coordination <= 1.0);
  }
}

TEST_CASE("hierarchy rank") {
  HierarchyFeatures strong{0.9, 5, 5, 5, 5, 5}, weak{0.1, 1, 1, 1, 1, 1};
  SUBCASE("dominance") {
    const auto f = feats({{"LOW", weak}, {"TOP", strong}});
    const std::vector<CharacterId> members{CharacterId("LOW"), CharacterId("TOP")};
    const auto r = hierarchy_rank("GANG", members, f);
    CHECK(r.members.front() == CharacterId("TOP"));
    CHECK(r.scores.front() > r.scores.back());
  }
  SUBCASE("identical features tie by name with zero scores") {
    const auto f = feats({{"B", weak}, {"A", weak}});
    const std::vector<CharacterId> members{CharacterId("B"), CharacterId("A")};
    const auto r = hierarchy_rank("POLICE", members, f);
    CHECK(r.members.front() == CharacterId("A"));
    CHECK(r.scores == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("positive weight scaling keeps the order") {
    std::mt19937 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> c(0, 20);
    std::map<CharacterId, HierarchyFeatures> f;
    std::vector<CharacterId> members;
    for (int i = 0; i < 12; ++i) {
      const CharacterId id("M" + std::to_string(i));
      f[id] = HierarchyFeatures{u(gen), c(gen), c(gen), c(gen), c(gen), c(gen)};
      members.push_back(id);
    }
    for (int k = 0; k < 20; ++k) {
      HierarchyVector w;
      for (int j = 0; j < kHierarchyFeatureCount; ++j) w(j) = u(gen) - 0.3;
      const auto base = hierarchy_rank("G", members, f, w);
      for (const double s : {0.5, 3.0, 1000.0}) CHECK(hierarchy_rank("G", members, f, s * w).members == base.members);
    }
  }
  SUBCASE("needs two members") {
    const auto f = feats({{"A", weak}});
    const std::vector<CharacterId> one{CharacterId("A")};
    CHECK_THROWS_AS(hierarchy_rank("G", one, f), DataError);
  }
}
