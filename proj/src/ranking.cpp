#include "subgroup/ranking.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "subgroup/error.hpp"
#include "util.hpp"

namespace subgroup {

namespace embedded {
extern const std::string_view modals;
extern const std::string_view hedges;
extern const std::string_view profanity;
extern const std::string_view address;
}  // namespace embedded

InfluenceReport influence_ranking(const std::map<CharacterId, std::size_t>& counts,
                                  const std::map<CharacterId, std::string>& affiliations,
                                  double top_coverage) {
  if (!(top_coverage > 0.0 && top_coverage <= 1.0))
    throw ConfigError("top_coverage must lie in (0, 1]");
  if (counts.empty()) throw DataError("no comment counts");

  std::vector<std::pair<CharacterId, std::size_t>> order(counts.begin(), counts.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });

  InfluenceReport report;
  for (const auto& [id, n] : order) report.total_comments += n;
  if (report.total_comments == 0) throw DataError("no comments to rank");

  const double target = top_coverage * static_cast<double>(report.total_comments);
  std::size_t running = 0;
  for (const auto& [id, n] : order) {
    const auto it = affiliations.find(id);
    report.members.push_back({id, it == affiliations.end() ? "UNKNOWN" : it->second, n});
    running += n;
    if (static_cast<double>(running) >= target) break;
  }
  report.coverage = static_cast<double>(running) / static_cast<double>(report.total_comments);
  return report;
}

std::string influence_to_csv(const InfluenceReport& report) {
  std::string out = "member,affiliation,comments\n";
  for (const auto& e : report.members)
    out += e.name.str() + "," + e.affiliation + "," + std::to_string(e.comments) + "\n";
  return out;
}

TermList TermList::parse(std::string_view content) {
  TermList list;
  for (const auto line : detail::split_lines(content)) {
    const auto term = detail::strip_comment(line);
    if (!term.empty()) list.add(term);
  }
  return list;
}

TermList TermList::load(const std::string& path) { return parse(detail::read_file(path)); }

void TermList::add(std::string_view term) {
  auto words = tokenize(term);
  if (words.empty()) return;
  if (std::find(terms_.begin(), terms_.end(), words) == terms_.end())
    terms_.push_back(std::move(words));
}

std::size_t TermList::count_in(std::span<const std::string> tokens) const {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto& term : terms_) {
      if (i + term.size() > tokens.size()) continue;
      if (std::equal(term.begin(), term.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

bool TermList::contains(std::string_view single_word) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& term) {
    return std::find(term.begin(), term.end(), single_word) != term.end();
  });
}

const HierarchyLexicons& HierarchyLexicons::builtin() {
  static const HierarchyLexicons lex{TermList::parse(embedded::modals),
                                     TermList::parse(embedded::hedges),
                                     TermList::parse(embedded::profanity),
                                     TermList::parse(embedded::address)};
  return lex;
}

bool HierarchyLexicons::mentions(std::string_view word) const {
  return modals.contains(word) || hedges.contains(word) || profanity.contains(word) ||
         address.contains(word);
}

HierarchyVector HierarchyFeatures::as_vector() const {
  HierarchyVector v;
  v << coordination, static_cast<double>(questions), static_cast<double>(modal_verbs),
      static_cast<double>(hedges), static_cast<double>(profanity),
      static_cast<double>(terms_of_address);
  return v;
}

bool is_coordination_marker(PosTag tag) noexcept {
  return tag == PosTag::kDeterminer || tag == PosTag::kPronoun ||
         tag == PosTag::kPreposition || tag == PosTag::kConjunction;
}

namespace {

using MarkerSet = std::array<bool, 4>;

MarkerSet markers_of(const std::vector<TaggedToken>& tokens) {
  MarkerSet set{false, false, false, false};
  for (const auto& t : tokens) {
    switch (t.tag) {
      case PosTag::kDeterminer: set[0] = true; break;
      case PosTag::kPronoun: set[1] = true; break;
      case PosTag::kPreposition: set[2] = true; break;
      case PosTag::kConjunction: set[3] = true; break;
      default: break;
    }
  }
  return set;
}

std::vector<std::string> words_of(const std::vector<TaggedToken>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.token);
  return out;
}

/// Per-turn tagged tokens, computed once and reused for every character.
std::vector<std::vector<TaggedToken>> tag_all(const Transcript& t, const Tagger& tagger,
                                              unsigned jobs) {
  std::vector<std::vector<TaggedToken>> out(t.turns().size());
  detail::parallel_for(out.size(), jobs, [&](std::size_t i) {
    out[i] = tagged_tokens(t.turns()[i], t.format(), tagger);
  });
  return out;
}

HierarchyFeatures features_from_tagged(const Transcript& t, const CharacterId& c,
                                       const std::vector<std::vector<TaggedToken>>& tagged,
                                       const HierarchyLexicons& lex) {
  HierarchyFeatures f;
  double coordination_sum = 0.0;
  std::size_t coordination_pairs = 0;
  for (const auto& turn : t.turns()) {
    if (turn.speaker != c) continue;
    const auto& tokens = tagged[turn.index];
    const auto words = words_of(tokens);
    if (std::find(words.begin(), words.end(), "?") != words.end()) ++f.questions;
    f.modal_verbs += lex.modals.count_in(words);
    f.hedges += lex.hedges.count_in(words);
    f.profanity += lex.profanity.count_in(words);
    f.terms_of_address += lex.address.count_in(words);

    if (turn.index == 0) continue;
    const auto& prev = t.turns()[turn.index - 1];
    if (prev.conversation_id != turn.conversation_id || prev.speaker == c) continue;
    const auto prompt = markers_of(tagged[prev.index]);
    const auto reply = markers_of(tokens);
    int shared = 0;
    for (int k = 0; k < 4; ++k) shared += prompt[k] && reply[k];
    coordination_sum += shared / 4.0;
    ++coordination_pairs;
  }
  if (coordination_pairs > 0) f.coordination = coordination_sum / static_cast<double>(coordination_pairs);
  return f;
}

}  // namespace

HierarchyFeatures hierarchy_features(const Transcript& t, const CharacterId& c,
                                     const Tagger& tagger, const HierarchyLexicons& lex) {
  std::vector<std::vector<TaggedToken>> tagged(t.turns().size());
  for (const auto& turn : t.turns()) {
    const bool needed = turn.speaker == c ||
                        (turn.index + 1 < t.turns().size() && t.turns()[turn.index + 1].speaker == c);
    if (needed) tagged[turn.index] = tagged_tokens(turn, t.format(), tagger);
  }
  return features_from_tagged(t, c, tagged, lex);
}

std::map<CharacterId, HierarchyFeatures> all_hierarchy_features(const Transcript& t,
                                                                const Tagger& tagger,
                                                                const HierarchyLexicons& lex,
                                                                unsigned jobs) {
  const auto tagged = tag_all(t, tagger, jobs);
  const auto& chars = t.characters();
  std::vector<HierarchyFeatures> slots(chars.size());
  detail::parallel_for(chars.size(), jobs, [&](std::size_t i) {
    slots[i] = features_from_tagged(t, chars[i], tagged, lex);
  });
  std::map<CharacterId, HierarchyFeatures> out;
  for (std::size_t i = 0; i < chars.size(); ++i) out.emplace(chars[i], slots[i]);
  return out;
}

int Ranking::position_of(const CharacterId& c) const {
  const auto it = std::find(members.begin(), members.end(), c);
  if (it == members.end()) throw DataError("'" + c.str() + "' is not ranked in " + group);
  return static_cast<int>(it - members.begin()) + 1;
}

Ranking hierarchy_rank(std::string group, std::span<const CharacterId> members,
                       const std::map<CharacterId, HierarchyFeatures>& features,
                       const HierarchyVector& weights) {
  if (members.size() < 2) throw DataError("hierarchy undefined for fewer than two members");
  const auto n = static_cast<Eigen::Index>(members.size());
  Eigen::Matrix<double, Eigen::Dynamic, kHierarchyFeatureCount> table(n, kHierarchyFeatureCount);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto it = features.find(members[static_cast<std::size_t>(i)]);
    if (it == features.end())
      throw DataError("no hierarchy features for '" + members[static_cast<std::size_t>(i)].str() + "'");
    table.row(i) = it->second.as_vector().transpose();
  }

  // z-scores with the population deviation; constant columns score zero.
  const Eigen::Matrix<double, 1, kHierarchyFeatureCount> mean = table.colwise().mean();
  table.rowwise() -= mean;
  for (int k = 0; k < kHierarchyFeatureCount; ++k) {
    const double sd = std::sqrt(table.col(k).squaredNorm() / static_cast<double>(n));
    if (sd > 1e-12) table.col(k) /= sd;
    else table.col(k).setZero();
  }
  const Eigen::VectorXd scores = table * weights;

  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double sx = scores(static_cast<Eigen::Index>(x));
    const double sy = scores(static_cast<Eigen::Index>(y));
    if (sx != sy) return sx > sy;
    return members[x] < members[y];
  });

  Ranking r;
  r.group = std::move(group);
  for (const auto i : order) {
    r.members.push_back(members[i]);
    r.scores.push_back(scores(static_cast<Eigen::Index>(i)));
  }
  return r;
}

double ranking_error(std::span<const int> actual, std::span<const int> obtained) {
  const std::size_t n = actual.size();
  if (n != obtained.size()) throw DataError("rankings differ in length");
  if (n < 2) throw DataError("ranking error needs n > 1");
  auto is_permutation = [n](std::span<const int> p) {
    std::vector<bool> seen(n + 1, false);
    for (const int v : p) {
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
  };
  if (!is_permutation(actual) || !is_permutation(obtained))
    throw DataError("rankings must be permutations of 1..n");
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = actual[k] - obtained[k];
    sum += d * d;
  }
  const double nn = static_cast<double>(n);
  return 3.0 / (nn * nn * nn - nn) * sum;
}

double ranking_error(const Ranking& actual, const Ranking& obtained) {
  if (actual.members.size() != obtained.members.size())
    throw DataError("rankings cover different members");
  std::vector<int> r, e;
  for (const auto& m : actual.members) {
    r.push_back(actual.position_of(m));
    e.push_back(obtained.position_of(m));
  }
  return ranking_error(r, e);
}

}  // namespace subgroup
