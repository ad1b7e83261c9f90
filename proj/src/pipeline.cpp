#include "subgroup/pipeline.hpp"

#include <filesystem>
#include <functional>
#include <set>

#include <json.hpp>

#include "subgroup/error.hpp"
#include "util.hpp"

namespace subgroup {

namespace {

using Json = nlohmann::ordered_json;

bool parse_bool(std::string_view v, std::string_view key) {
  const std::string s = detail::to_lower(detail::trim(v));
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError("invalid boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

std::vector<double> parse_list(std::string_view v, char sep, std::string_view key) {
  std::vector<double> out;
  for (const auto f : detail::split_fields(v, sep)) out.push_back(detail::parse_double(f, key));
  return out;
}

std::size_t parse_count(std::string_view v, std::string_view key) {
  const auto n = detail::parse_int(v, key);
  if (n < 0) throw ConfigError(std::string(key) + " must be non-negative");
  return static_cast<std::size_t>(n);
}

/// Runs `body`, rethrowing any failure as a StageError tagged with `stage`.
template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const ConfigError& e) {
    throw StageError(name, StageError::Kind::kConfig, e.what());
  } catch (const DataError& e) {
    throw StageError(name, StageError::Kind::kData, e.what());
  } catch (const std::exception& e) {
    throw StageError(name, StageError::Kind::kInternal, e.what());
  }
}

std::string features_to_csv(const FeatureAnalysis& f) {
  std::string out = "character,A,B,a,b,d\n";
  for (const auto& [id, s] : f.stats)
    out += id.str() + "," + std::to_string(s.counts.gang) + "," + std::to_string(s.counts.police) +
           "," + detail::format_double(s.a_ratio) + "," + detail::format_double(s.b_ratio) + "," +
           detail::format_double(s.d) + "\n";
  return out;
}

Json gram_list(const GramSet& set) {
  Json arr = Json::array();
  for (const auto& g : set) arr.push_back(g.str());
  return arr;
}

Json features_json(const HierarchyFeatures& f) {
  return Json{{"coordination", f.coordination},
              {"questions", f.questions},
              {"modal_verbs", f.modal_verbs},
              {"hedges", f.hedges},
              {"profanity", f.profanity},
              {"terms_of_address", f.terms_of_address}};
}

Json ranking_json(const Ranking& r, const std::map<CharacterId, HierarchyFeatures>& feats) {
  Json members = Json::array();
  for (std::size_t k = 0; k < r.members.size(); ++k)
    members.push_back({{"character", r.members[k].str()},
                       {"position", k + 1},
                       {"score", r.scores[k]},
                       {"features", features_json(feats.at(r.members[k]))}});
  return Json{{"group", r.group}, {"members", members}};
}

}  // namespace

void PipelineConfig::set(std::string_view key_in, std::string_view value_in) {
  const std::string key(detail::trim(key_in));
  const std::string_view value = detail::trim(value_in);
  if (key == "transcript" || key == "transcripts") {
    for (const auto f : detail::split_fields(value, ',')) if (!f.empty()) transcripts.emplace_back(f);
  } else if (key == "seeds") {
    seeds = value;
  } else if (key == "gold_labels" || key == "gold") {
    gold_labels = value;
  } else if (key == "gold_hierarchy") {
    gold_hierarchy = value;
  } else if (key == "lexicon") {
    lexicon = value;
  } else if (key == "modals") {
    modals = value;
  } else if (key == "hedges") {
    hedges = value;
  } else if (key == "profanity") {
    profanity = value;
  } else if (key == "address") {
    address = value;
  } else if (key == "format") {
    if (value == "speaker_colon") format = TranscriptFormat::kSpeakerColon;
    else if (value == "pretagged") format = TranscriptFormat::kPretagged;
    else throw ConfigError("unknown format '" + std::string(value) + "'");
  } else if (key == "delimiter") {
    if (value == "blank_line") delimiter = Delimiter::kBlankLine;
    else if (value == "scene_marker") delimiter = Delimiter::kSceneMarker;
    else throw ConfigError("unknown delimiter '" + std::string(value) + "'");
  } else if (key == "d_mode") {
    features.d_mode = DMode::parse(value);
  } else if (key == "min_count") {
    features.min_count = parse_count(value, key);
  } else if (key == "bigrams") {
    features.grams.bigrams = parse_bool(value, key);
  } else if (key == "trigrams") {
    features.grams.trigrams = parse_bool(value, key);
  } else if (key == "centers") {
    const auto rows = detail::split_fields(value, ';');
    if (rows.size() != 3) throw ConfigError("centers needs three ';'-separated points");
    for (int i = 0; i < 3; ++i) {
      const auto p = parse_list(rows[static_cast<std::size_t>(i)], ',', key);
      if (p.size() != 3) throw ConfigError("each center needs three coordinates");
      centers.points.row(i) << p[0], p[1], p[2];
    }
  } else if (key == "lambda") {
    lambda = detail::parse_double(value, key);
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  } else if (key == "w1" || key == "w2") {
    const double w = detail::parse_double(value, key);
    if (!(w >= 0.0)) throw ConfigError(key + " must be non-negative");
    (key == "w1" ? relation_weights.adjacent : relation_weights.skip_one) = w;
  } else if (key == "weights" || key == "hierarchy_weights") {
    const auto w = parse_list(value, ',', key);
    if (w.size() != kHierarchyFeatureCount) throw ConfigError("weights needs six values");
    for (int k = 0; k < kHierarchyFeatureCount; ++k) hierarchy_weights(k) = w[static_cast<std::size_t>(k)];
  } else if (key == "top_coverage") {
    top_coverage = detail::parse_double(value, key);
    if (!(top_coverage > 0.0 && top_coverage <= 1.0))
      throw ConfigError("top_coverage must lie in (0, 1]");
  } else if (key == "out" || key == "out_dir") {
    out_dir = value;
  } else if (key == "rng_seed" || key == "seed") {
    rng_seed = static_cast<std::uint64_t>(detail::parse_int(value, key));
  } else if (key == "kmeans_restarts") {
    kmeans_restarts = static_cast<int>(parse_count(value, key));
  } else if (key == "jobs") {
    jobs = static_cast<unsigned>(std::max<std::size_t>(1, parse_count(value, key)));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void PipelineConfig::merge_file(const std::string& path) {
  const auto content = detail::read_file(path);
  const auto base = std::filesystem::path(path).parent_path();
  const auto lines = detail::split_lines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = detail::strip_comment(lines[n]);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path + ":" + std::to_string(n + 1) + ": expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    static const std::set<std::string_view> kPathKeys = {
        "transcript", "transcripts", "seeds", "gold_labels", "gold", "gold_hierarchy", "lexicon",
        "modals", "hedges", "profanity", "address", "out", "out_dir"};
    if (kPathKeys.contains(key) && !base.empty()) {
      // Relative paths in a config file resolve against the file's directory.
      std::string resolved;
      for (const auto f : detail::split_fields(value, ',')) {
        if (f.empty()) continue;
        const std::filesystem::path p(f);
        if (!resolved.empty()) resolved += ',';
        resolved += p.is_absolute() ? p.string() : (base / p).lexically_normal().string();
      }
      set(key, resolved);
    } else {
      set(key, value);
    }
  }
}

void PipelineConfig::validate() const {
  if (transcripts.empty()) throw ConfigError("no transcript given");
  if (seeds.empty()) throw ConfigError("no seed labels given");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  if (relation_weights.adjacent < 0.0 || relation_weights.skip_one < 0.0)
    throw ConfigError("w1 and w2 must be non-negative");
  if (!(top_coverage > 0.0 && top_coverage <= 1.0))
    throw ConfigError("top_coverage must lie in (0, 1]");
  if (!centers.distinct()) throw ConfigError("centers must be pairwise distinct");
  if (!features.grams.bigrams && !features.grams.trigrams)
    throw ConfigError("enable at least one of bigrams, trigrams");
  if (features.d_mode.kind == DMode::Kind::kRawScaled && features.d_mode.scale == 0.0)
    throw ConfigError("raw_scaled scale must be non-zero");
  std::vector<std::string> paths = transcripts;
  paths.push_back(seeds);
  for (const auto* p : {&gold_labels, &gold_hierarchy, &lexicon, &modals, &hedges, &profanity, &address})
    if (!p->empty()) paths.push_back(*p);
  for (const auto& p : paths)
    if (!std::filesystem::exists(p)) throw ConfigError("no such file: '" + p + "'");
}

Transcript load_transcripts(const PipelineConfig& config) {
  ParseOptions options;
  options.format = config.format;
  options.delimiter = config.delimiter;
  std::vector<Transcript> parts;
  for (const auto& path : config.transcripts) parts.push_back(load_transcript(path, options));
  return parts.size() == 1 ? std::move(parts.front()) : concatenate(parts);
}

Tagger make_tagger(const PipelineConfig& config) {
  return config.lexicon.empty() ? Tagger() : Tagger(Lexicon::load(config.lexicon));
}

HierarchyLexicons make_hierarchy_lexicons(const PipelineConfig& config) {
  HierarchyLexicons lex = HierarchyLexicons::builtin();
  if (!config.modals.empty()) lex.modals = TermList::load(config.modals);
  if (!config.hedges.empty()) lex.hedges = TermList::load(config.hedges);
  if (!config.profanity.empty()) lex.profanity = TermList::load(config.profanity);
  if (!config.address.empty()) lex.address = TermList::load(config.address);
  return lex;
}

std::map<std::string, std::string> rank_outputs(const Transcript& t,
                                                const std::map<CharacterId, Group>* labels,
                                                const std::vector<Ranking>* gold,
                                                const Tagger& tagger, const HierarchyLexicons& lex,
                                                const PipelineConfig& config,
                                                InfluenceReport* influence_out,
                                                std::vector<Ranking>* rankings_out) {
  std::map<CharacterId, std::string> affiliation;
  if (labels)
    for (const auto& [id, g] : *labels) affiliation.emplace(id, std::string(to_string(g)));
  const auto influence =
      stage("influence", [&] { return influence_ranking(comment_counts(t), affiliation, config.top_coverage); });

  const auto feats = stage("hierarchy", [&] { return all_hierarchy_features(t, tagger, lex, config.jobs); });

  Json doc;
  Json weights = Json::array();
  for (int k = 0; k < kHierarchyFeatureCount; ++k) weights.push_back(config.hierarchy_weights(k));
  doc["weights"] = weights;

  std::vector<Ranking> rankings;
  Json groups = Json::array();
  stage("hierarchy", [&] {
    std::vector<std::pair<std::string, std::vector<CharacterId>>> buckets;
    if (labels) {
      for (const Group g : kAllGroups) {
        std::vector<CharacterId> members;
        for (const auto& c : t.characters()) {
          const auto it = labels->find(c);
          if (it != labels->end() && it->second == g) members.push_back(c);
        }
        buckets.emplace_back(std::string(to_string(g)), std::move(members));
      }
    } else {
      buckets.emplace_back("ALL", t.characters());
    }
    for (auto& [name, members] : buckets) {
      if (members.size() < 2) {
        Json entry{{"group", name}, {"members", Json::array()}, {"note", "hierarchy undefined"}};
        for (const auto& m : members) entry["members"].push_back({{"character", m.str()}});
        groups.push_back(entry);
        continue;
      }
      auto r = hierarchy_rank(name, members, feats, config.hierarchy_weights);
      groups.push_back(ranking_json(r, feats));
      rankings.push_back(std::move(r));
    }
  });
  doc["groups"] = groups;

  if (gold) {
    stage("hierarchy", [&] {
      Json gold_json = Json::array();
      for (const auto& g : *gold) {
        Ranking actual;
        actual.group = g.group;
        for (std::size_t k = 0; k < g.members.size(); ++k)
          if (t.contains(g.members[k])) {
            actual.members.push_back(g.members[k]);
            actual.scores.push_back(g.scores[k]);
          }
        if (actual.members.size() < 2) continue;
        const auto obtained = hierarchy_rank(g.group, actual.members, feats, config.hierarchy_weights);
        Json entry = ranking_json(obtained, feats);
        Json gold_order = Json::array();
        for (const auto& m : actual.members) gold_order.push_back(m.str());
        entry["gold_order"] = gold_order;
        entry["error"] = ranking_error(actual, obtained);
        gold_json.push_back(entry);
      }
      doc["gold"] = gold_json;
    });
  }

  std::map<std::string, std::string> files;
  files["influence.csv"] = influence_to_csv(influence);
  files["hierarchy.json"] = doc.dump(2) + "\n";
  if (influence_out) *influence_out = influence;
  if (rankings_out) *rankings_out = std::move(rankings);
  return files;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  stage("config", [&] { config.validate(); });

  auto transcript = stage("parse", [&] { return load_transcripts(config); });
  const auto seeds = stage("seeds", [&] { return load_seed_labels(config.seeds); });
  const auto tagger = stage("lexicon", [&] { return make_tagger(config); });
  const auto lex = stage("lexicon", [&] { return make_hierarchy_lexicons(config); });

  auto features = stage("features", [&] {
    return analyze_features(transcript, seeds, tagger, config.features, config.jobs);
  });
  auto first = stage("first_box", [&] { return first_box(features.stats, config.centers); });
  auto relations = stage("relations", [&] {
    return build_relation_matrix(transcript, config.relation_weights, config.jobs);
  });
  auto second = stage("second_box", [&] { return second_box(first, relations, config.lambda); });
  auto labels = harden(second);

  // The baseline is a comparison only; data it cannot cluster skips it.
  std::optional<KMeansResult> kmeans;
  std::string kmeans_skipped;
  try {
    kmeans = stage("kmeans", [&] {
      std::map<CharacterId, Eigen::Vector3d> vectors;
      for (const auto& [id, s] : features.stats) vectors.emplace(id, s.x);
      KMeansOptions options;
      options.random_restarts = config.kmeans_restarts;
      options.rng_seed = config.rng_seed;
      return kmeans_baseline(vectors, seeds, config.centers.center(2), options);
    });
  } catch (const StageError& e) {
    if (e.kind() != StageError::Kind::kData) throw;
    kmeans_skipped = e.what();
  }

  std::optional<std::map<CharacterId, Group>> gold;
  if (!config.gold_labels.empty())
    gold = stage("evaluate", [&] {
      auto g = load_label_csv(config.gold_labels);
      for (const auto& [id, grp] : g)
        if (!transcript.contains(id)) throw DataError("gold character '" + id.str() + "' has no turns");
      return g;
    });
  std::optional<std::vector<Ranking>> gold_hierarchy;
  if (!config.gold_hierarchy.empty())
    gold_hierarchy = stage("evaluate", [&] { return load_gold_hierarchy(config.gold_hierarchy); });

  const auto hard = labels_of(labels);
  InfluenceReport influence;
  std::vector<Ranking> rankings;
  auto files = rank_outputs(transcript, &hard, gold_hierarchy ? &*gold_hierarchy : nullptr, tagger,
                            lex, config, &influence, &rankings);

  files["M1.csv"] = membership_to_csv(first);
  files["M2.csv"] = membership_to_csv(second);
  files["relations.csv"] = relations_to_csv(relations);
  files["relations.json"] = relations_to_json(relations);
  files["features.csv"] = features_to_csv(features);

  Json summary;
  summary["characters"] = transcript.characters().size();
  summary["turns"] = transcript.turns().size();
  summary["conversations"] = transcript.conversations().size();
  summary["config"] = {{"d_mode", config.features.d_mode.str()},
                       {"min_count", config.features.min_count},
                       {"bigrams", config.features.grams.bigrams},
                       {"trigrams", config.features.grams.trigrams},
                       {"lambda", config.lambda},
                       {"w1", config.relation_weights.adjacent},
                       {"w2", config.relation_weights.skip_one},
                       {"top_coverage", config.top_coverage},
                       {"rng_seed", config.rng_seed},
                       {"kmeans_restarts", config.kmeans_restarts}};
  summary["feature_space"] = {{"initial_police", features.space.initial_police.size()},
                              {"initial_gang", features.space.initial_gang.size()},
                              {"police", gram_list(features.space.police)},
                              {"gang", gram_list(features.space.gang)}};
  if (kmeans)
    summary["kmeans"] = {{"iterations", kmeans->iterations}, {"converged", kmeans->converged}};
  else
    summary["kmeans"] = {{"skipped", kmeans_skipped}};
  Json table = Json::array();
  Json label_map = Json::object();
  for (const auto& [id, h] : labels) label_map[id.str()] = to_string(h.label);
  summary["labels"] = label_map;
  summary["influence"] = {{"listed", influence.members.size()},
                          {"coverage", influence.coverage},
                          {"total_comments", influence.total_comments}};

  PipelineResult result{std::move(transcript), std::move(features), std::move(relations),
                        std::move(first),      std::move(second),   std::move(labels),
                        std::move(kmeans),     std::move(influence), std::move(rankings),
                        {}, {}, {}, {}};

  if (gold) {
    stage("evaluate", [&] {
      std::map<CharacterId, Group> fuzzy_pred, first_pred, kmeans_pred;
      const auto first_hard = harden(result.first);
      for (const auto& [id, g] : *gold) {
        fuzzy_pred.emplace(id, result.labels.at(id).label);
        first_pred.emplace(id, first_hard.at(id).label);
        Json row{{"character", id.str()}, {"gold", to_string(g)}};
        if (result.kmeans) {
          kmeans_pred.emplace(id, result.kmeans->labels.at(id).label);
          row["kmeans"] = to_string(kmeans_pred.at(id));
          row["kmeans_correct"] = kmeans_pred.at(id) == g;
        }
        row["fuzzy"] = to_string(fuzzy_pred.at(id));
        row["fuzzy_correct"] = fuzzy_pred.at(id) == g;
        table.push_back(row);
      }
      result.fuzzy_accuracy = accuracy(fuzzy_pred, *gold);
      result.first_box_accuracy = accuracy(first_pred, *gold);
      Json ev;
      if (result.kmeans) {
        result.kmeans_accuracy = accuracy(kmeans_pred, *gold);
        ev["kmeans_accuracy"] = *result.kmeans_accuracy;
      } else {
        ev["kmeans_accuracy"] = nullptr;
      }
      ev["fuzzy_accuracy"] = *result.fuzzy_accuracy;
      ev["first_box_accuracy"] = *result.first_box_accuracy;
      ev["characters"] = table;
      summary["evaluation"] = ev;
    });
  }
  files["summary.json"] = summary.dump(2) + "\n";
  result.files = std::move(files);
  return result;
}

void write_outputs(const std::map<std::string, std::string>& files, const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> written;
  try {
    fs::create_directories(dir);
    for (const auto& [name, content] : files) {
      const fs::path p = fs::path(dir) / name;
      written.push_back(p);
      detail::write_file(p.string(), content);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

}  // namespace subgroup
