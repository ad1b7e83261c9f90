#pragma once
// Runs the classification stages on a synthetic corpus and scores them
// against the generator's labels.

#include "subgroup/fuzzy.hpp"
#include "subgroup/relations.hpp"
#include "subgroup/synth.hpp"

namespace testing {

struct Scores {
  double fuzzy = 0.0;      // hardened second-box labels
  double first_box = 0.0;  // hardened first-box labels
  double kmeans = 0.0;
};

inline Scores evaluate(const subgroup::SynthCorpus& corpus, double lambda = 0.5) {
  using namespace subgroup;
  const auto t = parse_transcript(corpus.transcript_text);
  const Tagger tagger;
  const auto fa = analyze_features(t, corpus.seeds, tagger, FeatureOptions{});
  const auto centers = GroupCenters<double>::rules();
  const auto m1 = first_box(fa.stats, centers);
  const auto m2 = second_box(m1, build_relation_matrix(t), lambda);
  std::map<CharacterId, Eigen::Vector3d> vectors;
  for (const auto& [id, s] : fa.stats) vectors.emplace(id, s.x);
  const auto km = kmeans_baseline(vectors, corpus.seeds, centers.center(2));
  const auto gold = corpus.gold_labels();
  return {accuracy(labels_of(harden(m2)), gold), accuracy(labels_of(harden(m1)), gold),
          accuracy(labels_of(km.labels), gold)};
}

}  // namespace testing
