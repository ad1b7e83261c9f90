#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "subgroup/corpus.hpp"
#include "subgroup/features.hpp"
#include "subgroup/labels.hpp"
#include "subgroup/membership.hpp"
#include "subgroup/relations.hpp"

namespace subgroup {

/// Fixed-center fuzzy c-means membership with fuzzifier m = 2:
///   mu_i = 1 / sum_j (|x - F_i|^2 / |x - F_j|^2),
/// evaluated as normalized inverse squared distances. Points within `eps` of
/// one or more centers get the indicator (or uniform) vector over those.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Eigen::Matrix<Scalar, 3, 1> membership(const Eigen::MatrixBase<Derived>& x,
                                       const GroupCenters<Scalar>& centers,
                                       Scalar eps = Scalar(1e-12)) {
  static_assert(Derived::SizeAtCompileTime == 3 || Derived::SizeAtCompileTime == Eigen::Dynamic);
  Eigen::Matrix<Scalar, 3, 1> dist2;
  for (int i = 0; i < 3; ++i)
    dist2(i) = (x.derived().transpose() - centers.points.row(i)).squaredNorm();

  const Scalar eps2 = eps * eps;
  Eigen::Matrix<Scalar, 3, 1> mu = Eigen::Matrix<Scalar, 3, 1>::Zero();
  int hits = 0;
  for (int i = 0; i < 3; ++i)
    if (dist2(i) <= eps2) {
      mu(i) = Scalar(1);
      ++hits;
    }
  if (hits > 0) return mu / Scalar(hits);

  // The common factor min(dist2) keeps the inverses in a safe range.
  const Scalar floor = dist2.minCoeff();
  for (int i = 0; i < 3; ++i) mu(i) = floor / dist2(i);
  return mu / mu.sum();
}

struct HardLabel {
  Group label = Group::kGang;
  double confidence = 0.0;
};

/// Argmax; a later column wins only when it is larger by more than 1e-12,
/// so ties resolve GANG < POLICE < INFORMANT.
HardLabel harden_row(const Eigen::Vector3d& row);

/// First box: one membership row per character from its (a, b, d) vector.
MembershipMatrix first_box(const std::map<CharacterId, CharacterFeatureStats>& stats,
                           const GroupCenters<double>& centers);

/// Second box: y = (1 - lambda) M1[c] + lambda * neighbor_profile(c), falling
/// back to M1[c] for isolated characters, then membership against the simplex
/// vertices. Throws ConfigError for lambda outside [0, 1].
MembershipMatrix second_box(const MembershipMatrix& m1, const RelationMatrix& r,
                            double lambda);

std::map<CharacterId, HardLabel> harden(const MembershipMatrix& m);

std::map<CharacterId, Group> labels_of(const std::map<CharacterId, HardLabel>& hard);

struct KMeansOptions {
  int max_iterations = 100;
  /// Extra runs from random distinct points; the lowest-inertia run wins.
  int random_restarts = 0;
  std::uint64_t rng_seed = 0;
};

struct KMeansResult {
  std::map<CharacterId, HardLabel> labels;
  Eigen::Matrix3d centroids;  // row per label
  int iterations = 0;
  bool converged = false;
  double inertia = 0.0;
};

/// Lloyd's algorithm with k = 3. Initial centroids: mean of the GANG seeds,
/// mean of the POLICE seeds, and `informant_center`. Clusters keep the label
/// of the centroid they started from. Confidence is 1 for every point.
/// Throws DataError with fewer than 3 distinct vectors or a seed class with
/// no vector.
KMeansResult kmeans_baseline(const std::map<CharacterId, Eigen::Vector3d>& vectors,
                             const SeedLabels& seeds,
                             const Eigen::Vector3d& informant_center,
                             const KMeansOptions& options = {});

/// One Lloyd step from `centroids`: returns index of nearest centroid per row.
std::vector<int> assign_nearest(const Eigen::Matrix<double, Eigen::Dynamic, 3>& points,
                                const Eigen::Matrix3d& centroids);

/// Fraction of exact matches. Throws DataError on differing key sets.
double accuracy(const std::map<CharacterId, Group>& predicted,
                const std::map<CharacterId, Group>& gold);

/// character,mu_gang,mu_police,mu_informant,label
std::string membership_to_csv(const MembershipMatrix& m);

/// Reads either `NAME,LABEL` rows or a membership CSV (label in the last
/// column). A header row is skipped when its label column is not a group.
std::map<CharacterId, Group> parse_label_csv(std::string_view csv);
std::map<CharacterId, Group> load_label_csv(const std::string& path);

}  // namespace subgroup
