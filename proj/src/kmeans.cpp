#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "subgroup/error.hpp"
#include "subgroup/fuzzy.hpp"
#include "subgroup/random.hpp"

namespace subgroup {

namespace {

using Points = Eigen::Matrix<double, Eigen::Dynamic, 3>;

struct LloydRun {
  Eigen::Matrix3d centroids;
  std::vector<int> assignment;
  int iterations = 0;
  bool converged = false;
  double inertia = 0.0;
};

LloydRun lloyd(const Points& points, Eigen::Matrix3d centroids, int max_iterations) {
  LloydRun run;
  run.assignment = assign_nearest(points, centroids);
  while (run.iterations < max_iterations) {
    ++run.iterations;
    Eigen::Matrix3d sums = Eigen::Matrix3d::Zero();
    std::array<int, 3> sizes{0, 0, 0};
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      sums.row(run.assignment[i]) += points.row(i);
      ++sizes[run.assignment[i]];
    }
    for (int k = 0; k < 3; ++k)
      if (sizes[k] > 0) centroids.row(k) = sums.row(k) / sizes[k];
    auto next = assign_nearest(points, centroids);
    if (next == run.assignment) {
      run.converged = true;
      break;
    }
    run.assignment = std::move(next);
  }
  run.centroids = centroids;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    run.inertia += (points.row(i) - centroids.row(run.assignment[i])).squaredNorm();
  return run;
}

std::size_t distinct_rows(const Points& points) {
  std::vector<std::array<double, 3>> rows;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    rows.push_back({points(i, 0), points(i, 1), points(i, 2)});
  std::sort(rows.begin(), rows.end());
  return static_cast<std::size_t>(std::unique(rows.begin(), rows.end()) - rows.begin());
}

}  // namespace

std::vector<int> assign_nearest(const Points& points, const Eigen::Matrix3d& centroids) {
  std::vector<int> out(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    int best = 0;
    double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int k = 1; k < 3; ++k) {
      const double d = (points.row(i) - centroids.row(k)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

KMeansResult kmeans_baseline(const std::map<CharacterId, Eigen::Vector3d>& vectors,
                             const SeedLabels& seeds, const Eigen::Vector3d& informant_center,
                             const KMeansOptions& options) {
  if (options.max_iterations < 1) throw ConfigError("k-means needs at least one iteration");
  std::vector<CharacterId> names;
  Points points(static_cast<Eigen::Index>(vectors.size()), 3);
  for (const auto& [id, v] : vectors) {
    if (!v.allFinite()) throw DataError("non-finite k-means input for '" + id.str() + "'");
    points.row(static_cast<Eigen::Index>(names.size())) = v.transpose();
    names.push_back(id);
  }
  if (distinct_rows(points) < 3) throw DataError("k-means needs at least 3 distinct vectors");

  Eigen::Matrix3d init = Eigen::Matrix3d::Zero();
  std::array<int, 2> seed_count{0, 0};
  for (const auto& [id, group] : seeds) {
    if (group == Group::kInformant) continue;
    const auto it = vectors.find(id);
    if (it == vectors.end()) continue;
    init.row(index_of(group)) += it->second.transpose();
    ++seed_count[index_of(group)];
  }
  for (int k = 0; k < 2; ++k) {
    if (seed_count[k] == 0)
      throw DataError(std::string("no ") + std::string(to_string(static_cast<Group>(k))) +
                      " seed vector for k-means initialization");
    init.row(k) /= seed_count[k];
  }
  init.row(2) = informant_center.transpose();

  LloydRun best = lloyd(points, init, options.max_iterations);
  std::vector<int> best_map{0, 1, 2};

  RandomStream rng = RandomStream(options.rng_seed).split("kmeans-restarts");
  for (int r = 0; r < options.random_restarts; ++r) {
    Eigen::Matrix3d start;
    std::vector<std::size_t> picked;
    while (picked.size() < 3) {
      const auto i = rng.range(0, names.size() - 1);
      const bool dup = std::any_of(picked.begin(), picked.end(), [&](std::size_t j) {
        return points.row(static_cast<Eigen::Index>(j)) == points.row(static_cast<Eigen::Index>(i));
      });
      if (!dup) picked.push_back(i);
    }
    for (int k = 0; k < 3; ++k) start.row(k) = points.row(static_cast<Eigen::Index>(picked[k]));
    LloydRun run = lloyd(points, start, options.max_iterations);
    if (run.inertia >= best.inertia) continue;

    // Label each cluster by the seed-initialized centroid it best matches.
    std::vector<int> perm{0, 1, 2}, chosen = perm;
    double chosen_cost = std::numeric_limits<double>::infinity();
    do {
      double cost = 0.0;
      for (int k = 0; k < 3; ++k) cost += (run.centroids.row(k) - init.row(perm[k])).squaredNorm();
      if (cost < chosen_cost) {
        chosen_cost = cost;
        chosen = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    best = std::move(run);
    best_map = chosen;
  }

  KMeansResult result;
  result.iterations = best.iterations;
  result.converged = best.converged;
  result.inertia = best.inertia;
  for (int k = 0; k < 3; ++k) result.centroids.row(best_map[k]) = best.centroids.row(k);
  for (std::size_t i = 0; i < names.size(); ++i)
    result.labels.emplace(names[i], HardLabel{static_cast<Group>(best_map[best.assignment[i]]), 1.0});
  return result;
}

}  // namespace subgroup
