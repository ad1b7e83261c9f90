#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "subgroup/corpus.hpp"
#include "subgroup/membership.hpp"

namespace subgroup {

struct RelationWeights {
  double adjacent = 1.0;  // turns i and i+1
  double skip_one = 0.5;  // turns i and i+2
};

/// Symmetric, zero-diagonal, non-negative N x N turn-proximity weights.
class RelationMatrix {
 public:
  RelationMatrix(std::vector<CharacterId> names, Eigen::MatrixXd weights);

  const std::vector<CharacterId>& names() const noexcept { return names_; }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  Eigen::Index size() const noexcept { return weights_.rows(); }

  std::optional<Eigen::Index> index_of(const CharacterId& c) const;
  /// Throws DataError for unknown names.
  double weight(const CharacterId& a, const CharacterId& b) const;

 private:
  std::vector<CharacterId> names_;
  Eigen::MatrixXd weights_;
};

/// Counts speaker pairs at distance 1 and 2 inside each conversation. Pairs
/// of the same speaker contribute nothing. Conversations are summed in
/// parallel when `jobs` > 1.
RelationMatrix build_relation_matrix(const Transcript& t, const RelationWeights& w = {},
                                     unsigned jobs = 1);

/// Relation-weighted mean of the partners' membership rows. Returns nullopt
/// when `c` has no partners (or is unknown to `r`).
std::optional<Eigen::Vector3d> neighbor_profile(const RelationMatrix& r,
                                                const MembershipMatrix& m,
                                                const CharacterId& c);

/// Header row and column of character names.
std::string relations_to_csv(const RelationMatrix& r);
/// {"nodes": [...], "edges": [{"source", "target", "weight"}]} for i < j.
std::string relations_to_json(const RelationMatrix& r);

}  // namespace subgroup
