#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "subgroup/corpus.hpp"

namespace subgroup {

/// Fixed cluster centers, one per row: gang, police, informant.
template <typename Scalar>
struct GroupCenters {
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  Eigen::Matrix<Scalar, 3, 3> points;

  /// The three rule points in (a, b, d) space with normalized d.
  static GroupCenters rules() {
    GroupCenters c;
    c.points << Scalar(1), Scalar(0), Scalar(1),    //
        Scalar(0), Scalar(1), Scalar(-1),           //
        Scalar(0.5), Scalar(0.5), Scalar(0);
    return c;
  }

  /// Simplex vertices, used by the second box.
  static GroupCenters identity() {
    GroupCenters c;
    c.points.setIdentity();
    return c;
  }

  Vector3 center(int i) const { return points.row(i).transpose(); }

  bool distinct() const {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if ((points.row(i) - points.row(j)).squaredNorm() == Scalar(0)) return false;
    return true;
  }
};

enum class MembershipStage { kFirst, kSecond };

/// N x 3 row-stochastic memberships, rows in character order.
class MembershipMatrix {
 public:
  using Values = Eigen::Matrix<double, Eigen::Dynamic, 3>;

  MembershipMatrix(std::vector<CharacterId> names, Values values, MembershipStage stage);

  const std::vector<CharacterId>& names() const noexcept { return names_; }
  const Values& values() const noexcept { return values_; }
  MembershipStage stage() const noexcept { return stage_; }
  Eigen::Index size() const noexcept { return values_.rows(); }

  std::optional<Eigen::Index> index_of(const CharacterId& c) const;
  /// Throws DataError for an unknown character.
  Eigen::Vector3d row(const CharacterId& c) const;

 private:
  std::vector<CharacterId> names_;
  Values values_;
  MembershipStage stage_;
};

}  // namespace subgroup
