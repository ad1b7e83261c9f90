#include <doctest.h>

#include <random>

#include "subgroup/error.hpp"
#include "subgroup/fuzzy.hpp"
#include "support.hpp"

using namespace subgroup;

namespace {

/// Membership straight from the ratio sum, for points away from centers.
Eigen::Vector3d textbook(const Eigen::Vector3d& x, const GroupCenters<double>& c) {
  Eigen::Vector3d d2, mu;
  for (int i = 0; i < 3; ++i) d2(i) = (x - c.center(i)).squaredNorm();
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += d2(i) / d2(j);
    mu(i) = 1.0 / s;
  }
  return mu;
}

MembershipMatrix matrix(std::vector<std::string> names, std::vector<Eigen::Vector3d> values,
                        MembershipStage stage = MembershipStage::kFirst) {
  std::vector<CharacterId> ids;
  for (const auto& n : names) ids.emplace_back(n);
  MembershipMatrix::Values v(static_cast<Eigen::Index>(values.size()), 3);
  for (std::size_t i = 0; i < values.size(); ++i) v.row(static_cast<Eigen::Index>(i)) = values[i].transpose();
  return MembershipMatrix(std::move(ids), v, stage);
}

}  // namespace

TEST_CASE("membership of a point between two centers") {
  const auto c = GroupCenters<double>::rules();
  const auto mu = membership(Eigen::Vector3d(0.75, 0.25, 0.5), c);
  CHECK(mu(0) == doctest::Approx(9.0 / 19));
  CHECK(mu(1) == doctest::Approx(1.0 / 19));
  CHECK(mu(2) == doctest::Approx(9.0 / 19));
  CHECK(mu(0) == doctest::Approx(0.4737).epsilon(1e-4));
  CHECK(mu(1) == doctest::Approx(0.0526).epsilon(1e-3));
}

TEST_CASE("centers and singular points") {
  const auto c = GroupCenters<double>::rules();
  for (int i = 0; i < 3; ++i) CHECK(membership(c.center(i), c) == Eigen::Vector3d::Unit(i));

  // Two coincident centers split the mass between them.
  GroupCenters<double> twin = c;
  twin.points.row(1) = twin.points.row(0);
  CHECK_FALSE(twin.distinct());
  const auto mu = membership(c.center(0), twin);
  CHECK(mu == Eigen::Vector3d(0.5, 0.5, 0));

  // Equidistant point: the centroid of an equilateral triangle.
  const auto e = GroupCenters<double>::identity();
  const auto third = membership(Eigen::Vector3d::Constant(1.0 / 3), e);
  for (int i = 0; i < 3; ++i) CHECK(third(i) == doctest::Approx(1.0 / 3));
}

TEST_CASE("agrees with the textbook ratio sum and works in float") {
  std::mt19937 gen(1);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto c = GroupCenters<double>::rules();
  for (int k = 0; k < 200; ++k) {
    const Eigen::Vector3d x(n(gen), n(gen), n(gen));
    CHECK(membership(x, c).isApprox(textbook(x, c), 1e-12));
  }
  GroupCenters<float> cf;
  cf.points = c.points.cast<float>();
  const Eigen::Vector3f mf = membership(Eigen::Vector3f(0.75f, 0.25f, 0.5f), cf);
  CHECK(mf(1) == doctest::Approx(1.0 / 19).epsilon(1e-5));
}

TEST_CASE("common scaling and translation leave memberships unchanged") {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    GroupCenters<double> c;
    c.points = Eigen::Matrix3d::NullaryExpr([&] { return u(gen); });
    const Eigen::Vector3d x(u(gen), u(gen), u(gen));
    const Eigen::Vector3d shift(u(gen), u(gen), u(gen));
    const double s = 0.1 + std::abs(u(gen));
    GroupCenters<double> moved;
    moved.points = (s * c.points).rowwise() + shift.transpose();
    CHECK(membership(Eigen::Vector3d(s * x + shift), moved).isApprox(membership(x, c), 1e-9));
  }
}

TEST_CASE("first box rows") {
  std::map<CharacterId, CharacterFeatureStats> stats;
  stats[CharacterId("AVON")] = make_stats({15, 0}, DMode::raw_scaled(15));
  stats[CharacterId("MID")] = make_stats({0, 0}, DMode::normalized());
  stats[CharacterId("MIX")] = make_stats({12, 4}, DMode::normalized());
  const auto m1 = first_box(stats, GroupCenters<double>::rules());
  CHECK(m1.stage() == MembershipStage::kFirst);
  CHECK(m1.row(CharacterId("AVON")) == Eigen::Vector3d(1, 0, 0));
  CHECK(m1.row(CharacterId("MID")) == Eigen::Vector3d(0, 0, 1));
  CHECK(m1.row(CharacterId("MIX"))(1) == doctest::Approx(1.0 / 19));
  CHECK_THROWS_AS(m1.row(CharacterId("NOBODY")), DataError);

  GroupCenters<double> bad = GroupCenters<double>::rules();
  bad.points.row(2) = bad.points.row(0);
  CHECK_THROWS_AS(first_box(stats, bad), ConfigError);
}

TEST_CASE("second box") {
  // Five characters: M sits mid-simplex, all its partners lean police.
  const auto t = parse_transcript("M: a\nA: b\nM: c\nB: d\nM: e\nC: f\n\nLONE: g\n");
  const auto r = build_relation_matrix(t);
  const auto m1 = matrix({"A", "B", "C", "LONE", "M"},
                         {{0, 1, 0}, {0, 1, 0}, {0, 1, 0}, {0.2, 0.3, 0.5}, {1.0 / 3, 1.0 / 3, 1.0 / 3}});
  const auto e = GroupCenters<double>::identity();

  SUBCASE("lambda zero ignores relations") {
    const auto m2 = second_box(m1, r, 0.0);
    CHECK(m2.stage() == MembershipStage::kSecond);
    for (const auto& c : m1.names()) CHECK(m2.row(c).isApprox(membership(m1.row(c), e), 1e-15));
  }
  SUBCASE("blend moves toward the partners") {
    const auto m2 = second_box(m1, r, 0.5);
    const Eigen::Vector3d y(1.0 / 6, 2.0 / 3, 1.0 / 6);
    CHECK(m2.row(CharacterId("M")).isApprox(membership(y, e), 1e-12));
    const auto row = m2.row(CharacterId("M"));
    CHECK(row(1) > row(0));
    CHECK(row(1) > row(2));
    CHECK(harden_row(row).label == Group::kPolice);
  }
  SUBCASE("isolated characters fall back to their own row") {
    for (const double lambda : {0.0, 0.3, 1.0})
      CHECK(second_box(m1, r, lambda).row(CharacterId("LONE")).isApprox(membership(m1.row(CharacterId("LONE")), e), 1e-15));
  }
  SUBCASE("lambda outside the unit interval") {
    CHECK_THROWS_AS(second_box(m1, r, -0.1), ConfigError);
    CHECK_THROWS_AS(second_box(m1, r, 1.5), ConfigError);
  }
}

TEST_CASE("hardening") {
  CHECK(harden_row({0.03, 0.33, 0.63}).label == Group::kInformant);
  CHECK(harden_row({0.03, 0.33, 0.63}).confidence == 0.63);
  CHECK(harden_row({0.81, 0.07, 0.10}).label == Group::kGang);
  CHECK(harden_row(Eigen::Vector3d::Constant(1.0 / 3)).label == Group::kGang);
  CHECK(harden_row({0.1, 0.45, 0.45}).label == Group::kPolice);
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    Eigen::Vector3d v(u(gen), u(gen), u(gen));
    v /= v.sum();
    CHECK(harden_row(v).confidence >= 1.0 / 3 - 1e-12);
  }
}

TEST_CASE("membership matrix validates rows") {
  CHECK_THROWS_AS(matrix({"A"}, {{0.5, 0.6, 0.0}}), DataError);
  CHECK_THROWS_AS(matrix({"A"}, {{-0.5, 1.5, 0.0}}), DataError);
  CHECK_THROWS_AS(matrix({"B", "A"}, {{1, 0, 0}, {1, 0, 0}}), DataError);
}

TEST_CASE("accuracy") {
  std::map<CharacterId, Group> gold, pred;
  for (int i = 0; i < 14; ++i) {
    const CharacterId id("C" + std::to_string(i));
    gold[id] = static_cast<Group>(i % 3);
    pred[id] = i == 4 ? Group::kInformant : gold[id];
  }
  CHECK(accuracy(gold, gold) == 1.0);
  CHECK(accuracy(pred, gold) == doctest::Approx(13.0 / 14));
  CHECK(accuracy(pred, gold) == doctest::Approx(0.9286).epsilon(1e-4));
  auto twelve = pred;
  twelve[CharacterId("C6")] = Group::kPolice;
  CHECK(accuracy(twelve, gold) == doctest::Approx(0.857).epsilon(1e-3));
  std::map<CharacterId, Group> shifted;
  for (const auto& [id, g] : gold) shifted[id] = static_cast<Group>((index_of(g) + 1) % 3);
  CHECK(accuracy(shifted, gold) == 0.0);

  auto missing = gold;
  missing.erase(missing.begin());
  CHECK_THROWS_AS(accuracy(missing, gold), DataError);
  auto renamed = missing;
  renamed[CharacterId("ZZ")] = Group::kGang;
  CHECK_THROWS_AS(accuracy(renamed, gold), DataError);
  CHECK_THROWS_AS(accuracy({}, {}), DataError);
}

TEST_CASE("label csv round trip") {
  const auto m = matrix({"A", "B", "C"}, {{0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}, {0.2, 0.2, 0.6}});
  const auto csv = membership_to_csv(m);
  CHECK(csv.starts_with("character,mu_gang,mu_police,mu_informant,label\nA,0.8,0.1,0.1,GANG\n"));
  const auto labels = parse_label_csv(csv);
  CHECK(labels == labels_of(harden(m)));
  CHECK(parse_label_csv("A,gang\nB,Police\n").at(CharacterId("B")) == Group::kPolice);
  CHECK_THROWS_AS(parse_label_csv("A,GANG\nA,POLICE\n"), ParseError);
  CHECK_THROWS_AS(parse_label_csv("A,GANG\nB,PIRATE\n"), ParseError);
}
