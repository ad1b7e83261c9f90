#include "subgroup/relations.hpp"

#include <algorithm>

#include <json.hpp>

#include "subgroup/error.hpp"
#include "util.hpp"

namespace subgroup {

RelationMatrix::RelationMatrix(std::vector<CharacterId> names, Eigen::MatrixXd weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  const auto n = static_cast<Eigen::Index>(names_.size());
  if (weights_.rows() != n || weights_.cols() != n)
    throw DataError("relation matrix shape does not match the character list");
  if (!std::is_sorted(names_.begin(), names_.end()) ||
      std::adjacent_find(names_.begin(), names_.end()) != names_.end())
    throw DataError("relation matrix names must be sorted and unique");
  if (!weights_.allFinite() || (weights_.array() < 0.0).any())
    throw DataError("relation weights must be finite and non-negative");
  if (weights_ != weights_.transpose() || !weights_.diagonal().isZero(0.0))
    throw DataError("relation matrix must be symmetric with a zero diagonal");
}

std::optional<Eigen::Index> RelationMatrix::index_of(const CharacterId& c) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), c);
  if (it == names_.end() || *it != c) return std::nullopt;
  return static_cast<Eigen::Index>(it - names_.begin());
}

double RelationMatrix::weight(const CharacterId& a, const CharacterId& b) const {
  const auto i = index_of(a);
  const auto j = index_of(b);
  if (!i || !j) throw DataError("unknown character in relation lookup");
  return weights_(*i, *j);
}

RelationMatrix build_relation_matrix(const Transcript& t, const RelationWeights& w,
                                     unsigned jobs) {
  if (w.adjacent < 0.0 || w.skip_one < 0.0)
    throw ConfigError("relation weights must be non-negative");
  const auto& names = t.characters();
  const auto n = static_cast<Eigen::Index>(names.size());

  std::vector<Eigen::Index> row_of(t.turns().size());
  for (std::size_t i = 0; i < row_of.size(); ++i)
    row_of[i] = std::lower_bound(names.begin(), names.end(), t.turns()[i].speaker) - names.begin();

  // Per-conversation contributions are collected in parallel and summed in
  // conversation order, so rounding never depends on `jobs`.
  struct Contribution {
    Eigen::Index a, b;
    double weight;
  };
  const auto& convs = t.conversations();
  std::vector<std::vector<Contribution>> partial(convs.size());
  detail::parallel_for(convs.size(), jobs, [&](std::size_t c) {
    const auto [begin, end] = convs[c];
    auto& out = partial[c];
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t gap = 1; gap <= 2; ++gap) {
        if (i + gap >= end) break;
        const auto a = row_of[i];
        const auto b = row_of[i + gap];
        if (a == b) continue;
        out.push_back({a, b, gap == 1 ? w.adjacent : w.skip_one});
      }
    }
  });

  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
  for (const auto& list : partial)
    for (const auto& [a, b, weight] : list) {
      total(a, b) += weight;
      total(b, a) += weight;
    }
  return RelationMatrix(names, std::move(total));
}

std::optional<Eigen::Vector3d> neighbor_profile(const RelationMatrix& r,
                                                const MembershipMatrix& m,
                                                const CharacterId& c) {
  const auto row = r.index_of(c);
  if (!row) return std::nullopt;
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  double mass = 0.0;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    const double w = r.weights()(*row, k);
    if (w <= 0.0) continue;
    const auto mk = m.index_of(r.names()[static_cast<std::size_t>(k)]);
    if (!mk) throw DataError("membership matrix lacks '" + r.names()[k].str() + "'");
    acc += w * m.values().row(*mk).transpose();
    mass += w;
  }
  if (mass <= 0.0) return std::nullopt;
  return acc / mass;
}

std::string relations_to_csv(const RelationMatrix& r) {
  std::string out = "character";
  for (const auto& name : r.names()) out += "," + name.str();
  out += '\n';
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    out += r.names()[i].str();
    for (Eigen::Index j = 0; j < r.size(); ++j) out += "," + detail::format_double(r.weights()(i, j));
    out += '\n';
  }
  return out;
}

std::string relations_to_json(const RelationMatrix& r) {
  nlohmann::ordered_json doc;
  auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& name : r.names()) nodes.push_back(name.str());
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < r.size(); ++i)
    for (Eigen::Index j = i + 1; j < r.size(); ++j)
      if (r.weights()(i, j) > 0.0)
        edges.push_back({{"source", r.names()[i].str()},
                         {"target", r.names()[j].str()},
                         {"weight", r.weights()(i, j)}});
  return doc.dump(2) + "\n";
}

}  // namespace subgroup
