#include "subgroup/fuzzy.hpp"

#include <algorithm>
#include <cmath>

#include "subgroup/error.hpp"
#include "util.hpp"

namespace subgroup {

MembershipMatrix::MembershipMatrix(std::vector<CharacterId> names, Values values,
                                   MembershipStage stage)
    : names_(std::move(names)), values_(std::move(values)), stage_(stage) {
  if (values_.rows() != static_cast<Eigen::Index>(names_.size()))
    throw DataError("membership rows do not match the character list");
  if (!std::is_sorted(names_.begin(), names_.end()) ||
      std::adjacent_find(names_.begin(), names_.end()) != names_.end())
    throw DataError("membership names must be sorted and unique");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    const auto row = values_.row(i);
    if (!row.allFinite() || (row.array() < -1e-12).any() || (row.array() > 1.0 + 1e-12).any() ||
        std::abs(row.sum() - 1.0) > 1e-9)
      throw DataError("membership row for '" + names_[static_cast<std::size_t>(i)].str() +
                      "' is not on the simplex");
  }
}

std::optional<Eigen::Index> MembershipMatrix::index_of(const CharacterId& c) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), c);
  if (it == names_.end() || *it != c) return std::nullopt;
  return static_cast<Eigen::Index>(it - names_.begin());
}

Eigen::Vector3d MembershipMatrix::row(const CharacterId& c) const {
  const auto i = index_of(c);
  if (!i) throw DataError("no membership row for '" + c.str() + "'");
  return values_.row(*i).transpose();
}

HardLabel harden_row(const Eigen::Vector3d& row) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (row(i) > row(best) + 1e-12) best = i;
  return {static_cast<Group>(best), row(best)};
}

MembershipMatrix first_box(const std::map<CharacterId, CharacterFeatureStats>& stats,
                           const GroupCenters<double>& centers) {
  if (!centers.distinct()) throw ConfigError("group centers must be pairwise distinct");
  std::vector<CharacterId> names;
  MembershipMatrix::Values values(static_cast<Eigen::Index>(stats.size()), 3);
  Eigen::Index i = 0;
  for (const auto& [id, s] : stats) {
    if (!s.x.allFinite()) throw DataError("non-finite feature vector for '" + id.str() + "'");
    names.push_back(id);
    values.row(i++) = membership(s.x, centers).transpose();
  }
  return MembershipMatrix(std::move(names), std::move(values), MembershipStage::kFirst);
}

MembershipMatrix second_box(const MembershipMatrix& m1, const RelationMatrix& r, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  const auto simplex = GroupCenters<double>::identity();
  MembershipMatrix::Values values(m1.size(), 3);
  for (Eigen::Index i = 0; i < m1.size(); ++i) {
    const Eigen::Vector3d own = m1.values().row(i).transpose();
    Eigen::Vector3d y = own;
    if (const auto partners = neighbor_profile(r, m1, m1.names()[i]))
      y = (1.0 - lambda) * own + lambda * *partners;
    values.row(i) = membership(y, simplex).transpose();
  }
  return MembershipMatrix(m1.names(), std::move(values), MembershipStage::kSecond);
}

std::map<CharacterId, HardLabel> harden(const MembershipMatrix& m) {
  std::map<CharacterId, HardLabel> out;
  for (Eigen::Index i = 0; i < m.size(); ++i)
    out.emplace(m.names()[i], harden_row(m.values().row(i).transpose()));
  return out;
}

std::map<CharacterId, Group> labels_of(const std::map<CharacterId, HardLabel>& hard) {
  std::map<CharacterId, Group> out;
  for (const auto& [id, h] : hard) out.emplace(id, h.label);
  return out;
}

double accuracy(const std::map<CharacterId, Group>& predicted,
                const std::map<CharacterId, Group>& gold) {
  if (predicted.size() != gold.size()) throw DataError("label sets differ in size");
  if (gold.empty()) throw DataError("no labels to compare");
  std::size_t hits = 0;
  auto p = predicted.begin();
  for (auto g = gold.begin(); g != gold.end(); ++g, ++p) {
    if (p->first != g->first) throw DataError("label sets differ at '" + g->first.str() + "'");
    hits += p->second == g->second;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

std::string membership_to_csv(const MembershipMatrix& m) {
  std::string out = "character,mu_gang,mu_police,mu_informant,label\n";
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Eigen::Vector3d row = m.values().row(i).transpose();
    out += m.names()[i].str();
    for (int k = 0; k < 3; ++k) out += "," + detail::format_double(row(k));
    out += ",";
    out += to_string(harden_row(row).label);
    out += '\n';
  }
  return out;
}

std::map<CharacterId, Group> parse_label_csv(std::string_view csv) {
  std::map<CharacterId, Group> out;
  const auto lines = detail::split_lines(csv);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = detail::strip_comment(lines[n]);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line, ',');
    if (out.empty() && detail::is_header_row(fields)) continue;
    if (fields.size() < 2) throw ParseError(n + 1, "expected 'NAME,...,LABEL'");
    const auto group = parse_group(fields.back());
    if (!group) throw ParseError(n + 1, "unknown label '" + std::string(fields.back()) + "'");
    const CharacterId id(fields.front());
    if (!out.emplace(id, *group).second)
      throw ParseError(n + 1, "duplicate entry for '" + id.str() + "'");
  }
  return out;
}

std::map<CharacterId, Group> load_label_csv(const std::string& path) {
  try {
    return parse_label_csv(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

}  // namespace subgroup
