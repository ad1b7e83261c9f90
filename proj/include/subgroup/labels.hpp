#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace subgroup {

/// The three affiliations. The numeric order is the membership column order
/// and the tie-break order used when hardening.
enum class Group : int { kGang = 0, kPolice = 1, kInformant = 2 };

inline constexpr std::array<Group, 3> kAllGroups = {Group::kGang, Group::kPolice,
                                                    Group::kInformant};

std::string_view to_string(Group g) noexcept;

/// Accepts GANG, POLICE, INFORMANT (case-insensitive).
std::optional<Group> parse_group(std::string_view text) noexcept;

constexpr int index_of(Group g) noexcept { return static_cast<int>(g); }

}  // namespace subgroup
