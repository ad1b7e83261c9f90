#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subgroup/error.hpp"
#include "subgroup/labels.hpp"
#include "util.hpp"

namespace subgroup {

std::string_view to_string(Group g) noexcept {
  switch (g) {
    case Group::kGang: return "GANG";
    case Group::kPolice: return "POLICE";
    case Group::kInformant: return "INFORMANT";
  }
  return "GANG";
}

std::optional<Group> parse_group(std::string_view text) noexcept {
  const std::string up = detail::to_upper(detail::trim(text));
  if (up == "GANG") return Group::kGang;
  if (up == "POLICE") return Group::kPolice;
  if (up == "INFORMANT") return Group::kInformant;
  return std::nullopt;
}

namespace detail {

std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto at = line.find(sep, pos);
    fields.push_back(trim(line.substr(pos, at == std::string_view::npos ? std::string_view::npos : at - pos)));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return fields;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("short write to '" + path + "'");
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("invalid number for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

long long parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("invalid integer for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::string_view strip_comment(std::string_view line) noexcept {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return trim(line);
}

bool is_header_row(const std::vector<std::string_view>& fields) {
  if (fields.empty()) return false;
  const auto first = to_upper(trim(fields.front()));
  return first == "NAME" || first == "CHARACTER" || first == "MEMBER" || first == "SPEAKER";
}

}  // namespace detail
}  // namespace subgroup
