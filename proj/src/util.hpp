#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace subgroup::detail {

std::string_view trim(std::string_view s) noexcept;
std::string to_upper(std::string_view s);
std::string to_lower(std::string_view s);

/// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text);
/// Splits on `sep`, trimming each field.
std::vector<std::string_view> split_fields(std::string_view line, char sep);

/// Whole file; throws ConfigError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Shortest decimal that round-trips.
std::string format_double(double v);
double parse_double(std::string_view s, std::string_view what);
long long parse_int(std::string_view s, std::string_view what);

/// Removes `#` comments and surrounding blanks; empty result means skip.
std::string_view strip_comment(std::string_view line) noexcept;

/// True for a CSV header row: its first field names the character column.
bool is_header_row(const std::vector<std::string_view>& fields);

/// Runs body(i) for i in [0, n) on up to `jobs` threads.
template <typename Body>
void parallel_for(std::size_t n, unsigned jobs, Body&& body);

}  // namespace subgroup::detail

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace subgroup::detail {

template <typename Body>
void parallel_for(std::size_t n, unsigned jobs, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace subgroup::detail
