#pragma once

#include <charconv>
#include <optional>
#include <string_view>
#include <system_error>
#include <vector>

namespace homog1d::detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// Accepts a plain number or a ratio "a/b".
inline std::optional<double> parse_ratio(std::string_view s) {
  s = trim(s);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_double(s);
  const auto num = parse_double(s.substr(0, slash));
  const auto den = parse_double(s.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

template <class Parse>
std::optional<std::vector<double>> parse_list(std::string_view s, Parse parse) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    const auto v = parse(s.substr(0, comma));
    if (!v) return std::nullopt;
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

inline std::optional<std::vector<double>> parse_double_list(std::string_view s) {
  return parse_list(s, [](std::string_view t) { return parse_double(t); });
}

inline std::optional<std::vector<double>> parse_ratio_list(std::string_view s) {
  return parse_list(s, [](std::string_view t) { return parse_ratio(t); });
}

}  // namespace homog1d::detail
