#ifndef WIDEBAND_SPEC_FILE_HPP
#define WIDEBAND_SPEC_FILE_HPP

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wideband/channel.hpp"
#include "wideband/errors.hpp"

namespace wideband {
namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string strip_comment(std::string_view line) {
  const auto pos = line.find('#');
  return std::string(pos == std::string_view::npos ? line : line.substr(0, pos));
}

inline double parse_spec_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw spec_parse_error("channel spec: empty value for '" + key + "'");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw spec_parse_error("channel spec: '" + key + "' is not a number: " + t);
  return v;
}

inline std::string parse_spec_string(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '"' || t.back() != '"')
    throw spec_parse_error("channel spec: '" + key + "' must be a quoted string");
  return t.substr(1, t.size() - 2);
}

// Parses [[snr, capacity], ...]; whitespace (including newlines) is free.
inline std::vector<CapacitySample> parse_spec_points(const std::string& text) {
  std::vector<CapacitySample> samples;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  const auto expect = [&](char c) {
    skip_ws();
    if (i >= text.size() || text[i] != c)
      throw spec_parse_error(std::string("channel spec: expected '") + c + "' in points array");
    ++i;
  };
  const auto number = [&] {
    skip_ws();
    char* end = nullptr;
    const double v = std::strtod(text.c_str() + i, &end);
    if (end == text.c_str() + i)
      throw spec_parse_error("channel spec: expected a number in points array");
    i = static_cast<std::size_t>(end - text.c_str());
    return v;
  };
  expect('[');
  skip_ws();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    while (true) {
      expect('[');
      const double snr = number();
      expect(',');
      const double cap = number();
      expect(']');
      samples.push_back({snr, cap});
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      break;
    }
  }
  skip_ws();
  if (i != text.size())
    throw spec_parse_error("channel spec: trailing characters after points array");
  return samples;
}

}  // namespace detail

/// Parses the channel spec format: one `key = value` per line, `#` comments,
/// and a points array that may span lines. Keys: kind ("awgn" or
/// "tabulated"), gain (awgn), points (tabulated), and the optional declared
/// pair c1_prime / c2_double_prime (tabulated). Anything else is an error.
inline ChannelModel parse_channel_spec(std::string_view text) {
  std::map<std::string, std::string> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string s = detail::trim(detail::strip_comment(line));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw spec_parse_error("channel spec: expected 'key = value': " + s);
    const std::string key = detail::trim(s.substr(0, eq));
    std::string value = detail::trim(s.substr(eq + 1));
    if (key.empty()) throw spec_parse_error("channel spec: missing key");
    // a points array may continue on following lines until brackets balance
    long depth = 0;
    for (char c : value) depth += (c == '[') - (c == ']');
    while (depth > 0 && std::getline(in, line)) {
      const std::string cont = detail::strip_comment(line);
      for (char c : cont) depth += (c == '[') - (c == ']');
      value += '\n' + cont;
    }
    if (depth != 0) throw spec_parse_error("channel spec: unbalanced brackets in '" + key + "'");
    if (!entries.emplace(key, value).second)
      throw spec_parse_error("channel spec: duplicate key '" + key + "'");
  }

  const auto take = [&](const char* key) -> std::optional<std::string> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    std::string v = it->second;
    entries.erase(it);
    return v;
  };

  const auto kind_text = take("kind");
  if (!kind_text) throw spec_parse_error("channel spec: missing 'kind'");
  const std::string kind = detail::parse_spec_string("kind", *kind_text);

  ChannelModel model = ChannelModel::awgn(1.0);
  if (kind == "awgn") {
    const auto gain = take("gain");
    if (!gain) throw spec_parse_error("channel spec: awgn channels require 'gain'");
    model = ChannelModel::awgn(detail::parse_spec_double("gain", *gain));
  } else if (kind == "tabulated") {
    const auto points = take("points");
    if (!points) throw spec_parse_error("channel spec: tabulated channels require 'points'");
    const auto c1 = take("c1_prime");
    const auto c2 = take("c2_double_prime");
    if (c1.has_value() != c2.has_value())
      throw spec_parse_error(
          "channel spec: c1_prime and c2_double_prime must be declared together");
    std::optional<DerivativesAtZero> declared;
    if (c1)
      declared.emplace(detail::parse_spec_double("c1_prime", *c1),
                       detail::parse_spec_double("c2_double_prime", *c2));
    model = ChannelModel::tabulated(detail::parse_spec_points(*points), declared);
  } else {
    throw spec_parse_error("channel spec: unknown kind '" + kind + "'");
  }

  if (!entries.empty())
    throw spec_parse_error("channel spec: unknown key '" + entries.begin()->first + "'");
  return model;
}

/// Loads and parses a channel spec file from disk.
inline ChannelModel load_channel_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spec_parse_error("channel spec: cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_spec(buf.str());
}

}  // namespace wideband

#endif
