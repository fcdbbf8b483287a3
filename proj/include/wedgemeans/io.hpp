#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"

namespace wedgemeans {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& token, int line, const std::string& field) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a number in field '" + field + "', got '" + token + "'",
                     line, field);
  }
  if (pos != token.size()) {
    throw ParseError("trailing characters after number in field '" + field + "': '" +
                         token + "'",
                     line, field);
  }
  return v;
}

inline std::vector<double> split_numbers(const std::string& line_text, char sep, int line,
                                         const std::string& field) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(line_text);
  if (sep == ' ') {
    while (in >> token) out.push_back(parse_number(token, line, field));
  } else {
    while (std::getline(in, token, sep)) {
      token = trim(token);
      if (token.empty()) {
        throw ParseError("empty entry in field '" + field + "'", line, field);
      }
      out.push_back(parse_number(token, line, field));
    }
  }
  return out;
}

}  // namespace detail

/// Reads a vector family from text. Two layouts are accepted:
///  - structured: "dim D", "count M", "vectors", then M rows of D
///    comma-separated coordinates;
///  - tabular: one vector per line, whitespace-separated coordinates.
/// Blank lines and lines starting with '#' are ignored.
inline VectorFamily read_family(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;  // (line number, text)
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string t = detail::trim(raw);
    if (t.empty() || t[0] == '#') continue;
    lines.emplace_back(line_no, t);
  }
  if (lines.empty()) throw ParseError("empty input", line_no, "file");

  const bool structured = lines.front().second.rfind("dim", 0) == 0;
  if (!structured) {
    std::vector<std::vector<double>> rows;
    for (const auto& [ln, text] : lines) {
      rows.push_back(detail::split_numbers(text, ' ', ln, "vector"));
      if (rows.back().empty() || rows.back().size() != rows.front().size()) {
        throw ParseError("inconsistent vector width", ln, "vector");
      }
    }
    return VectorFamily::from_rows(rows);
  }

  std::size_t at = 0;
  const auto take = [&](const std::string& field) -> std::pair<int, std::string> {
    if (at >= lines.size()) {
      throw ParseError("unexpected end of input while reading '" + field + "'",
                       lines.back().first, field);
    }
    return lines[at++];
  };

  const auto read_int_field = [&](const std::string& field) {
    auto [ln, text] = take(field);
    if (text.rfind(field, 0) != 0) {
      throw ParseError("expected '" + field + " <value>', got '" + text + "'", ln, field);
    }
    const std::string rest = detail::trim(text.substr(field.size()));
    const double v = detail::parse_number(rest, ln, field);
    const int i = static_cast<int>(v);
    if (v != i || i < 1) {
      throw ParseError("field '" + field + "' must be a positive integer", ln, field);
    }
    return i;
  };

  const int dim = read_int_field("dim");
  const int count = read_int_field("count");
  {
    auto [ln, text] = take("vectors");
    if (text != "vectors") {
      throw ParseError("expected 'vectors' header, got '" + text + "'", ln, "vectors");
    }
  }
  std::vector<std::vector<double>> rows;
  for (int r = 0; r < count; ++r) {
    auto [ln, text] = take("vector row");
    rows.push_back(detail::split_numbers(text, ',', ln, "vector row"));
    if (static_cast<int>(rows.back().size()) != dim) {
      throw ParseError("vector row has " + std::to_string(rows.back().size()) +
                           " coordinates, expected " + std::to_string(dim),
                       ln, "vector row");
    }
  }
  if (at != lines.size()) {
    throw ParseError("unexpected trailing content", lines[at].first, "file");
  }
  return VectorFamily::from_rows(rows);
}

inline VectorFamily read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, "file");
  return read_family(in);
}

inline std::string format_17g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes the structured layout with 17 significant digits per coordinate,
/// enough for exact double round-trips. Comment lines go first.
inline void write_family(std::ostream& out, const VectorFamily& family,
                         const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "dim " << family.dim() << "\n";
  out << "count " << family.count() << "\n";
  out << "vectors\n";
  for (int j = 0; j < family.count(); ++j) {
    for (int i = 0; i < family.dim(); ++i) {
      if (i > 0) out << ",";
      out << format_17g(family.vector(j)(i));
    }
    out << "\n";
  }
}

inline void write_family_file(const std::string& path, const VectorFamily& family,
                              const std::vector<std::string>& comments = {}) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_family(out, family, comments);
}

}  // namespace wedgemeans
