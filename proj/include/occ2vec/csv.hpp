#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "occ2vec/error.hpp"
#include "occ2vec/text.hpp"

namespace occ2vec::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // source line of each row

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  }
};

/// RFC 4180: comma separated, double-quoted fields may hold commas, quotes
/// ("") and newlines. The first record is the header.
inline Table parse(std::string_view data, const std::string& what) {
  Table t;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false, field_started = false;
  std::size_t line = 1, record_line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) {
      if (t.header.empty() && t.rows.empty()) {
        for (auto& h : record) t.header.emplace_back(text::trim(h));
      } else {
        if (record.size() != t.header.size())
          throw InputError(what + ": row at line " + std::to_string(record_line) + " has " +
                           std::to_string(record.size()) + " fields, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(record));
        t.lines.push_back(record_line);
      }
    }
    record.clear();
    record_line = line;
  };

  if (text::starts_with(data, "\xEF\xBB\xBF")) data.remove_prefix(3);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      ++line;
      end_record();
    } else if (c == '\r') {
      // tolerated before \n
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw InputError(what + ": unterminated quoted field starting at line " + std::to_string(record_line));
  if (!field.empty() || !record.empty()) end_record();
  if (t.header.empty()) throw InputError(what + ": empty CSV (no header row)");
  return t;
}

inline Table read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

inline std::string escape(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

/// Fixed-point formatting with `decimals` places; -0 prints as 0.
inline std::string fixed(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

/// Accumulates rows and writes them in one go.
class Writer {
 public:
  explicit Writer(std::vector<std::string> header) { row(header); }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_.push_back(',');
      out_ += escape(fields[i]);
    }
    out_.push_back('\n');
  }

  const std::string& str() const noexcept { return out_; }

  void save(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + path.string());
    f << out_;
  }

 private:
  std::string out_;
};

}  // namespace occ2vec::csv
