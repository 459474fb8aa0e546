#include "malign/csv.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace malign {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void CsvWriter::field(std::string_view value, bool first) {
  if (!first) out_ << ',';
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    out_ << value;
    return;
  }
  out_ << '"';
  for (char c : value) {
    if (c == '"') out_ << '"';
    out_ << c;
  }
  out_ << '"';
}

void CsvWriter::row(std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    field(f, first);
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  bool first = true;
  for (const auto& f : fields) {
    field(f, first);
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::comment(std::string_view text) { out_ << "# " << text << '\n'; }

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      ++i;
      continue;
    }
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            cell += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.push_back(std::move(cell));
        cell.clear();
      } else if (c == '\n') {
        break;
      } else if (c != '\r') {
        cell += c;
      }
    }
    if (quoted) throw std::invalid_argument("parse_csv: unterminated quoted field");
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
    ++i;
  }
  return rows;
}

}  // namespace malign
