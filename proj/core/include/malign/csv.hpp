#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace malign {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

/// RFC-4180 writer: fields containing comma, quote, CR or LF are quoted and
/// embedded quotes doubled. Rows end in "\n".
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(std::initializer_list<std::string_view> fields);
  void row(const std::vector<std::string>& fields);
  /// A "# key=value" comment line, used for the schema version header.
  void comment(std::string_view text);

 private:
  void field(std::string_view value, bool first);
  std::ostream& out_;
};

/// Parses one RFC-4180 document into rows, skipping lines that start with '#'.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace malign
