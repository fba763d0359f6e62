#include "rpm_cli/output.hpp"

namespace rpm::cli {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += quote(row[i]);
  }
  out += "\r\n";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  append_row(out, t.header);
  for (const auto& row : t.rows) append_row(out, row);
  return out;
}

}  // namespace rpm::cli
