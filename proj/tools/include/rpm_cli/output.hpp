#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace rpm::cli {

using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// What a command produced. `json` is always filled; `table` backs
/// --format csv and `text` backs --format text.
struct Report {
  Json json;
  Table table;
  std::string text;
};

/// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or
/// line break.
std::string to_csv(const Table& t);

}  // namespace rpm::cli
