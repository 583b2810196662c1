#pragma once
// Table parsing: CSV (K rows of K comma-separated non-negative numbers, with
// an optional header row auto-detected) and JSON ({"cells": [[...]]}).

#include <stdexcept>
#include <string>

#include "delta/contingency_table.hpp"

namespace delta {

// Parse errors carry a line/column diagnostic in the message.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ContingencyTable parse_table_csv(const std::string& text);
ContingencyTable parse_table_json(const std::string& text);

// Dispatch on content: leading '{' or '[' means JSON, anything else CSV.
ContingencyTable parse_table(const std::string& text);

ContingencyTable load_table_file(const std::string& path);

std::string table_to_csv(const ContingencyTable& table);
std::string table_to_json(const ContingencyTable& table);

}  // namespace delta
