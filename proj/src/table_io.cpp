#include "delta/table_io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace delta {

namespace {

bool is_number_token(const std::string& tok) {
    if (tok.empty()) return false;
    char* end = nullptr;
    std::strtod(tok.c_str(), &end);
    return end != nullptr && *end == '\0';
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ContingencyTable parse_table_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> tokens;
        std::string tok;
        std::istringstream ls(t);
        while (std::getline(ls, tok, ',')) tokens.push_back(trim(tok));
        if (first_data_line) {
            first_data_line = false;
            bool all_numbers = true;
            for (const auto& v : tokens) {
                if (!is_number_token(v)) all_numbers = false;
            }
            if (!all_numbers) continue;  // header row
        }
        std::vector<double> row;
        for (size_t c = 0; c < tokens.size(); ++c) {
            if (!is_number_token(tokens[c])) {
                throw ParseError("line " + std::to_string(line_no) + ", column " +
                                 std::to_string(c + 1) + ": not a number: '" + tokens[c] + "'");
            }
            row.push_back(std::stod(tokens[c]));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " cells, got " +
                             std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows found");
    if (rows.size() != rows.front().size()) {
        throw ParseError("table is not square: " + std::to_string(rows.size()) + " rows of " +
                         std::to_string(rows.front().size()) + " cells");
    }
    try {
        return ContingencyTable::from_cells(rows);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

ContingencyTable parse_table_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const nlohmann::json* cells = nullptr;
    if (j.is_object() && j.contains("cells")) {
        cells = &j["cells"];
    } else if (j.is_array()) {
        cells = &j;
    } else {
        throw ParseError("expected {\"cells\": [[...]]} or a bare array of rows");
    }
    if (!cells->is_array()) throw ParseError("\"cells\" must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < cells->size(); ++i) {
        const auto& jr = (*cells)[i];
        if (!jr.is_array()) {
            throw ParseError("row " + std::to_string(i + 1) + " is not an array");
        }
        std::vector<double> row;
        for (size_t c = 0; c < jr.size(); ++c) {
            if (!jr[c].is_number()) {
                throw ParseError("row " + std::to_string(i + 1) + ", column " +
                                 std::to_string(c + 1) + ": not a number");
            }
            row.push_back(jr[c].get<double>());
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("row " + std::to_string(i + 1) + ": expected " +
                             std::to_string(rows.front().size()) + " cells, got " +
                             std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty \"cells\" array");
    if (rows.size() != rows.front().size()) {
        throw ParseError("table is not square: " + std::to_string(rows.size()) + " rows of " +
                         std::to_string(rows.front().size()) + " cells");
    }
    try {
        return ContingencyTable::from_cells(rows);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

ContingencyTable parse_table(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{' || ch == '[') return parse_table_json(text);
        break;
    }
    return parse_table_csv(text);
}

ContingencyTable load_table_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_table(buf.str());
}

std::string table_to_csv(const ContingencyTable& table) {
    std::ostringstream out;
    for (int i = 0; i < table.k(); ++i) {
        for (int j = 0; j < table.k(); ++j) {
            if (j) out << ",";
            out << table.cell(i, j);
        }
        out << "\n";
    }
    return out.str();
}

std::string table_to_json(const ContingencyTable& table) {
    nlohmann::json j;
    j["cells"] = table.cells();
    return j.dump();
}

}  // namespace delta
