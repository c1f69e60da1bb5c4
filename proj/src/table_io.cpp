#include "tabsuit/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tabsuit/errors.hpp"

namespace tabsuit {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoFailure, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) raise(Errc::IoFailure, "read error on " + path);
    return buf.str();
}

// RFC 4180 record reader: quoted fields may contain commas, quotes ("") and
// newlines. Returns false at end of input.
bool next_record(const std::string& s, std::size_t& pos, std::vector<std::string>& fields) {
    fields.clear();
    if (pos >= s.size()) return false;

    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    while (pos < s.size()) {
        char c = s[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < s.size() && s[pos + 1] == '"') {
                    field += '"';
                    pos += 2;
                } else {
                    in_quotes = false;
                    ++pos;
                }
            } else {
                field += c;
                ++pos;
            }
            saw_any = true;
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            saw_any = true;
            ++pos;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            saw_any = true;
            ++pos;
        } else if (c == '\r' && pos + 1 < s.size() && s[pos + 1] == '\n') {
            pos += 2;
            fields.push_back(std::move(field));
            return true;
        } else if (c == '\n') {
            ++pos;
            fields.push_back(std::move(field));
            return true;
        } else {
            field += c;
            saw_any = true;
            ++pos;
        }
    }
    if (in_quotes) raise(Errc::ParseError, "unterminated quoted field");
    if (!saw_any && fields.empty()) return false;
    fields.push_back(std::move(field));
    return true;
}

Cell cell_from_json(const nlohmann::json& v) {
    if (v.is_null()) return missing_cell();
    if (v.is_number()) {
        double d = v.get<double>();
        if (!std::isfinite(d)) raise(Errc::NonFiniteNumeric, v.dump());
        return number_cell(d);
    }
    if (v.is_string()) return parse_cell_text(v.get<std::string>());
    if (v.is_boolean()) return text_cell(v.get<bool>() ? "true" : "false");
    raise(Errc::ParseError, "unsupported JSON cell type: " + v.dump());
}

}  // namespace

Cell parse_cell_text(const std::string& field) {
    if (field.empty() || field == "NA") return missing_cell();
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ptr == end) {
        if (ec == std::errc::result_out_of_range || (ec == std::errc() && !std::isfinite(value))) {
            raise(Errc::NonFiniteNumeric, field);
        }
        if (ec == std::errc()) return number_cell(value);
    }
    return text_cell(field);
}

Table parse_csv(const std::string& content) {
    std::size_t pos = 0;
    std::vector<std::string> fields;
    if (!next_record(content, pos, fields)) raise(Errc::ParseError, "empty CSV: no header row");

    Table table;
    table.columns.reserve(fields.size());
    for (auto& name : fields) {
        if (name.empty()) raise(Errc::ParseError, "empty column name in header");
        table.columns.push_back(Column{std::move(name), {}});
    }

    std::vector<std::string> row;
    std::size_t line = 1;
    while (next_record(content, pos, row)) {
        ++line;
        // A lone trailing newline yields one empty field; skip it.
        if (row.size() == 1 && row[0].empty() && pos >= content.size()) break;
        if (row.size() != table.columns.size()) {
            raise(Errc::RaggedRow, "record " + std::to_string(line) + " has " +
                                       std::to_string(row.size()) + " fields, expected " +
                                       std::to_string(table.columns.size()));
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            table.columns[c].values.push_back(parse_cell_text(row[c]));
        }
    }
    table.check_invariants();
    return table;
}

Table parse_json_lines(const std::string& content) {
    Table table;
    std::size_t n_rows = 0;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            raise(Errc::ParseError, std::string("bad JSON line: ") + e.what());
        }
        if (!obj.is_object()) raise(Errc::ParseError, "JSON line is not an object");

        for (auto& [key, value] : obj.items()) {
            int idx = table.find_column(key);
            if (idx < 0) {
                if (key.empty()) raise(Errc::ParseError, "empty column name");
                // New column: backfill earlier rows as missing.
                table.columns.push_back(Column{key, std::vector<Cell>(n_rows, missing_cell())});
                idx = static_cast<int>(table.columns.size()) - 1;
            }
            table.columns[static_cast<std::size_t>(idx)].values.push_back(cell_from_json(value));
        }
        ++n_rows;
        for (auto& col : table.columns) {
            if (col.values.size() < n_rows) col.values.push_back(missing_cell());
        }
    }
    if (n_rows == 0) raise(Errc::ParseError, "empty JSON-lines input");
    table.check_invariants();
    return table;
}

Table load_table(const std::string& path, TableFormat format) {
    const std::string content = read_file(path);
    return format == TableFormat::Csv ? parse_csv(content) : parse_json_lines(content);
}

TableFormat format_from_path(const std::string& path) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "jsonl" || ext == "ndjson") return TableFormat::JsonLines;
    return TableFormat::Csv;
}

}  // namespace tabsuit
