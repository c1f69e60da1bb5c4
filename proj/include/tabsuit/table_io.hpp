#pragma once

#include <string>

#include "tabsuit/cell.hpp"

namespace tabsuit {

enum class TableFormat { Csv, JsonLines };

// Typing rules shared by both formats: a field becomes Number when the whole
// string parses as a finite decimal, Missing when empty or the "NA" sentinel,
// Text otherwise. Literals that parse numeric but non-finite ("inf", "nan",
// "1e999") are rejected.
Cell parse_cell_text(const std::string& field);

Table load_table(const std::string& path, TableFormat format);

// Parse from an in-memory buffer (used by tests and the loaders above).
Table parse_csv(const std::string& content);
Table parse_json_lines(const std::string& content);

// Infers format from the file extension (.csv / .jsonl / .ndjson).
TableFormat format_from_path(const std::string& path);

}  // namespace tabsuit
