#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace tabsuit {

// A table cell: missing, a finite 64-bit float, or text. Non-finite numbers
// are rejected at load time, so Number cells are always finite.
using Cell = std::variant<std::monostate, double, std::string>;

inline Cell missing_cell() { return Cell{std::monostate{}}; }
inline Cell number_cell(double v) { return Cell{v}; }
inline Cell text_cell(std::string s) { return Cell{std::move(s)}; }

inline bool is_missing(const Cell& c) { return std::holds_alternative<std::monostate>(c); }
inline bool is_number(const Cell& c) { return std::holds_alternative<double>(c); }
inline bool is_text(const Cell& c) { return std::holds_alternative<std::string>(c); }

inline double as_number(const Cell& c) { return std::get<double>(c); }
inline const std::string& as_text(const Cell& c) { return std::get<std::string>(c); }

// Renders a double with up to 6 significant digits, trailing zeros trimmed,
// integers without a decimal point ("%.6g").
std::string render_number(double v);

// Display form of a cell: numbers via render_number, text verbatim, missing
// as the empty string.
std::string cell_to_string(const Cell& c);

struct Column {
    std::string name;
    std::vector<Cell> values;
};

// Columnar table. All columns share the same length and unique non-empty
// names.
struct Table {
    std::vector<Column> columns;

    std::size_t row_count() const { return columns.empty() ? 0 : columns.front().values.size(); }
    std::size_t column_count() const { return columns.size(); }

    // Index of a column by name, -1 when absent.
    int find_column(const std::string& name) const;
    const Column& column(const std::string& name) const;

    void check_invariants() const;  // throws on ragged columns or bad names
};

}  // namespace tabsuit
