#include "tabsuit/cell.hpp"

#include <cstdio>
#include <set>

#include "tabsuit/errors.hpp"

namespace tabsuit {

std::string render_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string cell_to_string(const Cell& c) {
    if (is_missing(c)) return "";
    if (is_number(c)) return render_number(as_number(c));
    return as_text(c);
}

int Table::find_column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

const Column& Table::column(const std::string& name) const {
    int idx = find_column(name);
    if (idx < 0) raise(Errc::InvalidArgument, "no such column: " + name);
    return columns[static_cast<std::size_t>(idx)];
}

void Table::check_invariants() const {
    std::set<std::string> seen;
    const std::size_t n = row_count();
    for (const auto& col : columns) {
        if (col.name.empty()) raise(Errc::ParseError, "empty column name");
        if (!seen.insert(col.name).second) raise(Errc::DuplicateColumn, col.name);
        if (col.values.size() != n) raise(Errc::RaggedRow, "column " + col.name + " has uneven length");
    }
}

}  // namespace tabsuit
