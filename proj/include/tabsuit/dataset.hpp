#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tabsuit/cell.hpp"

namespace tabsuit {

enum class ColumnKind { Continuous, Categorical };

struct ColumnProfile {
    std::string name;
    ColumnKind kind = ColumnKind::Categorical;
    double missing_fraction = 0.0;
    Cell mode_value = missing_cell();
    double mode_fraction = 0.0;           // over non-missing rows
    std::optional<double> median;         // continuous columns only
    std::size_t distinct_count = 0;       // distinct non-missing values
};

struct LabelTexts {
    std::string positive;
    std::string negative;
};

// A loaded table plus its inferred schema and the task metadata from the
// JSON sidecar (all optional; required pieces are checked when the primary
// task is built).
struct DatasetProfile {
    std::string name;
    std::string description;  // free text shown to the LLM
    Table table;
    std::vector<ColumnProfile> profiles;
    std::optional<std::string> designated_target;
    std::optional<LabelTexts> label_texts;
    std::optional<Cell> positive_value;  // target cell value treated as the positive class
    std::optional<std::string> question;
    bool unlabeled = false;  // screening mode: never read the target column's values

    const ColumnProfile& profile_for(const std::string& column) const;
};

// Per-column kind overrides from the sidecar; names absent from the map keep
// the inferred kind.
struct SchemaOverrides {
    std::vector<std::string> force_continuous;
    std::vector<std::string> force_categorical;
};

// A column is Continuous iff every non-missing cell is a Number and the
// distinct count exceeds the threshold; otherwise Categorical. Median is the
// linearly interpolated central order statistic, mode ties break on first
// appearance in column order.
std::vector<ColumnProfile> infer_schema(const Table& table, std::size_t categorical_max_distinct = 10);

std::vector<ColumnProfile> infer_schema(const Table& table, std::size_t categorical_max_distinct,
                                        const SchemaOverrides& overrides);

// Uniform sample of n rows without replacement, preserving source order.
// Tables with at most n rows pass through unchanged.
Table sample_rows(const Table& table, std::size_t n, std::uint64_t seed);

// Sidecar metadata (JSON) applied to a loaded table. Schema:
//   {"name": str, "description": str, "target": str?, "positive_value": str|num?,
//    "labels": {"positive": str, "negative": str}?, "question": str?,
//    "unlabeled": bool?, "continuous_columns": [str]?, "categorical_columns": [str]?}
DatasetProfile load_dataset(const std::string& data_path, const std::string& metadata_path,
                            std::size_t categorical_max_distinct = 10);

DatasetProfile apply_metadata_json(Table table, const std::string& metadata_json,
                                   std::size_t categorical_max_distinct = 10);

}  // namespace tabsuit
