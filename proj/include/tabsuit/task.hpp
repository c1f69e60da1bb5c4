#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tabsuit/dataset.hpp"

namespace tabsuit {

// How a target column's values map to {0, 1}.
struct AboveMedian {
    double median;  // label 1 iff value > median, strictly
};
struct EqualsMode {
    Cell mode;
};
struct Designated {
    Cell positive_value;
};
using BinarizationRule = std::variant<AboveMedian, EqualsMode, Designated>;

struct TaskSpec {
    std::string task_id;
    const DatasetProfile* dataset = nullptr;
    std::string target_column;
    BinarizationRule rule;
    std::vector<std::string> feature_columns;  // never contains the target
    std::string question;
    std::string positive_text;
    std::string negative_text;
    bool is_proxy = false;
};

// Materialized rows and labels for one task. Rows are indices into the
// dataset's table; labels are absent for unlabeled screening runs.
struct LabeledTask {
    TaskSpec spec;
    std::vector<std::size_t> row_indices;
    std::optional<std::vector<int>> labels;  // aligned with row_indices when present

    std::size_t size() const { return row_indices.size(); }
};

struct BinarizationResult {
    std::vector<int> labels;
    BinarizationRule rule;
    std::vector<std::size_t> kept_row_indices;  // rows whose target was not missing
};

// Masking eligibility (strict boundaries): excludes columns with
// missing_fraction > 0.70 and categorical columns with mode_fraction > 0.99
// or < 0.10. Survivors keep their original column order.
std::vector<std::string> eligible_features(const std::vector<ColumnProfile>& profiles);

// Continuous columns binarize strictly above the median, categorical columns
// against the mode. Rows with a missing target are dropped and reported via
// kept_row_indices.
BinarizationResult binarize_target(const std::vector<Cell>& values, const ColumnProfile& profile);

// One proxy task per sampled eligible column (the designated target is never
// a proxy target nor a proxy feature). Samples min(k, available) columns
// without replacement; emitted in original column order.
std::vector<TaskSpec> build_masked_tasks(const DatasetProfile& dataset, std::size_t k, std::uint64_t seed);

TaskSpec build_primary_task(const DatasetProfile& dataset);

// Applies the spec's rule to produce aligned rows and labels; throws
// DegenerateTask when only one class survives.
LabeledTask materialize(const TaskSpec& spec);

// Screening-mode variant: all rows kept, no labels, target values never read.
LabeledTask materialize_unlabeled(const TaskSpec& spec);

}  // namespace tabsuit
