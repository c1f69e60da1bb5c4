#include "tabsuit/task.hpp"

#include <algorithm>

#include "tabsuit/errors.hpp"
#include "tabsuit/rng.hpp"

namespace tabsuit {

namespace {

int label_for(const Cell& cell, const BinarizationRule& rule) {
    if (const auto* above = std::get_if<AboveMedian>(&rule)) {
        if (!is_number(cell)) raise(Errc::InvalidArgument, "median rule on a non-numeric cell");
        return as_number(cell) > above->median ? 1 : 0;
    }
    if (const auto* mode = std::get_if<EqualsMode>(&rule)) {
        return cell == mode->mode ? 1 : 0;
    }
    return cell == std::get<Designated>(rule).positive_value ? 1 : 0;
}

std::vector<std::string> feature_set(const DatasetProfile& dataset, const std::string& target,
                                     bool drop_designated) {
    std::vector<std::string> features;
    features.reserve(dataset.table.columns.size());
    for (const auto& col : dataset.table.columns) {
        if (col.name == target) continue;
        if (drop_designated && dataset.designated_target && col.name == *dataset.designated_target) continue;
        features.push_back(col.name);
    }
    return features;
}

}  // namespace

std::vector<std::string> eligible_features(const std::vector<ColumnProfile>& profiles) {
    if (profiles.empty()) raise(Errc::EmptyInput, "no column profiles");
    std::vector<std::string> survivors;
    for (const auto& p : profiles) {
        if (p.missing_fraction > 0.70) continue;
        if (p.kind == ColumnKind::Categorical && (p.mode_fraction > 0.99 || p.mode_fraction < 0.10)) continue;
        survivors.push_back(p.name);
    }
    return survivors;
}

BinarizationResult binarize_target(const std::vector<Cell>& values, const ColumnProfile& profile) {
    BinarizationResult result;
    if (profile.kind == ColumnKind::Continuous) {
        if (!profile.median) raise(Errc::InvalidArgument, "continuous profile lacks a median");
        result.rule = AboveMedian{*profile.median};
    } else {
        if (is_missing(profile.mode_value)) raise(Errc::DegenerateTask, "no mode for column " + profile.name);
        result.rule = EqualsMode{profile.mode_value};
    }

    for (std::size_t i = 0; i < values.size(); ++i) {
        if (is_missing(values[i])) continue;
        result.kept_row_indices.push_back(i);
        result.labels.push_back(label_for(values[i], result.rule));
    }
    if (result.labels.size() < 2) {
        raise(Errc::TooFewRows, "fewer than two non-missing target values in " + profile.name);
    }
    const int first = result.labels.front();
    const bool single_class =
        std::all_of(result.labels.begin(), result.labels.end(), [&](int l) { return l == first; });
    if (single_class) raise(Errc::DegenerateTask, "all labels identical for " + profile.name);
    return result;
}

std::vector<TaskSpec> build_masked_tasks(const DatasetProfile& dataset, std::size_t k, std::uint64_t seed) {
    if (k < 1) raise(Errc::InvalidArgument, "k must be >= 1");

    std::vector<std::string> candidates;
    for (const auto& name : eligible_features(dataset.profiles)) {
        if (dataset.designated_target && name == *dataset.designated_target) continue;
        candidates.push_back(name);
    }
    if (candidates.empty()) raise(Errc::NoEligibleFeatures, "dataset " + dataset.name);

    std::vector<std::size_t> chosen = sample_indices(candidates.size(), std::min(k, candidates.size()), seed);

    std::vector<TaskSpec> tasks;
    tasks.reserve(chosen.size());
    for (std::size_t idx : chosen) {
        const std::string& target = candidates[idx];
        const ColumnProfile& profile = dataset.profile_for(target);

        TaskSpec spec;
        spec.task_id = dataset.name + ":proxy:" + target;
        spec.dataset = &dataset;
        spec.target_column = target;
        spec.feature_columns = feature_set(dataset, target, /*drop_designated=*/true);
        spec.is_proxy = true;
        spec.positive_text = "Yes";
        spec.negative_text = "No";
        if (profile.kind == ColumnKind::Continuous) {
            spec.rule = AboveMedian{*profile.median};
            spec.question = "Is the value of " + target + " greater than " + render_number(*profile.median) + "?";
        } else {
            spec.rule = EqualsMode{profile.mode_value};
            spec.question = "Is the value of " + target + " equal to '" + cell_to_string(profile.mode_value) + "'?";
        }
        tasks.push_back(std::move(spec));
    }
    return tasks;
}

TaskSpec build_primary_task(const DatasetProfile& dataset) {
    if (!dataset.designated_target) raise(Errc::MissingMetadata, "no designated target for " + dataset.name);
    if (!dataset.label_texts) raise(Errc::MissingMetadata, "no label texts for " + dataset.name);
    if (!dataset.question) raise(Errc::MissingMetadata, "no question for " + dataset.name);
    if (!dataset.positive_value) raise(Errc::MissingMetadata, "no positive value for " + dataset.name);
    if (!dataset.unlabeled && dataset.table.find_column(*dataset.designated_target) < 0) {
        raise(Errc::InvalidArgument, "target column not in table: " + *dataset.designated_target);
    }

    TaskSpec spec;
    spec.task_id = dataset.name + ":primary:" + *dataset.designated_target;
    spec.dataset = &dataset;
    spec.target_column = *dataset.designated_target;
    spec.rule = Designated{*dataset.positive_value};
    spec.feature_columns = feature_set(dataset, spec.target_column, /*drop_designated=*/false);
    spec.question = *dataset.question;
    spec.positive_text = dataset.label_texts->positive;
    spec.negative_text = dataset.label_texts->negative;
    spec.is_proxy = false;
    return spec;
}

LabeledTask materialize(const TaskSpec& spec) {
    if (spec.dataset == nullptr) raise(Errc::InvalidArgument, "task spec has no dataset");
    const Column& target = spec.dataset->table.column(spec.target_column);

    LabeledTask task;
    task.spec = spec;
    std::vector<int> labels;
    for (std::size_t i = 0; i < target.values.size(); ++i) {
        if (is_missing(target.values[i])) continue;
        task.row_indices.push_back(i);
        labels.push_back(label_for(target.values[i], spec.rule));
    }
    if (labels.empty()) raise(Errc::TooFewRows, "no non-missing target values for " + spec.task_id);
    const int first = labels.front();
    if (std::all_of(labels.begin(), labels.end(), [&](int l) { return l == first; })) {
        raise(Errc::DegenerateTask, "all labels identical for " + spec.task_id);
    }
    task.labels = std::move(labels);
    return task;
}

LabeledTask materialize_unlabeled(const TaskSpec& spec) {
    if (spec.dataset == nullptr) raise(Errc::InvalidArgument, "task spec has no dataset");
    LabeledTask task;
    task.spec = spec;
    task.row_indices.resize(spec.dataset->table.row_count());
    for (std::size_t i = 0; i < task.row_indices.size(); ++i) task.row_indices[i] = i;
    if (task.row_indices.empty()) raise(Errc::TooFewRows, "empty table for " + spec.task_id);
    return task;
}

}  // namespace tabsuit
