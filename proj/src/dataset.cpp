#include "tabsuit/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tabsuit/errors.hpp"
#include "tabsuit/rng.hpp"
#include "tabsuit/table_io.hpp"

namespace tabsuit {

namespace {

ColumnProfile profile_column(const Column& col, std::size_t categorical_max_distinct) {
    ColumnProfile p;
    p.name = col.name;

    const std::size_t n = col.values.size();
    std::size_t n_missing = 0;
    bool all_numeric = true;
    std::vector<double> numbers;
    std::map<Cell, std::size_t> counts;
    for (const auto& cell : col.values) {
        if (is_missing(cell)) {
            ++n_missing;
            continue;
        }
        if (is_number(cell)) {
            numbers.push_back(as_number(cell));
        } else {
            all_numeric = false;
        }
        ++counts[cell];
    }
    const std::size_t n_present = n - n_missing;
    p.missing_fraction = n == 0 ? 0.0 : static_cast<double>(n_missing) / static_cast<double>(n);
    p.distinct_count = counts.size();

    if (n_present > 0) {
        std::size_t best = 0;
        for (const auto& [cell, count] : counts) best = std::max(best, count);
        // First value in column order among tied counts.
        for (const auto& cell : col.values) {
            if (is_missing(cell)) continue;
            if (counts[cell] == best) {
                p.mode_value = cell;
                break;
            }
        }
        p.mode_fraction = static_cast<double>(best) / static_cast<double>(n_present);
    }

    const bool continuous = all_numeric && n_present > 0 && p.distinct_count > categorical_max_distinct;
    p.kind = continuous ? ColumnKind::Continuous : ColumnKind::Categorical;
    if (continuous) {
        std::sort(numbers.begin(), numbers.end());
        const std::size_t m = numbers.size();
        p.median = (m % 2 == 1) ? numbers[m / 2] : 0.5 * (numbers[m / 2 - 1] + numbers[m / 2]);
    }
    return p;
}

void force_kind(ColumnProfile& p, const Column& col, ColumnKind kind) {
    if (p.kind == kind) return;
    if (kind == ColumnKind::Continuous) {
        std::vector<double> numbers;
        for (const auto& cell : col.values) {
            if (is_missing(cell)) continue;
            if (!is_number(cell)) {
                raise(Errc::ConfigError, "column " + col.name + " cannot be forced continuous: non-numeric values");
            }
            numbers.push_back(as_number(cell));
        }
        if (numbers.empty()) raise(Errc::ConfigError, "column " + col.name + " has no values to take a median of");
        std::sort(numbers.begin(), numbers.end());
        const std::size_t m = numbers.size();
        p.median = (m % 2 == 1) ? numbers[m / 2] : 0.5 * (numbers[m / 2 - 1] + numbers[m / 2]);
    } else {
        p.median.reset();
    }
    p.kind = kind;
}

}  // namespace

const ColumnProfile& DatasetProfile::profile_for(const std::string& column) const {
    for (const auto& p : profiles) {
        if (p.name == column) return p;
    }
    raise(Errc::InvalidArgument, "no profile for column: " + column);
}

std::vector<ColumnProfile> infer_schema(const Table& table, std::size_t categorical_max_distinct) {
    return infer_schema(table, categorical_max_distinct, SchemaOverrides{});
}

std::vector<ColumnProfile> infer_schema(const Table& table, std::size_t categorical_max_distinct,
                                        const SchemaOverrides& overrides) {
    if (table.row_count() == 0) raise(Errc::EmptyTable, "cannot infer schema of an empty table");
    std::vector<ColumnProfile> profiles;
    profiles.reserve(table.columns.size());
    for (const auto& col : table.columns) {
        profiles.push_back(profile_column(col, categorical_max_distinct));
    }
    for (const auto& name : overrides.force_continuous) {
        int idx = table.find_column(name);
        if (idx < 0) raise(Errc::ConfigError, "continuous_columns override names unknown column: " + name);
        force_kind(profiles[static_cast<std::size_t>(idx)], table.columns[static_cast<std::size_t>(idx)],
                   ColumnKind::Continuous);
    }
    for (const auto& name : overrides.force_categorical) {
        int idx = table.find_column(name);
        if (idx < 0) raise(Errc::ConfigError, "categorical_columns override names unknown column: " + name);
        force_kind(profiles[static_cast<std::size_t>(idx)], table.columns[static_cast<std::size_t>(idx)],
                   ColumnKind::Categorical);
    }
    return profiles;
}

Table sample_rows(const Table& table, std::size_t n, std::uint64_t seed) {
    if (n < 1) raise(Errc::InvalidArgument, "sample size must be >= 1");
    if (table.row_count() <= n) return table;

    const auto keep = sample_indices(table.row_count(), n, seed);
    Table out;
    out.columns.reserve(table.columns.size());
    for (const auto& col : table.columns) {
        Column c{col.name, {}};
        c.values.reserve(keep.size());
        for (std::size_t idx : keep) c.values.push_back(col.values[idx]);
        out.columns.push_back(std::move(c));
    }
    return out;
}

DatasetProfile apply_metadata_json(Table table, const std::string& metadata_json,
                                   std::size_t categorical_max_distinct) {
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(metadata_json);
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::ConfigError, std::string("bad metadata JSON: ") + e.what());
    }
    if (!meta.is_object()) raise(Errc::ConfigError, "metadata must be a JSON object");

    DatasetProfile ds;
    ds.name = meta.value("name", std::string("dataset"));
    ds.description = meta.value("description", std::string{});
    ds.unlabeled = meta.value("unlabeled", false);

    SchemaOverrides overrides;
    if (meta.contains("continuous_columns")) {
        overrides.force_continuous = meta["continuous_columns"].get<std::vector<std::string>>();
    }
    if (meta.contains("categorical_columns")) {
        overrides.force_categorical = meta["categorical_columns"].get<std::vector<std::string>>();
    }

    if (meta.contains("target")) {
        ds.designated_target = meta["target"].get<std::string>();
        if (!ds.unlabeled && table.find_column(*ds.designated_target) < 0) {
            raise(Errc::ConfigError, "target column not in table: " + *ds.designated_target);
        }
    }
    if (meta.contains("labels")) {
        const auto& labels = meta["labels"];
        if (!labels.contains("positive") || !labels.contains("negative")) {
            raise(Errc::ConfigError, "labels must provide positive and negative texts");
        }
        ds.label_texts = LabelTexts{labels["positive"].get<std::string>(), labels["negative"].get<std::string>()};
    }
    if (meta.contains("question")) ds.question = meta["question"].get<std::string>();
    if (meta.contains("positive_value")) {
        const auto& pv = meta["positive_value"];
        if (pv.is_number()) {
            ds.positive_value = number_cell(pv.get<double>());
        } else if (pv.is_string()) {
            ds.positive_value = parse_cell_text(pv.get<std::string>());
        } else {
            raise(Errc::ConfigError, "positive_value must be a string or number");
        }
    } else if (ds.label_texts) {
        // Default: the positive label text, typed by the usual cell rules.
        ds.positive_value = parse_cell_text(ds.label_texts->positive);
    }

    ds.table = std::move(table);
    ds.profiles = infer_schema(ds.table, categorical_max_distinct, overrides);
    return ds;
}

DatasetProfile load_dataset(const std::string& data_path, const std::string& metadata_path,
                            std::size_t categorical_max_distinct) {
    Table table = load_table(data_path, format_from_path(data_path));
    std::ifstream in(metadata_path);
    if (!in) raise(Errc::IoFailure, "cannot open metadata: " + metadata_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return apply_metadata_json(std::move(table), buf.str(), categorical_max_distinct);
}

}  // namespace tabsuit
