#include "tabsuit/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "tabsuit/errors.hpp"
#include "tabsuit/metrics.hpp"
#include "tabsuit/rng.hpp"
#include "tabsuit/synthetic.hpp"

namespace tabsuit {

namespace {

double mean_of(std::span<const double> v, std::span<const std::size_t> idx) {
    double sum = 0.0;
    for (std::size_t i : idx) sum += v[i];
    return idx.empty() ? 0.0 : sum / static_cast<double>(idx.size());
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// Best exact variance-reduction split for one node. Rows with a missing
// feature value always go left, so they contribute to the left-side sums at
// every candidate threshold of that feature.
SplitChoice best_split(const FeatureMatrix& x, std::span<const double> targets,
                       std::span<const std::size_t> rows, int min_samples_leaf) {
    SplitChoice best;

    double parent_sum = 0.0, parent_sumsq = 0.0;
    for (std::size_t i : rows) {
        parent_sum += targets[i];
        parent_sumsq += targets[i] * targets[i];
    }
    const double n_parent = static_cast<double>(rows.size());
    const double parent_sse = parent_sumsq - parent_sum * parent_sum / n_parent;

    std::vector<std::pair<double, double>> valued;  // (feature value, target)
    for (std::size_t f = 0; f < x.cols; ++f) {
        valued.clear();
        double nan_sum = 0.0, nan_sumsq = 0.0;
        std::size_t nan_count = 0;
        for (std::size_t i : rows) {
            const double v = x.at(i, f);
            if (std::isnan(v)) {
                nan_sum += targets[i];
                nan_sumsq += targets[i] * targets[i];
                ++nan_count;
            } else {
                valued.emplace_back(v, targets[i]);
            }
        }
        if (valued.size() < 2) continue;
        std::sort(valued.begin(), valued.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        double left_sum = nan_sum, left_sumsq = nan_sumsq;
        std::size_t left_count = nan_count;
        for (std::size_t i = 0; i + 1 < valued.size(); ++i) {
            left_sum += valued[i].second;
            left_sumsq += valued[i].second * valued[i].second;
            ++left_count;
            if (valued[i].first == valued[i + 1].first) continue;  // not a boundary

            const std::size_t right_count = rows.size() - left_count;
            if (left_count < static_cast<std::size_t>(min_samples_leaf) ||
                right_count < static_cast<std::size_t>(min_samples_leaf)) {
                continue;
            }
            const double right_sum = parent_sum - left_sum;
            const double right_sumsq = parent_sumsq - left_sumsq;
            const double sse_left = left_sumsq - left_sum * left_sum / static_cast<double>(left_count);
            const double sse_right = right_sumsq - right_sum * right_sum / static_cast<double>(right_count);
            const double gain = parent_sse - sse_left - sse_right;
            if (gain > best.gain) {
                best.feature = static_cast<int>(f);
                best.threshold = 0.5 * (valued[i].first + valued[i + 1].first);
                best.gain = gain;
            }
        }
    }
    return best;
}

std::unique_ptr<TreeNode> build_tree(const FeatureMatrix& x, std::span<const double> targets,
                                     std::vector<std::size_t>& rows, int depth, const Hyperparams& hp) {
    auto node = std::make_unique<TreeNode>();
    node->value = mean_of(targets, rows);
    if (depth >= hp.max_depth || rows.size() < 2 * static_cast<std::size_t>(hp.min_samples_leaf)) {
        return node;
    }
    const SplitChoice split = best_split(x, targets, rows, hp.min_samples_leaf);
    if (split.feature < 0 || !(split.gain > 0.0)) return node;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t i : rows) {
        const double v = x.at(i, static_cast<std::size_t>(split.feature));
        if (std::isnan(v) || v <= split.threshold) {
            left_rows.push_back(i);
        } else {
            right_rows.push_back(i);
        }
    }
    node->is_leaf = false;
    node->feature = split.feature;
    node->threshold = split.threshold;
    node->left = build_tree(x, targets, left_rows, depth + 1, hp);
    node->right = build_tree(x, targets, right_rows, depth + 1, hp);
    return node;
}

double tree_value(const TreeNode& node, const FeatureMatrix& x, std::size_t row) {
    const TreeNode* cur = &node;
    while (!cur->is_leaf) {
        const double v = x.at(row, static_cast<std::size_t>(cur->feature));
        cur = (std::isnan(v) || v <= cur->threshold) ? cur->left.get() : cur->right.get();
    }
    return cur->value;
}

nlohmann::json node_to_json(const TreeNode& node) {
    if (node.is_leaf) return nlohmann::json{{"leaf", node.value}};
    return nlohmann::json{{"feature", node.feature},
                          {"threshold", node.threshold},
                          {"left", node_to_json(*node.left)},
                          {"right", node_to_json(*node.right)}};
}

std::unique_ptr<TreeNode> node_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<TreeNode>();
    if (j.contains("leaf")) {
        node->value = j["leaf"].get<double>();
        return node;
    }
    node->is_leaf = false;
    node->feature = j.at("feature").get<int>();
    node->threshold = j.at("threshold").get<double>();
    node->left = node_from_json(j.at("left"));
    node->right = node_from_json(j.at("right"));
    return node;
}

}  // namespace

BoostedModel fit(const FeatureMatrix& features, std::span<const double> targets, const Hyperparams& hp,
                 Objective objective, FitTrace* trace) {
    if (features.rows != targets.size()) raise(Errc::DimensionMismatch, "rows vs targets");
    if (features.cols < 1) raise(Errc::InvalidArgument, "need at least one feature");
    if (features.rows < 2 * static_cast<std::size_t>(hp.min_samples_leaf)) {
        raise(Errc::TooFewRows, "need at least 2*min_samples_leaf rows");
    }
    if (hp.n_trees < 1 || hp.max_depth < 1 || hp.min_samples_leaf < 1 || !(hp.shrinkage > 0.0) ||
        hp.shrinkage > 1.0) {
        raise(Errc::InvalidArgument, "bad hyperparameters");
    }

    BoostedModel model;
    model.objective = objective;
    model.shrinkage = hp.shrinkage;

    const std::size_t n = features.rows;
    std::vector<double> score(n, 0.0);

    if (objective == Objective::SquaredError) {
        model.base_prediction =
            std::accumulate(targets.begin(), targets.end(), 0.0) / static_cast<double>(n);
    } else {
        std::size_t n_pos = 0;
        for (double t : targets) {
            if (t != 0.0 && t != 1.0) raise(Errc::InvalidArgument, "logistic targets must be 0/1");
            n_pos += (t == 1.0);
        }
        if (n_pos == 0 || n_pos == n) raise(Errc::SingleClass, "logistic fit needs both classes");
        const double rate = static_cast<double>(n_pos) / static_cast<double>(n);
        model.base_prediction = std::log(rate / (1.0 - rate));
    }
    std::fill(score.begin(), score.end(), model.base_prediction);

    std::vector<double> residuals(n);
    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});

    for (int round = 0; round < hp.n_trees; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            residuals[i] = objective == Objective::SquaredError ? targets[i] - score[i]
                                                                : targets[i] - sigmoid(score[i]);
        }
        if (trace) trace->round_targets.push_back(residuals);

        auto tree = build_tree(features, residuals, all_rows, 0, hp);
        for (std::size_t i = 0; i < n; ++i) {
            score[i] += hp.shrinkage * tree_value(*tree, features, i);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

std::vector<double> predict(const BoostedModel& model, const FeatureMatrix& features) {
    for (const auto& tree : model.trees) {
        if (!tree->is_leaf && static_cast<std::size_t>(tree->feature) >= features.cols) {
            raise(Errc::DimensionMismatch, "feature width smaller than the model expects");
        }
    }
    std::vector<double> out(features.rows, model.base_prediction);
    for (const auto& tree : model.trees) {
        for (std::size_t r = 0; r < features.rows; ++r) {
            out[r] += model.shrinkage * tree_value(*tree, features, r);
        }
    }
    if (model.objective == Objective::Logistic) {
        for (double& v : out) v = sigmoid(v);
    }
    return out;
}

std::string model_to_json(const BoostedModel& model) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : model.trees) trees.push_back(node_to_json(*tree));
    nlohmann::json j{
        {"base_prediction", model.base_prediction},
        {"objective", model.objective == Objective::SquaredError ? "squared_error" : "logistic"},
        {"shrinkage", model.shrinkage},
        {"trees", std::move(trees)},
    };
    return j.dump();
}

BoostedModel model_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::ParseError, std::string("bad model JSON: ") + e.what());
    }
    BoostedModel model;
    model.base_prediction = j.at("base_prediction").get<double>();
    model.objective =
        j.at("objective").get<std::string>() == "logistic" ? Objective::Logistic : Objective::SquaredError;
    model.shrinkage = j.at("shrinkage").get<double>();
    for (const auto& tree : j.at("trees")) model.trees.push_back(node_from_json(tree));
    return model;
}

namespace {

// Columns of the encoded design matrix, fitted on training rows.
struct ColumnEncoder {
    struct Slot {
        std::string column;
        bool numeric = false;
        Cell category;  // for one-hot slots
    };
    std::vector<Slot> slots;
};

ColumnEncoder fit_encoder(const LabeledTask& task, std::span<const std::size_t> train_positions) {
    ColumnEncoder enc;
    const DatasetProfile& ds = *task.spec.dataset;
    for (const auto& name : task.spec.feature_columns) {
        const ColumnProfile& profile = ds.profile_for(name);
        if (profile.kind == ColumnKind::Continuous) {
            enc.slots.push_back({name, true, missing_cell()});
            continue;
        }
        const Column& col = ds.table.column(name);
        std::map<Cell, bool> seen;
        for (std::size_t pos : train_positions) {
            const Cell& cell = col.values[task.row_indices[pos]];
            if (!is_missing(cell)) seen[cell] = true;
        }
        for (const auto& [cell, _] : seen) enc.slots.push_back({name, false, cell});
    }
    if (enc.slots.empty()) raise(Errc::InvalidArgument, "no encodable features");
    return enc;
}

FeatureMatrix encode_rows(const ColumnEncoder& enc, const LabeledTask& task,
                          std::span<const std::size_t> positions) {
    const DatasetProfile& ds = *task.spec.dataset;
    FeatureMatrix x = FeatureMatrix::zeros(positions.size(), enc.slots.size());
    for (std::size_t c = 0; c < enc.slots.size(); ++c) {
        const auto& slot = enc.slots[c];
        const Column& col = ds.table.column(slot.column);
        for (std::size_t r = 0; r < positions.size(); ++r) {
            const Cell& cell = col.values[task.row_indices[positions[r]]];
            if (slot.numeric) {
                x.at(r, c) = is_number(cell) ? as_number(cell) : std::nan("");
            } else {
                x.at(r, c) = (!is_missing(cell) && cell == slot.category) ? 1.0 : 0.0;
            }
        }
    }
    return x;
}

}  // namespace

double train_supervised_baseline(const LabeledTask& task, const BaselineSplit& split,
                                 const Hyperparams& hp) {
    if (!task.labels) raise(Errc::InvalidArgument, "baseline needs a labeled task");
    const std::size_t n = task.size();
    if (n < 4) raise(Errc::TooFewRows, "baseline needs at least 4 rows");
    if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
        raise(Errc::InvalidArgument, "train_fraction must be in (0,1)");
    }

    const auto& labels = *task.labels;
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<std::size_t> positions(n);
        std::iota(positions.begin(), positions.end(), std::size_t{0});
        std::mt19937_64 gen(split.seed + static_cast<std::uint64_t>(attempt));
        shuffle_values(positions, gen);

        std::size_t n_train = static_cast<std::size_t>(split.train_fraction * static_cast<double>(n));
        n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
        std::span<const std::size_t> train(positions.data(), n_train);
        std::span<const std::size_t> validation(positions.data() + n_train, n - n_train);

        auto has_both = [&](std::span<const std::size_t> part) {
            bool pos = false, neg = false;
            for (std::size_t p : part) (labels[p] == 1 ? pos : neg) = true;
            return pos && neg;
        };
        if (!has_both(train) || !has_both(validation)) continue;

        const ColumnEncoder enc = fit_encoder(task, train);
        const FeatureMatrix x_train = encode_rows(enc, task, train);
        const FeatureMatrix x_val = encode_rows(enc, task, validation);

        std::vector<double> y_train(train.size());
        for (std::size_t i = 0; i < train.size(); ++i) y_train[i] = labels[train[i]];

        Hyperparams local = hp;
        local.min_samples_leaf = std::min<int>(local.min_samples_leaf,
                                               std::max<int>(1, static_cast<int>(train.size() / 4)));
        const BoostedModel model = fit(x_train, y_train, local, Objective::Logistic);
        const std::vector<double> scores = predict(model, x_val);

        std::vector<int> y_val(validation.size());
        for (std::size_t i = 0; i < validation.size(); ++i) y_val[i] = labels[validation[i]];
        return auc(scores, y_val);
    }
    raise(Errc::UnsplittableTask, "no split with both classes in both halves after 20 seeds: " +
                                      task.spec.task_id);
}

}  // namespace tabsuit
