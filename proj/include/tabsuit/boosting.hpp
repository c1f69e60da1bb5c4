#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tabsuit/task.hpp"

namespace tabsuit {

// Dense row-major feature matrix; NaN marks a missing value.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }

    static FeatureMatrix zeros(std::size_t rows, std::size_t cols) {
        return FeatureMatrix{rows, cols, std::vector<double>(rows * cols, 0.0)};
    }
};

// Regression tree node; splits send missing (NaN) values left.
struct TreeNode {
    bool is_leaf = true;
    double value = 0.0;
    int feature = -1;
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
};

enum class Objective { SquaredError, Logistic };

struct Hyperparams {
    int n_trees = 200;
    int max_depth = 3;
    double shrinkage = 0.1;
    int min_samples_leaf = 5;
    std::uint64_t seed = 0;
};

struct BoostedModel {
    double base_prediction = 0.0;  // mean target, or log-odds for Logistic
    Objective objective = Objective::SquaredError;
    double shrinkage = 0.1;
    std::vector<std::unique_ptr<TreeNode>> trees;
};

// Residual targets handed to each round's tree, recorded when a trace is
// supplied to fit (test instrumentation).
struct FitTrace {
    std::vector<std::vector<double>> round_targets;
};

// Gradient boosting with exact greedy variance-reduction splits over all
// midpoint thresholds. Deterministic for fixed inputs.
BoostedModel fit(const FeatureMatrix& features, std::span<const double> targets, const Hyperparams& hp,
                 Objective objective, FitTrace* trace = nullptr);

std::vector<double> predict(const BoostedModel& model, const FeatureMatrix& features);

std::string model_to_json(const BoostedModel& model);
BoostedModel model_from_json(const std::string& json_text);

// One-hot encoder for categorical features, fitted on training rows only;
// unseen or missing categories encode as all zeros.
struct TaskEncoder {
    struct Encoded {
        FeatureMatrix train;
        FeatureMatrix validation;
    };
};

struct BaselineSplit {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
};

// Fig. 5 protocol: fit a logistic gradient-boosted classifier on a split of
// the task's rows and score AUC on the held-out remainder. Numeric features
// pass through (missing as NaN), categoricals one-hot on train categories.
// Re-draws the split up to 20 seeds until both halves contain both classes.
double train_supervised_baseline(const LabeledTask& task, const BaselineSplit& split,
                                 const Hyperparams& hp = Hyperparams{});

}  // namespace tabsuit
