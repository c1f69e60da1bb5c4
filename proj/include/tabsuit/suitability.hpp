#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tabsuit/boosting.hpp"

namespace tabsuit {

// 201 alpha-percentiles (alpha = 0, 0.5, ..., 100) plus the standard
// deviation of risk scores: the 202-feature input of the AUC predictor.
struct PercentileFeatures {
    std::vector<double> percentiles;  // length 201, non-decreasing, in [0,1]
    double std_risk = 0.0;

    static constexpr std::size_t kCount = 201;
};

// task_id -> fold, with all tasks of a dataset in one fold.
struct FoldAssignment {
    std::map<std::string, int> fold_of_task;
    int k = 0;
};

struct SweepPoint {
    double threshold = 0.0;
    double mean_auc = 0.0;
    std::size_t task_count = 0;
};
using SweepCurve = std::vector<SweepPoint>;

struct SuitabilityRow {
    std::string task_id;
    std::string dataset_id;
    PercentileFeatures features;
    double actual_auc = 0.0;
};

struct EmpiricalCdf {
    std::string task_id;
    double predicted_auc = 0.0;
    std::vector<double> sorted_scores;
    std::vector<double> cumulative;  // (i+1)/n, ends at 1.0
};

struct ExtremeCdfs {
    std::vector<EmpiricalCdf> highest;
    std::vector<EmpiricalCdf> lowest;
};

struct CorrelationReport {
    double pearson_r = 0.0;
    double r_squared = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t n = 0;
};

// Linear-interpolation percentiles at position alpha/100*(n-1) between order
// statistics.
PercentileFeatures percentile_features(std::span<const double> risk_scores);

// Datasets are shuffled by seed and dealt round-robin onto k folds; tasks
// inherit their dataset's fold.
FoldAssignment grouped_kfold(const std::vector<std::pair<std::string, std::string>>& tasks, int k,
                             std::uint64_t seed);

// Out-of-fold AUC predictions from a squared-error boosted model over the
// 202-feature vectors. Asserts train/test dataset disjointness per fold.
// Results are ordered by task_id.
std::vector<std::pair<std::string, double>> cross_val_predict_auc(const std::vector<SuitabilityRow>& rows,
                                                                  int k, const Hyperparams& hp,
                                                                  std::uint64_t fold_seed = 0);

// Mean AUC over tasks whose metric clears each threshold; thresholds with no
// survivors are omitted.
SweepCurve threshold_sweep(std::span<const double> metric_values, std::span<const double> aucs,
                           std::span<const double> thresholds);

ExtremeCdfs extract_extreme_cdfs(const std::vector<std::pair<std::string, double>>& predictions,
                                 const std::map<std::string, std::vector<double>>& per_task_scores,
                                 std::size_t m = 10);

// Ordinary least squares of y on x with r_squared = pearson_r^2.
CorrelationReport correlation_report(std::span<const double> x, std::span<const double> y);

// Rank correlation (average ranks for ties).
double spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace tabsuit
