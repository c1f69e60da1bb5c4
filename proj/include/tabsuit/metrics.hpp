#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tabsuit/scoring.hpp"

namespace tabsuit {

struct TaskMetrics {
    std::string task_id;
    std::string dataset_id;
    bool is_proxy = false;
    int n = 0;  // rows that survived extraction

    // Unlabeled aggregates.
    std::optional<double> avg_confidence;
    double avg_mcp = 0.0;
    std::optional<double> std_confidence;
    double std_risk = 0.0;
    std::optional<double> elicited_direct_auc;
    std::optional<double> elicited_integer;  // normalized (raw-1)/4
    std::optional<double> elicited_decimal;

    // Labeled-data metrics; unset on unlabeled runs.
    std::optional<double> auc;
    std::optional<double> ece;
    std::optional<double> accuracy;
    std::optional<double> failure_auc;
    std::optional<double> masking_avg_auc;   // primary tasks only
    std::optional<double> baseline_auc;      // supervised gradient-boosted baseline
    std::optional<double> normalized_auc;    // auc / baseline_auc
    std::optional<double> predicted_auc;     // out-of-fold suitability prediction
};

enum class CurveSide { Above, Below, Crossing };

struct CalibrationBin {
    double mean_score = 0.0;
    double positive_rate = 0.0;
    std::size_t count = 0;
};

struct CalibrationCurve {
    std::vector<CalibrationBin> bins;  // nonempty bins only, in bin order
    int n_bins = 10;
    CurveSide classification = CurveSide::Crossing;
};

const char* curve_side_name(CurveSide side);

// Mann-Whitney AUC with ties counted 1/2, computed by average ranks; matches
// exhaustive pair enumeration exactly.
double auc(std::span<const double> scores, std::span<const int> labels);

// Expected calibration error over equal-width bins on [0, 1] (last bin's
// right edge inclusive), weighting each nonempty bin by its share of rows.
double ece(std::span<const double> scores, std::span<const int> labels, int n_bins = 10);

double accuracy(const std::vector<RowPrediction>& predictions);

// Reliability bins plus the Above/Below/Crossing side classification:
// Above when the bin gaps (positive_rate - mean_score) average >= 0.2 with
// no bin below -0.1; Below symmetrically; Crossing otherwise.
CalibrationCurve calibration_curve(std::span<const double> scores, std::span<const int> labels,
                                   int n_bins = 10);

// AUC of max(p, 1-p) at predicting whether each row was classified
// correctly.
double failure_prediction_auc(const std::vector<RowPrediction>& predictions);

// Fills the unlabeled aggregate fields (averages, standard deviations,
// elicited scores) from one task's responses.
TaskMetrics aggregate_task_metrics(const TaskResponses& responses);

// Mean AUC over a dataset's proxy tasks.
double masking_proxy_metric(const std::vector<TaskMetrics>& proxy_metrics);

// Fraction of AUC variance explained by dataset membership (between-group
// sum of squares over total).
double dataset_variance_fraction(const std::vector<std::pair<std::string, double>>& auc_by_task);

double normalized_auc(double llm_auc, double baseline_auc);

// 1-based average ranks (ties share their midrank); shared by AUC and
// Spearman.
std::vector<double> average_ranks(std::span<const double> values);

// Sample standard deviation (n-1 divisor).
double sample_std(std::span<const double> values);

}  // namespace tabsuit
