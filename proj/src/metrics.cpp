#include "tabsuit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace tabsuit {

const char* curve_side_name(CurveSide side) {
    switch (side) {
        case CurveSide::Above: return "above";
        case CurveSide::Below: return "below";
        case CurveSide::Crossing: return "crossing";
    }
    return "unknown";
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = midrank;
        i = j + 1;
    }
    return ranks;
}

double sample_std(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) raise(Errc::TooFewRows, "sample std needs at least 2 values");
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

double auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) raise(Errc::DimensionMismatch, "scores vs labels");
    if (scores.empty()) raise(Errc::EmptyInput, "auc of empty input");

    std::size_t n_pos = 0;
    for (int l : labels) n_pos += (l == 1);
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) raise(Errc::SingleClass, "auc needs both classes");

    const std::vector<double> ranks = average_ranks(scores);
    double rank_sum_pos = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) rank_sum_pos += ranks[i];
    }
    const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

namespace {

struct BinAccumulator {
    double score_sum = 0.0;
    double label_sum = 0.0;
    std::size_t count = 0;
};

std::vector<BinAccumulator> fill_bins(std::span<const double> scores, std::span<const int> labels,
                                      int n_bins) {
    if (n_bins < 1) raise(Errc::InvalidArgument, "need at least one bin");
    if (scores.empty() || scores.size() != labels.size()) {
        raise(Errc::InvalidArgument, "ece needs aligned nonempty inputs");
    }
    std::vector<BinAccumulator> bins(static_cast<std::size_t>(n_bins));
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const double s = scores[i];
        if (s < 0.0 || s > 1.0) raise(Errc::OutOfRange, "score outside [0,1]");
        int b = static_cast<int>(s * n_bins);
        if (b == n_bins) b = n_bins - 1;  // right edge of the last bin is inclusive
        bins[static_cast<std::size_t>(b)].score_sum += s;
        bins[static_cast<std::size_t>(b)].label_sum += labels[i];
        bins[static_cast<std::size_t>(b)].count += 1;
    }
    return bins;
}

}  // namespace

double ece(std::span<const double> scores, std::span<const int> labels, int n_bins) {
    const auto bins = fill_bins(scores, labels, n_bins);
    const double n = static_cast<double>(scores.size());
    double total = 0.0;
    for (const auto& bin : bins) {
        if (bin.count == 0) continue;
        const double mean_score = bin.score_sum / static_cast<double>(bin.count);
        const double pos_rate = bin.label_sum / static_cast<double>(bin.count);
        total += (static_cast<double>(bin.count) / n) * std::fabs(mean_score - pos_rate);
    }
    return total;
}

CalibrationCurve calibration_curve(std::span<const double> scores, std::span<const int> labels,
                                   int n_bins) {
    const auto raw = fill_bins(scores, labels, n_bins);
    CalibrationCurve curve;
    curve.n_bins = n_bins;

    double gap_sum = 0.0;
    double gap_min = std::numeric_limits<double>::infinity();
    double gap_max = -std::numeric_limits<double>::infinity();
    for (const auto& bin : raw) {
        if (bin.count == 0) continue;
        CalibrationBin b;
        b.count = bin.count;
        b.mean_score = bin.score_sum / static_cast<double>(bin.count);
        b.positive_rate = bin.label_sum / static_cast<double>(bin.count);
        const double gap = b.positive_rate - b.mean_score;
        gap_sum += gap;
        gap_min = std::min(gap_min, gap);
        gap_max = std::max(gap_max, gap);
        curve.bins.push_back(b);
    }
    const double gap_mean = gap_sum / static_cast<double>(curve.bins.size());
    if (gap_mean >= 0.2 && gap_min >= -0.1) {
        curve.classification = CurveSide::Above;
    } else if (gap_mean <= -0.2 && gap_max <= 0.1) {
        curve.classification = CurveSide::Below;
    } else {
        curve.classification = CurveSide::Crossing;
    }
    return curve;
}

double accuracy(const std::vector<RowPrediction>& predictions) {
    if (predictions.empty()) raise(Errc::EmptyInput, "accuracy of empty predictions");
    std::size_t correct = 0;
    for (const auto& p : predictions) {
        if (!p.true_label) raise(Errc::InvalidArgument, "accuracy needs true labels");
        correct += (p.predicted_label == *p.true_label);
    }
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

double failure_prediction_auc(const std::vector<RowPrediction>& predictions) {
    if (predictions.empty()) raise(Errc::EmptyInput, "failure prediction of empty predictions");
    std::vector<double> mcp;
    std::vector<int> correct;
    mcp.reserve(predictions.size());
    correct.reserve(predictions.size());
    for (const auto& p : predictions) {
        if (!p.true_label) raise(Errc::InvalidArgument, "failure prediction needs true labels");
        mcp.push_back(std::max(p.risk_score, 1.0 - p.risk_score));
        correct.push_back(p.predicted_label == *p.true_label ? 1 : 0);
    }
    return auc(mcp, correct);
}

TaskMetrics aggregate_task_metrics(const TaskResponses& responses) {
    const auto& preds = responses.predictions;
    if (preds.size() < 2) raise(Errc::TooFewRows, "standard deviations need n >= 2");

    TaskMetrics m;
    m.task_id = responses.spec.task_id;
    m.dataset_id = responses.spec.dataset ? responses.spec.dataset->name : "";
    m.is_proxy = responses.spec.is_proxy;
    m.n = static_cast<int>(preds.size());

    std::vector<double> risks;
    std::vector<double> confidences;
    double mcp_sum = 0.0;
    risks.reserve(preds.size());
    for (const auto& p : preds) {
        risks.push_back(p.risk_score);
        mcp_sum += std::max(p.risk_score, 1.0 - p.risk_score);
        if (p.verbalized_confidence) confidences.push_back(*p.verbalized_confidence);
    }
    m.avg_mcp = mcp_sum / static_cast<double>(preds.size());
    m.std_risk = sample_std(risks);
    if (!confidences.empty()) {
        m.avg_confidence =
            std::accumulate(confidences.begin(), confidences.end(), 0.0) / static_cast<double>(confidences.size());
        if (confidences.size() >= 2) m.std_confidence = sample_std(confidences);
    }
    m.elicited_direct_auc = responses.elicited.direct_auc;
    if (responses.elicited.integer_raw) {
        m.elicited_integer = (static_cast<double>(*responses.elicited.integer_raw) - 1.0) / 4.0;
    }
    m.elicited_decimal = responses.elicited.decimal_score;
    return m;
}

double masking_proxy_metric(const std::vector<TaskMetrics>& proxy_metrics) {
    if (proxy_metrics.empty()) raise(Errc::EmptyInput, "no proxy metrics to average");
    double sum = 0.0;
    for (const auto& m : proxy_metrics) {
        if (!m.auc) raise(Errc::InvalidArgument, "proxy task " + m.task_id + " has no AUC");
        sum += *m.auc;
    }
    return sum / static_cast<double>(proxy_metrics.size());
}

double dataset_variance_fraction(const std::vector<std::pair<std::string, double>>& auc_by_task) {
    if (auc_by_task.size() < 2) raise(Errc::TooFewRows, "need at least 2 tasks");
    std::map<std::string, std::vector<double>> groups;
    for (const auto& [dataset, value] : auc_by_task) groups[dataset].push_back(value);
    if (groups.size() < 2) raise(Errc::TooFewGroups, "need at least 2 datasets");

    double grand_sum = 0.0;
    for (const auto& [_, values] : groups) {
        grand_sum = std::accumulate(values.begin(), values.end(), grand_sum);
    }
    const double grand_mean = grand_sum / static_cast<double>(auc_by_task.size());

    double ss_total = 0.0;
    double ss_within = 0.0;
    for (const auto& [_, values] : groups) {
        const double group_mean =
            std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
        for (double v : values) {
            ss_total += (v - grand_mean) * (v - grand_mean);
            ss_within += (v - group_mean) * (v - group_mean);
        }
    }
    if (ss_total < 1e-24) raise(Errc::ZeroTotalVariance, "all AUC values identical");
    return std::clamp(1.0 - ss_within / ss_total, 0.0, 1.0);
}

double normalized_auc(double llm_auc, double baseline_auc) {
    if (!(baseline_auc > 0.0)) raise(Errc::ZeroBaseline, "baseline AUC must be positive");
    return llm_auc / baseline_auc;
}

}  // namespace tabsuit
