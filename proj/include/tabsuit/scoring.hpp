#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tabsuit/gateway.hpp"
#include "tabsuit/task.hpp"

namespace tabsuit {

struct RowPrediction {
    int row_index = 0;                               // position within the task, 0-based
    double risk_score = 0.0;                         // P(positive class), from option-token logprobs
    std::optional<double> verbalized_confidence;     // c_i, when requested and parseable
    int predicted_label = 0;                         // 1 iff risk_score >= 0.5
    std::optional<int> true_label;
};

struct ExclusionRecord {
    std::string task_id;
    int row_index = -1;  // -1 for task-level records
    std::string reason;
};

struct ElicitedScores {
    std::optional<double> direct_auc;
    std::optional<int> integer_raw;      // raw 1..5
    std::optional<double> decimal_score;
};

struct TaskResponses {
    TaskSpec spec;
    std::vector<RowPrediction> predictions;
    ElicitedScores elicited;
    std::vector<ExclusionRecord> exclusions;
};

struct ScoreOptions {
    bool collect_verbalized = true;
    bool collect_elicited = true;
    int max_tokens_risk = 8;
    int max_tokens_verbalized = 64;
    int top_logprobs = 20;
    int threads = 0;  // 0: use the gateway's in-flight limit
};

// Two-option softmax over the completion's first-token distribution. Tokens
// match after whitespace trimming, case-sensitively, with an optional
// trailing period. A single absent option is floored at (min listed logprob
// - 10); both absent is an error.
double extract_risk_score(const Completion& completion, const std::string& positive_token = "A",
                          const std::string& negative_token = "B");

// Last "Probability: <decimal>" line of the reply.
double parse_verbalized_confidence(const std::string& text);

struct ElicitedScore {
    double value = 0.0;            // normalized to [0, 1]
    std::optional<int> raw;        // original integer for IntegerScore
};

ElicitedScore parse_elicited_score(const std::string& text, ElicitationMode mode);

// Scores every row of a task through the gateway: one risk prompt per row,
// optional verbalized prompt per row and one elicitation prompt per mode.
// Rows whose risk extraction fails are excluded; verbalized parse failures
// only leave c_i unset.
TaskResponses score_task(const LabeledTask& task, LlmGateway& gateway, const ScoreOptions& options,
                         const PromptTemplates& templates = PromptTemplates::builtin());

}  // namespace tabsuit
