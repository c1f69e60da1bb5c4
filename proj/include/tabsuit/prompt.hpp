#pragma once

#include <string>
#include <vector>

#include "tabsuit/task.hpp"

namespace tabsuit {

struct PromptMessages {
    std::string system;
    std::string user;
};

enum class ElicitationMode { DirectAuc, IntegerScore, DecimalScore };

const char* elicitation_mode_name(ElicitationMode mode);

// Prompt wording, with $PLACEHOLDER$ slots resolved at render time. The
// built-in set is versioned so runs are reproducible; a JSON template file
// can override any field for prompt ablations.
struct PromptTemplates {
    std::string version = "builtin-v1";
    std::string risk_system;
    std::string risk_user;
    std::string verbalized_system;
    std::string verbalized_user;
    std::string elicit_system;
    std::string elicit_user_direct_auc;
    std::string elicit_user_integer;
    std::string elicit_user_decimal;

    static PromptTemplates builtin();
    static PromptTemplates from_file(const std::string& path);
};

// One "Name: Value" line per non-missing feature, in feature_columns order.
// Numbers go through render_number.
std::string serialize_row(const Table& table, std::size_t row_index,
                          const std::vector<std::string>& feature_columns);

PromptMessages render_risk_prompt(const TaskSpec& spec, const Table& table, std::size_t row_index,
                                  const PromptTemplates& templates = PromptTemplates::builtin());

PromptMessages render_verbalized_prompt(const TaskSpec& spec, const Table& table, std::size_t row_index,
                                        const PromptTemplates& templates = PromptTemplates::builtin());

PromptMessages render_task_elicitation_prompt(const TaskSpec& spec, ElicitationMode mode,
                                              const PromptTemplates& templates = PromptTemplates::builtin());

}  // namespace tabsuit
