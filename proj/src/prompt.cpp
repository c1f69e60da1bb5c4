#include "tabsuit/prompt.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tabsuit/errors.hpp"

namespace tabsuit {

namespace {

constexpr std::array<const char*, 6> kPlaceholders = {
    "$DESCRIPTION$", "$ROW$", "$QUESTION$", "$POSITIVE$", "$NEGATIVE$", "$TARGET$",
};

std::string substitute(std::string text, const std::vector<std::pair<std::string, std::string>>& slots) {
    for (const auto& [key, value] : slots) {
        std::size_t pos = 0;
        while ((pos = text.find(key, pos)) != std::string::npos) {
            text.replace(pos, key.size(), value);
            pos += value.size();
        }
    }
    for (const char* ph : kPlaceholders) {
        if (text.find(ph) != std::string::npos) {
            raise(Errc::Internal, std::string("unresolved placeholder ") + ph);
        }
    }
    return text;
}

void require_metadata(const TaskSpec& spec) {
    if (spec.dataset == nullptr) raise(Errc::InvalidArgument, "task spec has no dataset");
    if (spec.question.empty()) raise(Errc::MissingMetadata, "task has no question: " + spec.task_id);
    if (spec.positive_text.empty() || spec.negative_text.empty()) {
        raise(Errc::MissingMetadata, "task has no label texts: " + spec.task_id);
    }
}

}  // namespace

const char* elicitation_mode_name(ElicitationMode mode) {
    switch (mode) {
        case ElicitationMode::DirectAuc: return "direct_auc";
        case ElicitationMode::IntegerScore: return "integer";
        case ElicitationMode::DecimalScore: return "decimal";
    }
    return "unknown";
}

PromptTemplates PromptTemplates::builtin() {
    PromptTemplates t;
    t.risk_system = "Please respond with a single letter.";
    t.risk_user =
        "$DESCRIPTION$\n"
        "\n"
        "Information: $ROW$\n"
        "\n"
        "Question: $QUESTION$\n"
        "A. $POSITIVE$\n"
        "B. $NEGATIVE$";
    t.verbalized_system = "$DESCRIPTION$";
    t.verbalized_user =
        "$ROW$\n"
        "\n"
        "Provide your best guess and the probability that it is correct (0.0 to 1.0) for "
        "the following question. Give ONLY the guess and probability, no other words or "
        "explanation. For example:\n"
        "\n"
        "Guess: <most likely guess, as short as possible; not a complete sentence, just the guess!>\n"
        "Probability: <the probability between 0.0 and 1.0 that your guess is correct, without "
        "any extra commentary whatsoever; just the probability!>\n"
        "\n"
        "The question is: $QUESTION$";
    t.elicit_system = "Respond with only the number.";
    t.elicit_user_direct_auc =
        "$DESCRIPTION$\n"
        "\n"
        "The prediction target is '$TARGET$'. The question asked for each record is: $QUESTION$\n"
        "\n"
        "Predict the AUC you would achieve at this task, as a decimal number between 0.5 and 1.0. "
        "Respond with only the number.";
    t.elicit_user_integer =
        "$DESCRIPTION$\n"
        "\n"
        "The prediction target is '$TARGET$'. The question asked for each record is: $QUESTION$\n"
        "\n"
        "Rate your confidence in your ability to predict this target, as an integer between "
        "1 (no confidence) and 5 (full confidence). Respond with only the number.";
    t.elicit_user_decimal =
        "$DESCRIPTION$\n"
        "\n"
        "The prediction target is '$TARGET$'. The question asked for each record is: $QUESTION$\n"
        "\n"
        "Rate your confidence in your ability to predict this target, as a decimal between "
        "0.0 (no confidence) and 1.0 (full confidence). Respond with only the number.";
    return t;
}

PromptTemplates PromptTemplates::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoFailure, "cannot open template file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::ConfigError, std::string("bad template JSON: ") + e.what());
    }
    PromptTemplates t = builtin();
    t.version = j.value("version", "file:" + path);
    auto pick = [&](const char* key, std::string& slot) {
        if (j.contains(key)) slot = j[key].get<std::string>();
    };
    pick("risk_system", t.risk_system);
    pick("risk_user", t.risk_user);
    pick("verbalized_system", t.verbalized_system);
    pick("verbalized_user", t.verbalized_user);
    pick("elicit_system", t.elicit_system);
    pick("elicit_user_direct_auc", t.elicit_user_direct_auc);
    pick("elicit_user_integer", t.elicit_user_integer);
    pick("elicit_user_decimal", t.elicit_user_decimal);
    return t;
}

std::string serialize_row(const Table& table, std::size_t row_index,
                          const std::vector<std::string>& feature_columns) {
    if (feature_columns.empty()) raise(Errc::InvalidArgument, "no feature columns to serialize");
    if (row_index >= table.row_count()) raise(Errc::InvalidArgument, "row index out of range");

    std::string out;
    for (const auto& name : feature_columns) {
        const Cell& cell = table.column(name).values[row_index];
        if (is_missing(cell)) continue;
        if (!out.empty()) out += '\n';
        out += name;
        out += ": ";
        out += cell_to_string(cell);
    }
    return out;
}

PromptMessages render_risk_prompt(const TaskSpec& spec, const Table& table, std::size_t row_index,
                                  const PromptTemplates& templates) {
    require_metadata(spec);
    const std::string row = serialize_row(table, row_index, spec.feature_columns);
    PromptMessages msg;
    msg.system = templates.risk_system;
    msg.user = substitute(templates.risk_user, {{"$DESCRIPTION$", spec.dataset->description},
                                                {"$ROW$", row},
                                                {"$QUESTION$", spec.question},
                                                {"$POSITIVE$", spec.positive_text},
                                                {"$NEGATIVE$", spec.negative_text}});
    return msg;
}

PromptMessages render_verbalized_prompt(const TaskSpec& spec, const Table& table, std::size_t row_index,
                                        const PromptTemplates& templates) {
    require_metadata(spec);
    const std::string row = serialize_row(table, row_index, spec.feature_columns);
    PromptMessages msg;
    msg.system = substitute(templates.verbalized_system, {{"$DESCRIPTION$", spec.dataset->description}});
    msg.user = substitute(templates.verbalized_user, {{"$ROW$", row}, {"$QUESTION$", spec.question}});
    return msg;
}

PromptMessages render_task_elicitation_prompt(const TaskSpec& spec, ElicitationMode mode,
                                              const PromptTemplates& templates) {
    require_metadata(spec);
    if (spec.dataset->description.empty()) {
        raise(Errc::MissingMetadata, "dataset description required for task elicitation");
    }
    const std::string* body = nullptr;
    switch (mode) {
        case ElicitationMode::DirectAuc: body = &templates.elicit_user_direct_auc; break;
        case ElicitationMode::IntegerScore: body = &templates.elicit_user_integer; break;
        case ElicitationMode::DecimalScore: body = &templates.elicit_user_decimal; break;
    }
    PromptMessages msg;
    msg.system = templates.elicit_system;
    msg.user = substitute(*body, {{"$DESCRIPTION$", spec.dataset->description},
                                  {"$TARGET$", spec.target_column},
                                  {"$QUESTION$", spec.question}});
    return msg;
}

}  // namespace tabsuit
