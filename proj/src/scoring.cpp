#include "tabsuit/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <mutex>
#include <thread>

namespace tabsuit {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool token_matches(const std::string& token, const std::string& option) {
    const std::string t = trim(token);
    return t == option || t == option + ".";
}

std::optional<double> parse_double_prefix(const char* begin, const char* end, const char** out_end) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin) return std::nullopt;
    if (out_end) *out_end = ptr;
    return v;
}

}  // namespace

double extract_risk_score(const Completion& completion, const std::string& positive_token,
                          const std::string& negative_token) {
    if (completion.first_token_logprobs.empty()) {
        raise(Errc::BothOptionsMissing, "completion has no token logprobs");
    }

    std::optional<double> lp_pos, lp_neg;
    double min_listed = 0.0;
    for (const auto& tl : completion.first_token_logprobs) {
        min_listed = std::min(min_listed, tl.logprob);
        if (!lp_pos && token_matches(tl.token, positive_token)) lp_pos = tl.logprob;
        if (!lp_neg && token_matches(tl.token, negative_token)) lp_neg = tl.logprob;
    }
    if (!lp_pos && !lp_neg) {
        raise(Errc::BothOptionsMissing, "neither option token in the top logprobs");
    }
    const double floor = min_listed - 10.0;
    const double a = lp_pos.value_or(floor);
    const double b = lp_neg.value_or(floor);
    const double m = std::max(a, b);
    const double ea = std::exp(a - m);
    const double eb = std::exp(b - m);
    return ea / (ea + eb);
}

double parse_verbalized_confidence(const std::string& text) {
    static const std::string kKey = "Probability:";
    std::optional<double> last;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        const auto key_at = line.find(kKey);
        if (key_at != std::string::npos) {
            std::size_t value_at = key_at + kKey.size();
            while (value_at < line.size() && (line[value_at] == ' ' || line[value_at] == '\t')) ++value_at;
            if (auto v = parse_double_prefix(line.data() + value_at, line.data() + line.size(), nullptr)) {
                last = *v;
            }
        }
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    if (!last) {
        raise(Errc::ParseFailure, "no 'Probability: <decimal>' line in: " + text.substr(0, 120));
    }
    if (*last < 0.0 || *last > 1.0) {
        raise(Errc::OutOfRange, "verbalized confidence outside [0,1]: " + std::to_string(*last));
    }
    return *last;
}

ElicitedScore parse_elicited_score(const std::string& text, ElicitationMode mode) {
    // First whitespace-delimited token that parses as a number, ignoring
    // trailing punctuation.
    std::optional<double> value;
    std::size_t pos = 0;
    while (pos < text.size() && !value) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        if (end > pos) {
            std::string token = text.substr(pos, end - pos);
            while (!token.empty() && (token.back() == '.' || token.back() == ',' || token.back() == ';' ||
                                      token.back() == '%' || token.back() == ')')) {
                token.pop_back();
            }
            const char* b = token.data();
            if (auto v = parse_double_prefix(b, b + token.size(), nullptr)) {
                const char* parsed_end = nullptr;
                parse_double_prefix(b, b + token.size(), &parsed_end);
                if (parsed_end == b + token.size()) value = *v;
            }
        }
        pos = end;
    }
    if (!value) raise(Errc::ParseFailure, "no numeric token in: " + text.substr(0, 120));

    ElicitedScore score;
    switch (mode) {
        case ElicitationMode::DirectAuc:
        case ElicitationMode::DecimalScore:
            if (*value < 0.0 || *value > 1.0) {
                raise(Errc::OutOfRange, "score outside [0,1]: " + std::to_string(*value));
            }
            score.value = *value;
            break;
        case ElicitationMode::IntegerScore: {
            if (*value != std::floor(*value) || *value < 1.0 || *value > 5.0) {
                raise(Errc::OutOfRange, "integer score outside 1..5: " + std::to_string(*value));
            }
            score.raw = static_cast<int>(*value);
            score.value = (*value - 1.0) / 4.0;
            break;
        }
    }
    return score;
}

TaskResponses score_task(const LabeledTask& task, LlmGateway& gateway, const ScoreOptions& options,
                         const PromptTemplates& templates) {
    if (task.size() == 0) raise(Errc::TaskEmpty, "task has no rows: " + task.spec.task_id);

    TaskResponses out;
    out.spec = task.spec;

    struct RowSlot {
        std::optional<RowPrediction> prediction;
        std::optional<std::string> failure;
    };
    const std::size_t n = task.size();
    std::vector<RowSlot> slots(n);
    const Table& table = task.spec.dataset->table;
    const std::string model = gateway.model_name();

    std::atomic<std::size_t> next{0};
    std::exception_ptr hard_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (hard_error) return;
            }
            try {
                CompletionRequest request;
                request.model = model;
                request.messages = render_risk_prompt(task.spec, table, task.row_indices[i], templates);
                request.max_tokens = options.max_tokens_risk;
                request.top_logprobs = options.top_logprobs;

                RowPrediction pred;
                pred.row_index = static_cast<int>(i);
                try {
                    const Completion completion = gateway.complete(request);
                    pred.risk_score = extract_risk_score(completion);
                } catch (const Error& e) {
                    if (e.code() == Errc::BothOptionsMissing || e.code() == Errc::MalformedResponse) {
                        slots[i].failure = e.what();
                        continue;
                    }
                    throw;
                }
                pred.predicted_label = pred.risk_score >= 0.5 ? 1 : 0;
                if (task.labels) pred.true_label = (*task.labels)[i];

                if (options.collect_verbalized) {
                    CompletionRequest vreq;
                    vreq.model = model;
                    vreq.messages = render_verbalized_prompt(task.spec, table, task.row_indices[i], templates);
                    vreq.max_tokens = options.max_tokens_verbalized;
                    vreq.top_logprobs = 0;
                    try {
                        pred.verbalized_confidence = parse_verbalized_confidence(gateway.complete(vreq).text);
                    } catch (const Error& e) {
                        if (e.code() != Errc::ParseFailure && e.code() != Errc::OutOfRange) throw;
                        // leave c_i unset; the row stays
                    }
                }
                slots[i].prediction = std::move(pred);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!hard_error) hard_error = std::current_exception();
                return;
            }
        }
    };

    int thread_count = options.threads > 0 ? options.threads : gateway.max_in_flight();
    thread_count = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(1, thread_count)), n));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (hard_error) std::rethrow_exception(hard_error);

    for (std::size_t i = 0; i < n; ++i) {
        if (slots[i].prediction) {
            out.predictions.push_back(std::move(*slots[i].prediction));
        } else if (slots[i].failure) {
            out.exclusions.push_back({task.spec.task_id, static_cast<int>(i), *slots[i].failure});
        }
    }
    if (out.predictions.empty()) raise(Errc::TaskEmpty, "every row failed extraction: " + task.spec.task_id);

    if (options.collect_elicited) {
        const ElicitationMode modes[] = {ElicitationMode::DirectAuc, ElicitationMode::IntegerScore,
                                         ElicitationMode::DecimalScore};
        for (ElicitationMode mode : modes) {
            CompletionRequest request;
            request.model = model;
            request.messages = render_task_elicitation_prompt(task.spec, mode, templates);
            request.max_tokens = 16;
            request.top_logprobs = 0;
            try {
                const ElicitedScore score = parse_elicited_score(gateway.complete(request).text, mode);
                switch (mode) {
                    case ElicitationMode::DirectAuc: out.elicited.direct_auc = score.value; break;
                    case ElicitationMode::IntegerScore: out.elicited.integer_raw = score.raw; break;
                    case ElicitationMode::DecimalScore: out.elicited.decimal_score = score.value; break;
                }
            } catch (const Error& e) {
                if (e.code() != Errc::ParseFailure && e.code() != Errc::OutOfRange) throw;
                out.exclusions.push_back(
                    {task.spec.task_id, -1, std::string("elicited ") + elicitation_mode_name(mode) + ": " + e.what()});
            }
        }
    }
    return out;
}

}  // namespace tabsuit
