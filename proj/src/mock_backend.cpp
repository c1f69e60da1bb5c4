#include "tabsuit/mock_backend.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "tabsuit/hash.hpp"
#include "tabsuit/synthetic.hpp"

namespace tabsuit {

namespace {

constexpr double kProbFloor = 1e-12;  // keeps log-probs finite and JSON-safe

struct ParsedRow {
    std::vector<std::pair<std::string, std::string>> pairs;
};

// Consecutive "Name: Value" lines starting at `begin`; stops at the first
// blank or non-pair line.
ParsedRow parse_feature_block(const std::string& text, std::size_t begin) {
    ParsedRow row;
    std::size_t pos = begin;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        if (line.empty()) break;
        const auto sep = line.find(": ");
        if (sep == std::string::npos) break;
        row.pairs.emplace_back(line.substr(0, sep), line.substr(sep + 2));
        pos = eol + 1;
    }
    return row;
}

double risk_probability(const ParsedRow& row, const MockProfile& profile) {
    double centered = 0.0;
    for (const auto& [name, value_text] : row.pairs) {
        const auto it = profile.weights.find(name);
        if (it == profile.weights.end()) continue;
        double x = 0.0;
        const char* begin = value_text.data();
        const char* end = begin + value_text.size();
        auto [ptr, ec] = std::from_chars(begin, end, x);
        if (ec != std::errc() || ptr != end) continue;  // text feature: no numeric contribution
        centered += it->second * (x - 0.5);
    }
    const double p = sigmoid(profile.logit_scale * centered + profile.calibration_shift);
    return std::clamp(p, kProbFloor, 1.0 - kProbFloor);
}

Completion risk_completion(double p) {
    Completion c;
    TokenLogprob a{"A", std::log(p)};
    TokenLogprob b{"B", std::log1p(-p)};
    if (a.logprob >= b.logprob) {
        c.first_token_logprobs = {a, b};
    } else {
        c.first_token_logprobs = {b, a};
    }
    c.text = p >= 0.5 ? "A" : "B";
    return c;
}

std::string format_confidence(double conf, MockProfile::ConfidenceStyle style) {
    char buf[32];
    if (style == MockProfile::ConfidenceStyle::Rounded) {
        std::snprintf(buf, sizeof(buf), "%.1f", conf);
    } else {
        std::snprintf(buf, sizeof(buf), "%.12g", conf);
    }
    return buf;
}

}  // namespace

std::string canonical_profile_json(const MockProfile& profile) {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& [name, w] : profile.weights) weights[name] = w;
    nlohmann::json j{
        {"calibration_shift", profile.calibration_shift},
        {"confidence_style", profile.confidence_style == MockProfile::ConfidenceStyle::Rounded ? "rounded" : "exact"},
        {"decimal_reply", profile.decimal_reply},
        {"direct_auc_reply", profile.direct_auc_reply},
        {"integer_reply", profile.integer_reply},
        {"logit_scale", profile.logit_scale},
        {"seed", profile.seed},
        {"weights", std::move(weights)},
    };
    return j.dump();
}

Completion mock_complete(const CompletionRequest& request, const MockProfile& profile) {
    const std::string& user = request.messages.user;

    // Risk prompt: the feature block follows "Information: ".
    const auto info = user.find("Information: ");
    if (request.messages.system == "Please respond with a single letter." && info != std::string::npos) {
        const ParsedRow row = parse_feature_block(user, info + std::string("Information: ").size());
        return risk_completion(risk_probability(row, profile));
    }

    // Verbalized prompt: the feature block opens the message.
    if (user.find("Give ONLY the guess and probability") != std::string::npos) {
        const ParsedRow row = parse_feature_block(user, 0);
        const double p = risk_probability(row, profile);
        Completion c;
        c.text = std::string("Guess: ") + (p >= 0.5 ? "A" : "B") +
                 "\nProbability: " + format_confidence(std::max(p, 1.0 - p), profile.confidence_style);
        return c;
    }

    // Task-level elicitation: fixed configured replies, one per mode.
    if (user.find("Respond with only the number.") != std::string::npos) {
        Completion c;
        if (user.find("AUC") != std::string::npos) {
            c.text = profile.direct_auc_reply;
        } else if (user.find("1 (no confidence)") != std::string::npos) {
            c.text = profile.integer_reply;
        } else if (user.find("0.0 (no confidence)") != std::string::npos) {
            c.text = profile.decimal_reply;
        } else {
            raise(Errc::UnparseablePrompt, "unrecognized elicitation prompt");
        }
        return c;
    }

    raise(Errc::UnparseablePrompt, "mock backend cannot interpret this prompt");
}

MockBackend::MockBackend(MockProfile profile) : profile_(std::move(profile)) {
    model_name_ = "mock-" + sha256_hex(canonical_profile_json(profile_)).substr(0, 12);
}

Completion MockBackend::complete(const CompletionRequest& request) {
    return mock_complete(request, profile_);
}

}  // namespace tabsuit
