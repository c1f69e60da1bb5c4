#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "tabsuit/gateway.hpp"

namespace tabsuit {

// Deterministic offline stand-in for a token-probability chat API. Risk
// prompts are parsed back into "Feature: Value" pairs and scored with a
// logistic model, so the serializer round-trip is exercised end to end.
struct MockProfile {
    std::map<std::string, double> weights;  // keyed by feature name; E[x] is 0.5 per feature
    double logit_scale = 1.0;
    double calibration_shift = 0.0;  // additive logit shift applied to the mock's predictions

    enum class ConfidenceStyle { Rounded, Exact };
    ConfidenceStyle confidence_style = ConfidenceStyle::Exact;

    std::uint64_t seed = 0;

    // Fixed replies for the three task-elicitation prompts.
    std::string direct_auc_reply = "0.75";
    std::string integer_reply = "3";
    std::string decimal_reply = "0.5";
};

// Canonical JSON form of a profile; hashed into the mock's model name so a
// profile change invalidates cached responses.
std::string canonical_profile_json(const MockProfile& profile);

Completion mock_complete(const CompletionRequest& request, const MockProfile& profile);

class MockBackend : public CompletionBackend {
public:
    explicit MockBackend(MockProfile profile);
    Completion complete(const CompletionRequest& request) override;
    std::string model_name() const override { return model_name_; }

private:
    MockProfile profile_;
    std::string model_name_;
};

}  // namespace tabsuit
