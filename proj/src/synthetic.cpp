#include "tabsuit/synthetic.hpp"

#include <cmath>
#include <numeric>

#include "tabsuit/errors.hpp"
#include "tabsuit/rng.hpp"

namespace tabsuit {

std::string synthetic_feature_name(std::size_t j) { return "x" + std::to_string(j + 1); }

double SyntheticDataset::true_probability(const std::vector<double>& x) const {
    if (x.size() != spec.weights.size()) raise(Errc::DimensionMismatch, "feature vector width");
    double dot = 0.0;
    double mean_dot = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        dot += spec.weights[j] * x[j];
        mean_dot += spec.weights[j] * 0.5;
    }
    return sigmoid(spec.logit_scale * (dot - mean_dot) + spec.label_shift);
}

SyntheticDataset generate_synthetic_dataset(const SyntheticSpec& spec_in) {
    SyntheticSpec spec = spec_in;
    if (spec.d < 1 || spec.n < 1) raise(Errc::InvalidArgument, "need d >= 1 and n >= 1");
    if (spec.weights.empty()) spec.weights.assign(spec.d, 1.0);
    if (spec.weights.size() != spec.d) raise(Errc::DimensionMismatch, "weights must have d entries");

    std::mt19937_64 gen(spec.seed);
    const double weight_sum = std::accumulate(spec.weights.begin(), spec.weights.end(), 0.0);

    Table table;
    for (std::size_t j = 0; j < spec.d; ++j) {
        table.columns.push_back(Column{synthetic_feature_name(j), {}});
        table.columns.back().values.reserve(spec.n);
    }
    Column outcome{"outcome", {}};
    outcome.values.reserve(spec.n);

    for (std::size_t i = 0; i < spec.n; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < spec.d; ++j) {
            const double x = uniform01(gen);
            table.columns[j].values.push_back(number_cell(x));
            dot += spec.weights[j] * x;
        }
        const double p = sigmoid(spec.logit_scale * (dot - 0.5 * weight_sum) + spec.label_shift);
        const bool positive = uniform01(gen) < p;
        outcome.values.push_back(text_cell(positive ? "Yes" : "No"));
    }
    table.columns.push_back(std::move(outcome));

    SyntheticDataset out;
    out.spec = spec;
    out.dataset.name = spec.name;
    out.dataset.description =
        "Synthetic benchmark records with " + std::to_string(spec.d) +
        " numeric attributes drawn uniformly from [0, 1]; the outcome follows a logistic model of the attributes.";
    out.dataset.table = std::move(table);
    out.dataset.profiles = infer_schema(out.dataset.table);
    out.dataset.designated_target = "outcome";
    out.dataset.label_texts = LabelTexts{"Yes", "No"};
    out.dataset.positive_value = text_cell("Yes");
    out.dataset.question = "Is the outcome for this record positive?";
    return out;
}

}  // namespace tabsuit
