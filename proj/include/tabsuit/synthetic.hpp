#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tabsuit/dataset.hpp"

namespace tabsuit {

// Logistic-model benchmark generator: d iid uniform[0,1] features, a latent
// score logit_scale * (w.x - w.E[x]) + label_shift, and a Bernoulli outcome.
// label_shift (default 0) miscalibrates the label process relative to the
// centered latent score, for calibration experiments.
struct SyntheticSpec {
    std::string name = "synthetic";
    std::size_t d = 3;
    std::size_t n = 1000;
    std::vector<double> weights;  // one per feature
    double logit_scale = 1.0;
    double label_shift = 0.0;
    std::uint64_t seed = 0;
};

struct SyntheticDataset {
    DatasetProfile dataset;
    SyntheticSpec spec;  // kept so tests know the true conditional probabilities

    // True positive-class probability for one feature vector.
    double true_probability(const std::vector<double>& x) const;
};

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

SyntheticDataset generate_synthetic_dataset(const SyntheticSpec& spec);

// Feature column name for index j (0-based): "x1", "x2", ...
std::string synthetic_feature_name(std::size_t j);

}  // namespace tabsuit
