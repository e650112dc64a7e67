#pragma once

#include <cstdint>
#include <vector>

#include "fuzzrank/dataset.hpp"

namespace fuzzrank {

// Gaussian naive Bayes over a feature subset. Prediction input is the
// full-width feature matrix; the model indexes its own subset columns.
// All ties (including the prior-only model with equal priors) go to class 0.
struct NbModel {
    std::vector<std::size_t> feature_subset;        // original column indices
    double log_prior[2] = {0, 0};
    std::vector<double> mean[2];                    // per subset feature, per class
    std::vector<double> var[2];                     // floored, see nb_fit
};

// Priors are empirical class frequencies; per-class per-feature Gaussians use
// population variance floored at 1e-9 times the largest pooled feature
// variance (absolute floor 1e-9 if every feature is constant). An empty
// feature subset yields a prior-only model.
NbModel nb_fit(const Dataset& train, const std::vector<std::size_t>& feature_subset);
std::vector<int> nb_predict(const NbModel& model, const std::vector<std::vector<double>>& samples);

// Small CART random forest: each tree fit on a size-S bootstrap of the
// training data, ceil(sqrt(subset size)) candidate features per node, best
// Gini split, grown until pure or fewer than 2 samples. Tree t draws from a
// stream derived from (seed, t), so the forest is identical for any jobs
// value. Vote ties go to class 0.
struct RfNode {
    int feature = -1;      // position within feature_subset; -1 for a leaf
    double threshold = 0;  // goes left when value <= threshold
    int left = -1, right = -1;
    int leaf_label = -1;
};

struct RfTree {
    std::vector<RfNode> nodes;  // node 0 is the root
};

struct RfModel {
    std::vector<std::size_t> feature_subset;
    std::vector<RfTree> trees;
};

RfModel rf_fit(const Dataset& train, const std::vector<std::size_t>& feature_subset,
               std::size_t n_trees, std::uint64_t seed, int jobs = 1);
std::vector<int> rf_predict(const RfModel& model, const std::vector<std::vector<double>>& samples);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& expected);

}  // namespace fuzzrank
