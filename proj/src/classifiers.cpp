#include "fuzzrank/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fuzzrank/rng.hpp"
#include "fuzzrank/util.hpp"

namespace fuzzrank {

namespace {
constexpr std::uint64_t kTreeTag = 0x74726565ULL;  // "tree"
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

NbModel nb_fit(const Dataset& train, const std::vector<std::size_t>& feature_subset) {
    const std::size_t s = train.n_samples();
    std::size_t n_class[2] = {0, 0};
    for (int y : train.labels) n_class[y]++;
    if (n_class[0] == 0 || n_class[1] == 0)
        throw std::invalid_argument("nb_fit: both classes required in training data");

    NbModel m;
    m.feature_subset = feature_subset;
    for (int c = 0; c < 2; ++c)
        m.log_prior[c] = std::log(static_cast<double>(n_class[c]) / static_cast<double>(s));

    const std::size_t k = feature_subset.size();
    if (k == 0) return m;  // prior-only model

    for (int c = 0; c < 2; ++c) {
        m.mean[c].assign(k, 0.0);
        m.var[c].assign(k, 0.0);
    }
    for (std::size_t i = 0; i < s; ++i) {
        int c = train.labels[i];
        for (std::size_t f = 0; f < k; ++f) m.mean[c][f] += train.features[i][feature_subset[f]];
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t f = 0; f < k; ++f) m.mean[c][f] /= static_cast<double>(n_class[c]);
    for (std::size_t i = 0; i < s; ++i) {
        int c = train.labels[i];
        for (std::size_t f = 0; f < k; ++f) {
            double d = train.features[i][feature_subset[f]] - m.mean[c][f];
            m.var[c][f] += d * d;
        }
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t f = 0; f < k; ++f) m.var[c][f] /= static_cast<double>(n_class[c]);

    // Variance floor relative to the largest pooled feature variance.
    double max_var = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
        double mean = 0.0;
        for (std::size_t i = 0; i < s; ++i) mean += train.features[i][feature_subset[f]];
        mean /= static_cast<double>(s);
        double v = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            double d = train.features[i][feature_subset[f]] - mean;
            v += d * d;
        }
        max_var = std::max(max_var, v / static_cast<double>(s));
    }
    double floor = max_var > 0.0 ? 1e-9 * max_var : 1e-9;
    for (int c = 0; c < 2; ++c)
        for (std::size_t f = 0; f < k; ++f) m.var[c][f] = std::max(m.var[c][f], floor);
    return m;
}

std::vector<int> nb_predict(const NbModel& model, const std::vector<std::vector<double>>& samples) {
    std::vector<int> out;
    out.reserve(samples.size());
    const std::size_t k = model.feature_subset.size();
    for (const auto& row : samples) {
        double score[2];
        for (int c = 0; c < 2; ++c) {
            double s = model.log_prior[c];
            for (std::size_t f = 0; f < k; ++f) {
                std::size_t col = model.feature_subset[f];
                if (col >= row.size())
                    throw std::invalid_argument("nb_predict: sample narrower than feature subset");
                double d = row[col] - model.mean[c][f];
                s += -0.5 * (kLog2Pi + std::log(model.var[c][f])) -
                     d * d / (2.0 * model.var[c][f]);
            }
            score[c] = s;
        }
        out.push_back(score[1] > score[0] ? 1 : 0);
    }
    return out;
}

namespace {

struct TreeBuilder {
    const Dataset& train;
    const std::vector<std::size_t>& subset;  // original column indices
    Rng& rng;
    RfTree& tree;

    double gini(std::size_t c1, std::size_t total) const {
        if (total == 0) return 0.0;
        double p1 = static_cast<double>(c1) / static_cast<double>(total);
        double p0 = 1.0 - p1;
        return 1.0 - p0 * p0 - p1 * p1;
    }

    int majority(const std::vector<std::size_t>& rows) const {
        std::size_t ones = 0;
        for (std::size_t r : rows) ones += static_cast<std::size_t>(train.labels[r]);
        return ones * 2 > rows.size() ? 1 : 0;  // tie -> class 0
    }

    int build(std::vector<std::size_t>& rows) {
        int id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        std::size_t ones = 0;
        for (std::size_t r : rows) ones += static_cast<std::size_t>(train.labels[r]);
        bool pure = ones == 0 || ones == rows.size();
        if (pure || rows.size() < 2) {
            tree.nodes[id].leaf_label = ones * 2 > rows.size() ? 1 : 0;
            return id;
        }

        // Sample ceil(sqrt(k)) distinct candidate feature positions.
        const std::size_t k = subset.size();
        auto mtry = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(k))));
        std::vector<std::size_t> pos(k);
        std::iota(pos.begin(), pos.end(), 0);
        for (std::size_t i = 0; i < mtry; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(k - i));
            std::swap(pos[i], pos[j]);
        }

        int best_feature = -1;
        double best_threshold = 0.0, best_impurity = 0.0;
        std::vector<std::pair<double, int>> vals;  // (value, label)
        for (std::size_t ci = 0; ci < mtry; ++ci) {
            std::size_t col = subset[pos[ci]];
            vals.clear();
            for (std::size_t r : rows) vals.emplace_back(train.features[r][col], train.labels[r]);
            std::sort(vals.begin(), vals.end());
            std::size_t total_ones = ones, left_ones = 0;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                left_ones += static_cast<std::size_t>(vals[i].second);
                if (vals[i].first == vals[i + 1].first) continue;  // not a boundary
                std::size_t n_left = i + 1, n_right = vals.size() - n_left;
                double impurity =
                    (static_cast<double>(n_left) * gini(left_ones, n_left) +
                     static_cast<double>(n_right) * gini(total_ones - left_ones, n_right)) /
                    static_cast<double>(vals.size());
                if (best_feature < 0 || impurity < best_impurity) {
                    best_feature = static_cast<int>(pos[ci]);
                    best_threshold = vals[i].first + (vals[i + 1].first - vals[i].first) / 2.0;
                    best_impurity = impurity;
                }
            }
        }
        if (best_feature < 0) {  // all candidates constant on these rows
            tree.nodes[id].leaf_label = majority(rows);
            return id;
        }

        std::vector<std::size_t> left, right;
        std::size_t col = subset[static_cast<std::size_t>(best_feature)];
        for (std::size_t r : rows) {
            if (train.features[r][col] <= best_threshold)
                left.push_back(r);
            else
                right.push_back(r);
        }
        if (left.empty() || right.empty()) {  // midpoint rounding collapse guard
            tree.nodes[id].leaf_label = majority(rows);
            return id;
        }
        rows.clear();
        rows.shrink_to_fit();
        tree.nodes[id].feature = best_feature;
        tree.nodes[id].threshold = best_threshold;
        int l = build(left);
        int r = build(right);
        tree.nodes[id].left = l;
        tree.nodes[id].right = r;
        return id;
    }
};

int tree_predict(const RfTree& tree, const std::vector<std::size_t>& subset,
                 const std::vector<double>& row) {
    int id = 0;
    for (;;) {
        const RfNode& node = tree.nodes[static_cast<std::size_t>(id)];
        if (node.leaf_label >= 0) return node.leaf_label;
        std::size_t col = subset[static_cast<std::size_t>(node.feature)];
        if (col >= row.size())
            throw std::invalid_argument("rf_predict: sample narrower than feature subset");
        id = row[col] <= node.threshold ? node.left : node.right;
    }
}

}  // namespace

RfModel rf_fit(const Dataset& train, const std::vector<std::size_t>& feature_subset,
               std::size_t n_trees, std::uint64_t seed, int jobs) {
    if (n_trees < 1) throw std::invalid_argument("rf_fit: n_trees >= 1 required");
    std::size_t n_class[2] = {0, 0};
    for (int y : train.labels) n_class[y]++;
    if (n_class[0] == 0 || n_class[1] == 0)
        throw std::invalid_argument("rf_fit: both classes required in training data");

    RfModel model;
    model.feature_subset = feature_subset;
    model.trees.resize(n_trees);
    const std::size_t s = train.n_samples();

    if (feature_subset.empty()) {
        // Degenerate forest: every tree is a majority-vote leaf over its bootstrap.
        parallel_for(n_trees, jobs, [&](std::size_t t) {
            Rng rng(derive_seed(seed, {kTreeTag, t}));
            std::size_t ones = 0;
            for (std::size_t i = 0; i < s; ++i)
                ones += static_cast<std::size_t>(train.labels[rng.below(s)]);
            RfNode leaf;
            leaf.leaf_label = ones * 2 > s ? 1 : 0;
            model.trees[t].nodes.push_back(leaf);
        });
        return model;
    }

    parallel_for(n_trees, jobs, [&](std::size_t t) {
        Rng rng(derive_seed(seed, {kTreeTag, t}));
        std::vector<std::size_t> rows(s);
        for (auto& r : rows) r = static_cast<std::size_t>(rng.below(s));
        TreeBuilder builder{train, feature_subset, rng, model.trees[t]};
        builder.build(rows);
    });
    return model;
}

std::vector<int> rf_predict(const RfModel& model, const std::vector<std::vector<double>>& samples) {
    std::vector<int> out;
    out.reserve(samples.size());
    for (const auto& row : samples) {
        std::size_t ones = 0;
        for (const auto& tree : model.trees)
            ones += static_cast<std::size_t>(tree_predict(tree, model.feature_subset, row));
        out.push_back(ones * 2 > model.trees.size() ? 1 : 0);  // tie -> class 0
    }
    return out;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& expected) {
    if (predicted.size() != expected.size() || predicted.empty())
        throw std::invalid_argument("accuracy: label vectors must be non-empty and equal length");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == expected[i]) correct++;
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

}  // namespace fuzzrank
