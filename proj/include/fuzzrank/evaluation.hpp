#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fuzzrank/classifiers.hpp"
#include "fuzzrank/dataset.hpp"
#include "fuzzrank/fuzzy_ensemble.hpp"

namespace fuzzrank {

// Produces a feature ranking (most to least significant) from training data.
using RankerFn = std::function<std::vector<std::size_t>(const Dataset& train, std::uint64_t seed)>;

// Produces one score per feature from the given data.
using ScorerFn = std::function<std::vector<double>(const Dataset& data, std::uint64_t seed)>;

// Batched variants: several methods evaluated on the same data in one call,
// so methods that share expensive intermediate work (the four weighting
// schemes share one bootstrap-scoring pass) are not recomputed per method.
using MultiRankerFn =
    std::function<std::vector<std::vector<std::size_t>>(const Dataset& train, std::uint64_t seed)>;
using MultiScorerFn =
    std::function<std::vector<std::vector<double>>(const Dataset& data, std::uint64_t seed)>;

enum class ClassifierKind { NB, RF };
ClassifierKind classifier_from_string(const std::string& id);  // "nb", "rf"
std::string classifier_to_string(ClassifierKind kind);

struct EvalConfig {
    std::size_t rf_trees = 100;
    int jobs = 1;
};

struct AccuracyPoint {
    std::size_t n_features_kept;
    double mean_accuracy;
    std::vector<double> per_fold;
};

struct AccuracyCurve {
    std::vector<AccuracyPoint> points;  // k = N down to 1
    ClassifierKind classifier = ClassifierKind::NB;
    std::string method_label;

    double max_mean_accuracy() const;
    std::size_t best_k() const;  // smallest k attaining the maximum
};

// For each fold: rank features on the training split only, then for every k
// from N down to 1 fit the classifier on the top-k features and measure
// accuracy on the held-out fold. The test fold never reaches the ranker.
AccuracyCurve accuracy_curve(const Dataset& dataset, const RankerFn& ranker,
                             ClassifierKind classifier, const FoldSplit& folds, std::uint64_t seed,
                             const EvalConfig& config = {});

// Same protocol for several rankings produced in one pass per fold; returns
// one curve per label, and derives identical per-fold seeds as the
// single-ranker version.
std::vector<AccuracyCurve> accuracy_curves_multi(const Dataset& dataset,
                                                 const MultiRankerFn& ranker,
                                                 const std::vector<std::string>& labels,
                                                 ClassifierKind classifier, const FoldSplit& folds,
                                                 std::uint64_t seed, const EvalConfig& config = {});

// Average over features of the cross-fold standard deviation of scores.
double compute_asd(const std::vector<std::vector<double>>& fold_scores,
                   SdConvention convention = SdConvention::Population);

// Mean Pearson correlation over all unordered fold pairs. A pair involving a
// constant score vector contributes 0 (with a warning).
double compute_apc(const std::vector<std::vector<double>>& fold_scores);

// Two-pass Pearson correlation, r = cov / sqrt(var_x * var_y). Returns NaN
// when either vector is constant; identical vectors give exactly 1.0 and
// exact negations give exactly -1.0.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct StabilityReport {
    double asd = 0.0;
    double apc = 0.0;
    std::vector<double> per_feature_sd;
    std::vector<std::vector<double>> fold_scores;  // K x N
    std::string method_label;
};

// Scores each fold's training split with the scorer and summarizes ASD/APC.
StabilityReport cross_fold_stability(const Dataset& dataset, const ScorerFn& scorer,
                                     const FoldSplit& folds, std::uint64_t seed,
                                     SdConvention convention = SdConvention::Population,
                                     int jobs = 1);

std::vector<StabilityReport> cross_fold_stability_multi(const Dataset& dataset,
                                                        const MultiScorerFn& scorer,
                                                        const std::vector<std::string>& labels,
                                                        const FoldSplit& folds, std::uint64_t seed,
                                                        SdConvention convention =
                                                            SdConvention::Population,
                                                        int jobs = 1);

struct SubsamplePoint {
    double p;
    double mean_pearson;
    std::vector<double> per_repeat;
};

struct SubsampleCurve {
    std::vector<SubsamplePoint> points;
    std::string method_label;
};

// Reference scores come from the full dataset; each (p, repeat) cell draws a
// proportion-p subsample with its own derived seed, scores it, and records
// the Pearson correlation against the reference. p = 1.0 cells reuse the
// reference seed so they correlate at exactly 1.
SubsampleCurve subsample_stability(const Dataset& dataset, const ScorerFn& scorer,
                                   const std::vector<double>& p_grid, std::size_t repeats,
                                   std::uint64_t seed, int jobs = 1);

std::vector<SubsampleCurve> subsample_stability_multi(const Dataset& dataset,
                                                      const MultiScorerFn& scorer,
                                                      const std::vector<std::string>& labels,
                                                      const std::vector<double>& p_grid,
                                                      std::size_t repeats, std::uint64_t seed,
                                                      int jobs = 1);

// Default grid {0.9, 0.8, ..., 0.3}.
std::vector<double> default_p_grid();

// The standard report lineup: the four base methods followed by the four
// weighting schemes. The base-method score vector is the method's raw scores
// min-max normalized across features (matching the ensemble's normalization
// step, and making cross-fold standard deviations scale-comparable); scheme
// score vectors are the defuzzified scores. All schemes share a single
// bootstrap-scoring pass per call.
struct MethodSet {
    std::vector<std::string> labels;
    MultiScorerFn scorer;
    MultiRankerFn ranker;
};
MethodSet standard_method_set(const EnsembleConfig& config);

}  // namespace fuzzrank
