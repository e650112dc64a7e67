#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzrank/csv.hpp"

namespace fuzzrank {

// Dense binary-labeled tabular dataset. Immutable after construction in all
// pipeline code; safe to share across threads.
struct Dataset {
    std::vector<std::vector<double>> features;  // S rows by N columns
    std::vector<int> labels;                    // values in {0, 1}
    std::vector<std::string> feature_names;     // N unique names
    std::vector<std::string> class_names;       // original label strings, first-seen order
    std::string name;

    std::size_t n_samples() const { return features.size(); }
    std::size_t n_features() const { return features.empty() ? 0 : features.front().size(); }

    // Checks S >= 2, N >= 1, finite values, both classes present, unique
    // feature names. Throws std::invalid_argument on violation.
    void validate() const;
};

// K disjoint index lists covering [0, S); sizes differ by at most one.
struct FoldSplit {
    std::vector<std::vector<std::size_t>> folds;
    std::uint64_t seed = 0;
};

// Loads a CSV with a header row. label_column is a column name, or (if no
// column has that name) a 0-based column index written in decimal. The label
// column must hold exactly two distinct values; they map to {0, 1} in order
// of first appearance. Row order is preserved. Throws on a missing file,
// unknown/ambiguous label column, non-numeric feature cell, more than two
// label values, or fewer than 2 rows.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& dataset_name = "");

// Converts the classic breast-cancer table (first column a sample id, then 9
// integer features, last column the class) into a Dataset: the id column is
// dropped and every row containing a '?' cell is removed. When the input has
// the canonical 699 rows, the result is required to have exactly 683 rows to
// guard against silent data drift.
Dataset preprocess_wbc(const RawTable& raw, const std::string& dataset_name = "wbc");

// Stratified k-fold split: each fold's class counts are within one sample of
// proportional. Falls back to an unstratified split (with a warning) when a
// class has fewer than k samples. Deterministic per seed.
FoldSplit kfold_split(const Dataset& dataset, std::size_t k, std::uint64_t seed);

// Uniform subsample of floor(p * S) rows without replacement, original row
// order preserved; p = 1.0 returns the dataset unchanged. If the sampled
// rows contain a single class, redraws up to 100 times, then throws.
Dataset subsample(const Dataset& dataset, double p, std::uint64_t seed);

// New Dataset with the given rows (indices may repeat, e.g. bootstraps).
Dataset take_rows(const Dataset& dataset, const std::vector<std::size_t>& rows);

// Train indices = everything outside folds[test_fold], in ascending order.
std::vector<std::size_t> train_indices(const FoldSplit& split, std::size_t test_fold);

// Resolves a dataset path: absolute or existing paths are used as-is;
// otherwise, if FUZZRANK_DATA_DIR is set, the path is looked up there.
std::string resolve_data_path(const std::string& path);

}  // namespace fuzzrank
