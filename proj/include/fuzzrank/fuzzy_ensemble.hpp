#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fuzzrank/dataset.hpp"
#include "fuzzrank/selectors.hpp"

namespace fuzzrank {

// Discrete universe for fuzzy sets: the 101 points {0, 0.01, ..., 1}.
inline constexpr std::size_t kGridSize = 101;

// Grid point value for index q. Always q/100.0 — do not substitute q*0.01,
// which yields different doubles for some q.
inline double grid_point(std::size_t q) { return static_cast<double>(q) / 100.0; }

// Rounds a value in [0,1] to the nearest grid index; exact .005 ties round
// up. Throws on out-of-range input.
int discretize_to_grid(double value);

// Same, returning the grid value itself.
double discretize(double value);

// The discretized normalized scores of one (feature, method) pair across the
// L bootstrap subsets, in subset order.
struct ScoreSamples {
    std::vector<int> grid_ids;  // length L, each in [0, 100]
    std::size_t feature_index = 0;
    MethodId method_id = MethodId::CFS_SU;

    std::vector<double> values() const;  // grid values, same order
};

// Discrete membership function over the grid.
struct FuzzySet {
    std::array<double, kGridSize> mu{};

    double total_mass() const;
};

enum class Scheme { EW, RW, OW, MW };
Scheme scheme_from_string(const std::string& id);  // "ew", "rw", "ow", "mw"
std::string scheme_to_string(Scheme scheme);
const std::vector<Scheme>& all_schemes();

enum class SdConvention { Population, Sample };

struct WeightVector {
    std::vector<double> weights;  // length M, non-negative, sums to 1
    std::size_t feature_index = 0;
    Scheme scheme = Scheme::EW;
};

// L x 101 binary matrix; row p (1-based level p/L) and grid column q hold 1
// iff p/L <= mu(q). Columns of matrices built from build_fuzzy_set outputs
// are "water-fill" monotone from row 1 upward.
struct BinaryMatrix {
    std::size_t levels = 0;               // L
    std::vector<std::uint8_t> cells;      // row-major, levels * kGridSize

    bool at(std::size_t p, std::size_t q) const {  // p in [1, L]
        return cells[(p - 1) * kGridSize + q] != 0;
    }
};

struct RankingResult {
    std::vector<double> defuzzified_scores;  // c_i in [0,1], one per feature
    std::vector<std::size_t> ranking;        // most to least significant
    Scheme scheme = Scheme::EW;
    std::uint64_t seed = 0;
    std::size_t subsets = 0;  // L
    double ratio = 0.0;
    std::vector<MethodId> method_ids;
    std::string dataset_name;
    std::vector<std::string> feature_names;
};

// --- Pipeline steps ---------------------------------------------------------

// L bootstrap index lists over [0, S), each of ceil(ratio * S) rows drawn
// with replacement. Subset l uses a stream derived from (seed, l), so the
// lists are identical regardless of evaluation order or thread count. A
// subset missing a class is redrawn up to 100 times, then an error is thrown.
std::vector<std::vector<std::size_t>> bootstrap_indices(const Dataset& dataset, std::size_t L,
                                                        double ratio, std::uint64_t seed);
std::vector<Dataset> bootstrap_subsets(const Dataset& dataset, std::size_t L, double ratio,
                                       std::uint64_t seed);

// Min-max normalization across the entries of one score vector; a constant
// vector maps to all 0.5 (neutral midpoint).
std::vector<double> normalize_scores(const std::vector<double>& raw);

// Membership from sample frequencies: mu(x) = freq(x)/L; total mass 1.
FuzzySet build_fuzzy_set(const ScoreSamples& samples, std::size_t L);

// Population (or sample) standard deviation of the grid values, two-pass,
// summed in sample order.
double samples_sd(const ScoreSamples& samples, SdConvention convention);

// --- Weighting schemes ------------------------------------------------------

WeightVector weights_equal(std::size_t M);
WeightVector weights_reciprocal_sd(const std::vector<ScoreSamples>& samples_per_method,
                                   SdConvention convention = SdConvention::Population);
WeightVector weights_one_minus_sd(const std::vector<ScoreSamples>& samples_per_method,
                                  SdConvention convention = SdConvention::Population);
BinaryMatrix binarize_fuzzy_set(const FuzzySet& fs, std::size_t L);
WeightVector weights_matrix_similarity(const std::vector<FuzzySet>& fuzzy_sets, std::size_t L);

// --- Combination and ranking ------------------------------------------------

// mu_com(x) = sum_j w_j mu_j(x); weights must sum to 1.
FuzzySet combine_fuzzy_sets(const std::vector<FuzzySet>& fuzzy_sets, const WeightVector& weights);

// Center of average: sum_x x mu(x) / sum_x mu(x). Throws on zero total mass.
double defuzzify(const FuzzySet& fs);

// Descending argsort; ties broken by ascending feature index.
std::vector<std::size_t> ranking_from_scores(const std::vector<double>& scores);

// --- Full pipeline ----------------------------------------------------------

enum class NormalizationScope {
    AcrossFeatures,  // per (subset, method) run, across the N features (default)
    AcrossSubsets,   // per (feature, method), across the L subsets (comparison mode)
};
NormalizationScope normalization_scope_from_string(const std::string& id);
std::string normalization_scope_to_string(NormalizationScope scope);

struct EnsembleConfig {
    std::size_t subsets = 100;  // L
    double ratio = 0.632;
    std::vector<MethodId> methods = all_methods();
    SelectorConfig selector{};
    SdConvention sd_convention = SdConvention::Population;
    NormalizationScope normalization_scope = NormalizationScope::AcrossFeatures;
    int jobs = 1;
};

// Raw selector scores indexed [subset][method][feature]; the seam between
// data-dependent scoring and the deterministic combination stages.
struct RawScores {
    std::vector<std::vector<std::vector<double>>> values;
};

RawScores collect_raw_scores(const Dataset& dataset, const EnsembleConfig& config,
                             std::uint64_t seed);

// Normalization through defuzzification and ranking, given raw scores.
RankingResult rank_from_raw_scores(const RawScores& raw, const EnsembleConfig& config,
                                   Scheme scheme);

// Whole pipeline: bootstrap, score, normalize, discretize, build fuzzy sets,
// weight, combine, defuzzify, rank. Deterministic per seed; jobs only affects
// wall time, never the result.
RankingResult rank_features(const Dataset& dataset, Scheme scheme, const EnsembleConfig& config,
                            std::uint64_t seed);

}  // namespace fuzzrank
