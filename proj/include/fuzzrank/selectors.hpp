#pragma once

#include <string>
#include <vector>

#include "fuzzrank/dataset.hpp"

namespace fuzzrank {

// The four base feature scorers. Order here is the canonical reporting order.
enum class MethodId { CFS_SU, RELIEFF, MI, FISHER };

struct ScoreVector {
    std::vector<double> scores;  // one finite value per feature; higher = more relevant
    MethodId method_id;
};

struct SelectorConfig {
    std::size_t relieff_k = 10;  // neighbors per class
    std::size_t bins = 10;       // equal-width bins for MI / SU
};

// ReliefF with every sample as an anchor (no anchor subsampling, so the
// scorer is deterministic). Features are min-max scaled to [0,1] internally;
// per-feature difference is the absolute scaled difference and neighbors are
// found by the summed difference over all features. For each anchor, the
// average difference to the k nearest same-class hits is subtracted and the
// prior-weighted average difference to the k nearest other-class misses is
// added. A class with fewer than k+1 members gets k reduced to class_size-1
// (with a warning).
ScoreVector score_relieff(const Dataset& dataset, std::size_t k_neighbors = 10);

// Mutual information I(binned feature; label) in bits over an equal-width
// histogram of n_bins. Constant features score exactly 0.
ScoreVector score_mutual_information(const Dataset& dataset, std::size_t n_bins = 10);

// Symmetrical uncertainty SU = 2 I(X;Y) / (H(X) + H(Y)) on the same binning;
// in [0,1], defined as 0 when H(X) + H(Y) = 0.
ScoreVector score_correlation_su(const Dataset& dataset, std::size_t n_bins = 10);

// Fisher score: between-class scatter over within-class scatter,
// (n0 (m0-m)^2 + n1 (m1-m)^2) / (n0 v0 + n1 v1 + 1e-12), with population
// within-class variances.
ScoreVector score_fisher(const Dataset& dataset);

ScoreVector score_method(const Dataset& dataset, MethodId method, const SelectorConfig& config);

// String ids used by the CLI and serialized reports.
MethodId method_from_string(const std::string& id);    // "cfs", "relieff", "mi", "fisher"
std::string method_to_string(MethodId method);
const std::vector<MethodId>& all_methods();

}  // namespace fuzzrank
