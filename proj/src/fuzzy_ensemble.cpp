#include "fuzzrank/fuzzy_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fuzzrank/rng.hpp"
#include "fuzzrank/util.hpp"

namespace fuzzrank {

namespace {
constexpr std::uint64_t kBootstrapTag = 0x626F6F74ULL;  // "boot"
}

int discretize_to_grid(double value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument("discretize: value must lie in [0,1]");
    // llround rounds half away from zero, i.e. .005 ties round up here.
    auto q = static_cast<int>(std::llround(value * 100.0));
    return std::clamp(q, 0, static_cast<int>(kGridSize) - 1);
}

double discretize(double value) { return grid_point(static_cast<std::size_t>(discretize_to_grid(value))); }

std::vector<double> ScoreSamples::values() const {
    std::vector<double> v;
    v.reserve(grid_ids.size());
    for (int q : grid_ids) v.push_back(grid_point(static_cast<std::size_t>(q)));
    return v;
}

double FuzzySet::total_mass() const {
    double m = 0.0;
    for (double v : mu) m += v;
    return m;
}

Scheme scheme_from_string(const std::string& id) {
    if (id == "ew") return Scheme::EW;
    if (id == "rw") return Scheme::RW;
    if (id == "ow") return Scheme::OW;
    if (id == "mw") return Scheme::MW;
    throw std::invalid_argument("unknown scheme '" + id + "' (expected ew|rw|ow|mw)");
}

std::string scheme_to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::EW: return "ew";
        case Scheme::RW: return "rw";
        case Scheme::OW: return "ow";
        case Scheme::MW: return "mw";
    }
    throw std::logic_error("unknown scheme");
}

const std::vector<Scheme>& all_schemes() {
    static const std::vector<Scheme> schemes{Scheme::EW, Scheme::RW, Scheme::OW, Scheme::MW};
    return schemes;
}

NormalizationScope normalization_scope_from_string(const std::string& id) {
    if (id == "features") return NormalizationScope::AcrossFeatures;
    if (id == "subsets") return NormalizationScope::AcrossSubsets;
    throw std::invalid_argument("unknown normalization scope '" + id +
                                "' (expected features|subsets)");
}

std::string normalization_scope_to_string(NormalizationScope scope) {
    return scope == NormalizationScope::AcrossFeatures ? "features" : "subsets";
}

std::vector<std::vector<std::size_t>> bootstrap_indices(const Dataset& dataset, std::size_t L,
                                                        double ratio, std::uint64_t seed) {
    if (L < 1) throw std::invalid_argument("bootstrap_indices: L >= 1 required");
    if (!(ratio > 0.0) || ratio > 1.0)
        throw std::invalid_argument("bootstrap_indices: need 0 < ratio <= 1");
    const std::size_t s = dataset.n_samples();
    const auto size = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(s)));

    std::vector<std::vector<std::size_t>> subsets(L);
    for (std::size_t l = 0; l < L; ++l) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 100)
                throw std::runtime_error("bootstrap_indices: subset " + std::to_string(l) +
                                         " failed to draw both classes in 100 attempts");
            Rng rng(derive_seed(seed, {kBootstrapTag, l, static_cast<std::uint64_t>(attempt)}));
            std::vector<std::size_t> idx(size);
            bool has[2] = {false, false};
            for (std::size_t i = 0; i < size; ++i) {
                idx[i] = static_cast<std::size_t>(rng.below(s));
                has[dataset.labels[idx[i]]] = true;
            }
            if (has[0] && has[1]) {
                subsets[l] = std::move(idx);
                break;
            }
        }
    }
    return subsets;
}

std::vector<Dataset> bootstrap_subsets(const Dataset& dataset, std::size_t L, double ratio,
                                       std::uint64_t seed) {
    std::vector<Dataset> out;
    out.reserve(L);
    for (const auto& idx : bootstrap_indices(dataset, L, ratio, seed))
        out.push_back(take_rows(dataset, idx));
    return out;
}

std::vector<double> normalize_scores(const std::vector<double>& raw) {
    if (raw.empty()) return {};
    for (double v : raw)
        if (!std::isfinite(v)) throw std::invalid_argument("normalize_scores: non-finite input");
    double lo = raw[0], hi = raw[0];
    for (double v : raw) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<double> out(raw.size());
    if (hi > lo) {
        for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - lo) / (hi - lo);
    } else {
        std::fill(out.begin(), out.end(), 0.5);
    }
    return out;
}

FuzzySet build_fuzzy_set(const ScoreSamples& samples, std::size_t L) {
    if (samples.grid_ids.size() != L)
        throw std::invalid_argument("build_fuzzy_set: expected exactly L samples");
    FuzzySet fs;
    for (int q : samples.grid_ids) fs.mu[static_cast<std::size_t>(q)] += 1.0;
    for (double& v : fs.mu) v /= static_cast<double>(L);
    return fs;
}

double samples_sd(const ScoreSamples& samples, SdConvention convention) {
    const auto vals = samples.values();
    const auto l = vals.size();
    if (l == 0) return 0.0;
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(l);
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    double denom = convention == SdConvention::Population ? static_cast<double>(l)
                                                          : static_cast<double>(l - 1);
    if (denom <= 0.0) return 0.0;
    return std::sqrt(ss / denom);
}

namespace {

WeightVector normalized_weights(std::vector<double> v, Scheme scheme) {
    double total = 0.0;
    for (double x : v) total += x;
    for (double& x : v) x /= total;
    WeightVector w;
    w.weights = std::move(v);
    w.scheme = scheme;
    return w;
}

}  // namespace

WeightVector weights_equal(std::size_t M) {
    if (M < 1) throw std::invalid_argument("weights_equal: M >= 1 required");
    return normalized_weights(std::vector<double>(M, 1.0), Scheme::EW);
}

WeightVector weights_reciprocal_sd(const std::vector<ScoreSamples>& samples_per_method,
                                   SdConvention convention) {
    if (samples_per_method.empty())
        throw std::invalid_argument("weights_reciprocal_sd: M >= 1 required");
    constexpr double kSdFloor = 1e-6;  // keeps a zero-spread method finite, near winner-take-all
    std::vector<double> v;
    v.reserve(samples_per_method.size());
    for (const auto& s : samples_per_method)
        v.push_back(1.0 / std::max(samples_sd(s, convention), kSdFloor));
    return normalized_weights(std::move(v), Scheme::RW);
}

WeightVector weights_one_minus_sd(const std::vector<ScoreSamples>& samples_per_method,
                                  SdConvention convention) {
    if (samples_per_method.empty())
        throw std::invalid_argument("weights_one_minus_sd: M >= 1 required");
    std::vector<double> v;
    v.reserve(samples_per_method.size());
    for (const auto& s : samples_per_method) v.push_back(1.0 - samples_sd(s, convention));
    return normalized_weights(std::move(v), Scheme::OW);
}

BinaryMatrix binarize_fuzzy_set(const FuzzySet& fs, std::size_t L) {
    BinaryMatrix m;
    m.levels = L;
    m.cells.assign(L * kGridSize, 0);
    for (std::size_t p = 1; p <= L; ++p) {
        double level = static_cast<double>(p) / static_cast<double>(L);
        for (std::size_t q = 0; q < kGridSize; ++q)
            if (level <= fs.mu[q]) m.cells[(p - 1) * kGridSize + q] = 1;
    }
    return m;
}

WeightVector weights_matrix_similarity(const std::vector<FuzzySet>& fuzzy_sets, std::size_t L) {
    const std::size_t m_count = fuzzy_sets.size();
    if (m_count == 0) throw std::invalid_argument("weights_matrix_similarity: M >= 1 required");
    std::vector<BinaryMatrix> b;
    b.reserve(m_count);
    for (const auto& fs : fuzzy_sets) b.push_back(binarize_fuzzy_set(fs, L));

    // comMatrix = sum of all binary matrices, entries in 0..M.
    std::vector<std::uint32_t> com(L * kGridSize, 0);
    for (const auto& bm : b)
        for (std::size_t i = 0; i < com.size(); ++i) com[i] += bm.cells[i];
    std::uint64_t com_total = 0;
    for (std::uint32_t c : com) com_total += c;
    if (com_total == 0) {
        warn("weights_matrix_similarity: all memberships zero; falling back to equal weights");
        auto w = weights_equal(m_count);
        w.scheme = Scheme::MW;
        return w;
    }

    std::vector<double> v;
    v.reserve(m_count);
    for (const auto& bm : b) {
        std::uint64_t overlap = 0;
        for (std::size_t i = 0; i < com.size(); ++i)
            if (bm.cells[i]) overlap += com[i];
        v.push_back(static_cast<double>(overlap) / static_cast<double>(com_total));
    }
    return normalized_weights(std::move(v), Scheme::MW);
}

FuzzySet combine_fuzzy_sets(const std::vector<FuzzySet>& fuzzy_sets, const WeightVector& weights) {
    if (fuzzy_sets.size() != weights.weights.size())
        throw std::invalid_argument("combine_fuzzy_sets: set count does not match weight count");
    FuzzySet out;
    for (std::size_t j = 0; j < fuzzy_sets.size(); ++j)
        for (std::size_t q = 0; q < kGridSize; ++q)
            out.mu[q] += weights.weights[j] * fuzzy_sets[j].mu[q];
    return out;
}

double defuzzify(const FuzzySet& fs) {
    double num = 0.0, den = 0.0;
    for (std::size_t q = 0; q < kGridSize; ++q) {
        num += grid_point(q) * fs.mu[q];
        den += fs.mu[q];
    }
    if (den <= 0.0) throw std::invalid_argument("defuzzify: zero total membership");
    return num / den;
}

std::vector<std::size_t> ranking_from_scores(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

RawScores collect_raw_scores(const Dataset& dataset, const EnsembleConfig& config,
                             std::uint64_t seed) {
    if (config.methods.empty())
        throw std::invalid_argument("collect_raw_scores: at least one method required");
    const auto indices = bootstrap_indices(dataset, config.subsets, config.ratio, seed);
    RawScores raw;
    raw.values.resize(config.subsets);
    parallel_for(config.subsets, config.jobs, [&](std::size_t l) {
        Dataset subset = take_rows(dataset, indices[l]);
        auto& per_method = raw.values[l];
        per_method.resize(config.methods.size());
        for (std::size_t j = 0; j < config.methods.size(); ++j)
            per_method[j] = score_method(subset, config.methods[j], config.selector).scores;
    });
    return raw;
}

RankingResult rank_from_raw_scores(const RawScores& raw, const EnsembleConfig& config,
                                   Scheme scheme) {
    const std::size_t l_count = raw.values.size();
    if (l_count == 0) throw std::invalid_argument("rank_from_raw_scores: no subsets");
    const std::size_t m_count = raw.values.front().size();
    const std::size_t n = raw.values.front().front().size();
    if (config.methods.size() != m_count)
        throw std::invalid_argument("rank_from_raw_scores: method list does not match raw scores");

    // Normalize, then discretize onto the grid.
    // grid[l][j][i], each entry a grid index.
    std::vector<std::vector<std::vector<int>>> grid(
        l_count, std::vector<std::vector<int>>(m_count, std::vector<int>(n)));
    if (config.normalization_scope == NormalizationScope::AcrossFeatures) {
        for (std::size_t l = 0; l < l_count; ++l)
            for (std::size_t j = 0; j < m_count; ++j) {
                auto norm = normalize_scores(raw.values[l][j]);
                for (std::size_t i = 0; i < n; ++i) grid[l][j][i] = discretize_to_grid(norm[i]);
            }
    } else {
        for (std::size_t j = 0; j < m_count; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<double> across(l_count);
                for (std::size_t l = 0; l < l_count; ++l) across[l] = raw.values[l][j][i];
                auto norm = normalize_scores(across);
                for (std::size_t l = 0; l < l_count; ++l)
                    grid[l][j][i] = discretize_to_grid(norm[l]);
            }
    }

    RankingResult result;
    result.scheme = scheme;
    result.subsets = l_count;
    result.ratio = config.ratio;
    result.method_ids = config.methods;
    result.defuzzified_scores.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<ScoreSamples> samples(m_count);
        std::vector<FuzzySet> sets(m_count);
        for (std::size_t j = 0; j < m_count; ++j) {
            samples[j].feature_index = i;
            samples[j].method_id = config.methods[j];
            samples[j].grid_ids.resize(l_count);
            for (std::size_t l = 0; l < l_count; ++l) samples[j].grid_ids[l] = grid[l][j][i];
            sets[j] = build_fuzzy_set(samples[j], l_count);
        }
        WeightVector w;
        switch (scheme) {
            case Scheme::EW: w = weights_equal(m_count); break;
            case Scheme::RW: w = weights_reciprocal_sd(samples, config.sd_convention); break;
            case Scheme::OW: w = weights_one_minus_sd(samples, config.sd_convention); break;
            case Scheme::MW: w = weights_matrix_similarity(sets, l_count); break;
        }
        w.feature_index = i;
        result.defuzzified_scores[i] = defuzzify(combine_fuzzy_sets(sets, w));
    }
    result.ranking = ranking_from_scores(result.defuzzified_scores);
    return result;
}

RankingResult rank_features(const Dataset& dataset, Scheme scheme, const EnsembleConfig& config,
                            std::uint64_t seed) {
    dataset.validate();
    RawScores raw = collect_raw_scores(dataset, config, seed);
    RankingResult result = rank_from_raw_scores(raw, config, scheme);
    result.seed = seed;
    result.dataset_name = dataset.name;
    result.feature_names = dataset.feature_names;
    return result;
}

}  // namespace fuzzrank
