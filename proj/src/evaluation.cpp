#include "fuzzrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fuzzrank/rng.hpp"
#include "fuzzrank/util.hpp"

namespace fuzzrank {

namespace {
constexpr std::uint64_t kFoldRankTag = 0x666F6C64ULL;       // "fold"
constexpr std::uint64_t kFoldFitTag = 0x636C6631ULL;        // "clf1"
constexpr std::uint64_t kStabilityTag = 0x73746162ULL;      // "stab"
constexpr std::uint64_t kSubsampleRefTag = 0x72656631ULL;   // "ref1"
constexpr std::uint64_t kSubsampleCellTag = 0x63656C6CULL;  // "cell"
constexpr std::uint64_t kSubsampleDrawTag = 0x64726177ULL;  // "draw"
}

ClassifierKind classifier_from_string(const std::string& id) {
    if (id == "nb") return ClassifierKind::NB;
    if (id == "rf") return ClassifierKind::RF;
    throw std::invalid_argument("unknown classifier '" + id + "' (expected nb|rf)");
}

std::string classifier_to_string(ClassifierKind kind) {
    return kind == ClassifierKind::NB ? "nb" : "rf";
}

double AccuracyCurve::max_mean_accuracy() const {
    double best = 0.0;
    for (const auto& p : points) best = std::max(best, p.mean_accuracy);
    return best;
}

std::size_t AccuracyCurve::best_k() const {
    std::size_t k = 0;
    double best = -1.0;
    for (const auto& p : points)  // points run k = N..1, so >= keeps the smallest k
        if (p.mean_accuracy >= best) {
            best = p.mean_accuracy;
            k = p.n_features_kept;
        }
    return k;
}

std::vector<AccuracyCurve> accuracy_curves_multi(const Dataset& dataset,
                                                 const MultiRankerFn& ranker,
                                                 const std::vector<std::string>& labels,
                                                 ClassifierKind classifier, const FoldSplit& folds,
                                                 std::uint64_t seed, const EvalConfig& config) {
    const std::size_t n = dataset.n_features();
    const std::size_t k_folds = folds.folds.size();
    const std::size_t n_methods = labels.size();

    // acc[f][m][ki]: accuracy on fold f, method m, keeping top (N - ki) features.
    std::vector<std::vector<std::vector<double>>> acc(
        k_folds, std::vector<std::vector<double>>(n_methods, std::vector<double>(n, 0.0)));
    parallel_for(k_folds, config.jobs, [&](std::size_t f) {
        Dataset train = take_rows(dataset, train_indices(folds, f));
        std::vector<std::vector<double>> test_x;
        std::vector<int> test_y;
        for (std::size_t i : folds.folds[f]) {
            test_x.push_back(dataset.features[i]);
            test_y.push_back(dataset.labels[i]);
        }
        auto rankings = ranker(train, derive_seed(seed, {kFoldRankTag, f}));
        if (rankings.size() != n_methods)
            throw std::runtime_error("accuracy_curves_multi: ranker returned wrong method count");
        for (std::size_t m = 0; m < n_methods; ++m) {
            if (rankings[m].size() != n)
                throw std::runtime_error("accuracy_curves_multi: ranking has wrong length");
            for (std::size_t ki = 0; ki < n; ++ki) {
                std::size_t keep = n - ki;
                std::vector<std::size_t> subset(
                    rankings[m].begin(), rankings[m].begin() + static_cast<std::ptrdiff_t>(keep));
                std::vector<int> pred;
                if (classifier == ClassifierKind::NB) {
                    pred = nb_predict(nb_fit(train, subset), test_x);
                } else {
                    auto model = rf_fit(train, subset, config.rf_trees,
                                        derive_seed(seed, {kFoldFitTag, f, keep}), 1);
                    pred = rf_predict(model, test_x);
                }
                acc[f][m][ki] = accuracy(pred, test_y);
            }
        }
    });

    std::vector<AccuracyCurve> curves(n_methods);
    for (std::size_t m = 0; m < n_methods; ++m) {
        curves[m].classifier = classifier;
        curves[m].method_label = labels[m];
        curves[m].points.reserve(n);
        for (std::size_t ki = 0; ki < n; ++ki) {
            AccuracyPoint pt;
            pt.n_features_kept = n - ki;
            pt.per_fold.reserve(k_folds);
            double sum = 0.0;
            for (std::size_t f = 0; f < k_folds; ++f) {
                pt.per_fold.push_back(acc[f][m][ki]);
                sum += acc[f][m][ki];
            }
            pt.mean_accuracy = sum / static_cast<double>(k_folds);
            curves[m].points.push_back(std::move(pt));
        }
    }
    return curves;
}

AccuracyCurve accuracy_curve(const Dataset& dataset, const RankerFn& ranker,
                             ClassifierKind classifier, const FoldSplit& folds, std::uint64_t seed,
                             const EvalConfig& config) {
    MultiRankerFn multi = [&ranker](const Dataset& train, std::uint64_t s) {
        return std::vector<std::vector<std::size_t>>{ranker(train, s)};
    };
    return accuracy_curves_multi(dataset, multi, {""}, classifier, folds, seed, config).front();
}

double compute_asd(const std::vector<std::vector<double>>& fold_scores, SdConvention convention) {
    const std::size_t k = fold_scores.size();
    if (k < 2) throw std::invalid_argument("compute_asd: at least 2 folds required");
    const std::size_t n = fold_scores.front().size();
    for (const auto& row : fold_scores)
        if (row.size() != n || n == 0)
            throw std::invalid_argument("compute_asd: ragged or empty fold scores");

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mean = 0.0;
        for (std::size_t f = 0; f < k; ++f) mean += fold_scores[f][i];
        mean /= static_cast<double>(k);
        double ss = 0.0;
        for (std::size_t f = 0; f < k; ++f) {
            double d = fold_scores[f][i] - mean;
            ss += d * d;
        }
        double denom = convention == SdConvention::Population ? static_cast<double>(k)
                                                              : static_cast<double>(k - 1);
        total += std::sqrt(ss / denom);
    }
    return total / static_cast<double>(n);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson: vectors must have equal length >= 2");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if (vx == 0.0 || vy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return cov / std::sqrt(vx * vy);
}

double compute_apc(const std::vector<std::vector<double>>& fold_scores) {
    const std::size_t k = fold_scores.size();
    if (k < 2) throw std::invalid_argument("compute_apc: at least 2 folds required");
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            double r = pearson(fold_scores[a], fold_scores[b]);
            if (std::isnan(r)) {
                warn("compute_apc: constant score vector; counting the pair as 0");
                r = 0.0;
            }
            total += r;
            pairs++;
        }
    return total / static_cast<double>(pairs);
}

std::vector<StabilityReport> cross_fold_stability_multi(const Dataset& dataset,
                                                        const MultiScorerFn& scorer,
                                                        const std::vector<std::string>& labels,
                                                        const FoldSplit& folds, std::uint64_t seed,
                                                        SdConvention convention, int jobs) {
    const std::size_t k = folds.folds.size();
    const std::size_t n_methods = labels.size();
    const std::size_t n = dataset.n_features();

    // per_fold[f][m] = score vector of method m on fold f's training split.
    std::vector<std::vector<std::vector<double>>> per_fold(k);
    parallel_for(k, jobs, [&](std::size_t f) {
        Dataset train = take_rows(dataset, train_indices(folds, f));
        per_fold[f] = scorer(train, derive_seed(seed, {kStabilityTag, f}));
        if (per_fold[f].size() != n_methods)
            throw std::runtime_error("cross_fold_stability_multi: wrong method count");
        for (const auto& v : per_fold[f])
            if (v.size() != n)
                throw std::runtime_error("cross_fold_stability_multi: wrong score length");
    });

    std::vector<StabilityReport> reports(n_methods);
    for (std::size_t m = 0; m < n_methods; ++m) {
        auto& report = reports[m];
        report.method_label = labels[m];
        report.fold_scores.resize(k);
        for (std::size_t f = 0; f < k; ++f) report.fold_scores[f] = per_fold[f][m];
        report.per_feature_sd.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::vector<double>> column(k, std::vector<double>(1));
            for (std::size_t f = 0; f < k; ++f) column[f][0] = report.fold_scores[f][i];
            report.per_feature_sd[i] = compute_asd(column, convention);
        }
        report.asd = compute_asd(report.fold_scores, convention);
        report.apc = compute_apc(report.fold_scores);
    }
    return reports;
}

StabilityReport cross_fold_stability(const Dataset& dataset, const ScorerFn& scorer,
                                     const FoldSplit& folds, std::uint64_t seed,
                                     SdConvention convention, int jobs) {
    MultiScorerFn multi = [&scorer](const Dataset& data, std::uint64_t s) {
        return std::vector<std::vector<double>>{scorer(data, s)};
    };
    return cross_fold_stability_multi(dataset, multi, {""}, folds, seed, convention, jobs).front();
}

std::vector<double> default_p_grid() { return {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3}; }

std::vector<SubsampleCurve> subsample_stability_multi(const Dataset& dataset,
                                                      const MultiScorerFn& scorer,
                                                      const std::vector<std::string>& labels,
                                                      const std::vector<double>& p_grid,
                                                      std::size_t repeats, std::uint64_t seed,
                                                      int jobs) {
    if (repeats < 1) throw std::invalid_argument("subsample_stability: repeats >= 1 required");
    const std::size_t n_methods = labels.size();
    const std::uint64_t ref_seed = derive_seed(seed, {kSubsampleRefTag});
    const auto reference = scorer(dataset, ref_seed);
    if (reference.size() != n_methods)
        throw std::runtime_error("subsample_stability_multi: wrong method count");

    std::vector<SubsampleCurve> curves(n_methods);
    for (std::size_t m = 0; m < n_methods; ++m) {
        curves[m].method_label = labels[m];
        curves[m].points.resize(p_grid.size());
        for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
            curves[m].points[pi].p = p_grid[pi];
            curves[m].points[pi].per_repeat.assign(repeats, 0.0);
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi)
        for (std::size_t r = 0; r < repeats; ++r) cells.emplace_back(pi, r);

    parallel_for(cells.size(), jobs, [&](std::size_t c) {
        auto [pi, r] = cells[c];
        double p = p_grid[pi];
        std::uint64_t cell_seed =
            p == 1.0 ? ref_seed : derive_seed(seed, {kSubsampleCellTag, pi, r});
        Dataset sub = subsample(dataset, p, derive_seed(seed, {kSubsampleDrawTag, pi, r}));
        auto scores = scorer(sub, cell_seed);
        for (std::size_t m = 0; m < n_methods; ++m) {
            double rho = pearson(scores[m], reference[m]);
            if (std::isnan(rho)) {
                warn("subsample_stability: constant score vector; recording 0");
                rho = 0.0;
            }
            curves[m].points[pi].per_repeat[r] = rho;
        }
    });

    for (auto& curve : curves)
        for (auto& pt : curve.points) {
            double sum = 0.0;
            for (double v : pt.per_repeat) sum += v;
            pt.mean_pearson = sum / static_cast<double>(pt.per_repeat.size());
        }
    return curves;
}

SubsampleCurve subsample_stability(const Dataset& dataset, const ScorerFn& scorer,
                                   const std::vector<double>& p_grid, std::size_t repeats,
                                   std::uint64_t seed, int jobs) {
    MultiScorerFn multi = [&scorer](const Dataset& data, std::uint64_t s) {
        return std::vector<std::vector<double>>{scorer(data, s)};
    };
    return subsample_stability_multi(dataset, multi, {""}, p_grid, repeats, seed, jobs).front();
}

MethodSet standard_method_set(const EnsembleConfig& config) {
    MethodSet set;
    for (MethodId m : config.methods) set.labels.push_back(method_to_string(m));
    for (Scheme s : all_schemes()) set.labels.push_back(scheme_to_string(s));

    EnsembleConfig cfg = config;
    set.scorer = [cfg](const Dataset& data, std::uint64_t seed) {
        std::vector<std::vector<double>> out;
        out.reserve(cfg.methods.size() + all_schemes().size());
        for (MethodId m : cfg.methods)
            out.push_back(normalize_scores(score_method(data, m, cfg.selector).scores));
        RawScores raw = collect_raw_scores(data, cfg, seed);
        for (Scheme s : all_schemes())
            out.push_back(rank_from_raw_scores(raw, cfg, s).defuzzified_scores);
        return out;
    };
    set.ranker = [cfg](const Dataset& train, std::uint64_t seed) {
        std::vector<std::vector<std::size_t>> out;
        out.reserve(cfg.methods.size() + all_schemes().size());
        for (MethodId m : cfg.methods)
            out.push_back(ranking_from_scores(score_method(train, m, cfg.selector).scores));
        RawScores raw = collect_raw_scores(train, cfg, seed);
        for (Scheme s : all_schemes())
            out.push_back(rank_from_raw_scores(raw, cfg, s).ranking);
        return out;
    };
    return set;
}

}  // namespace fuzzrank
