#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fuzzrank/evaluation.hpp"
#include "fuzzrank/rng.hpp"
#include "reference_impl.hpp"

using namespace fuzzrank;

namespace {

Dataset random_dataset(std::size_t s, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    d.name = "random";
    for (std::size_t i = 0; i < n; ++i) d.feature_names.push_back("f" + std::to_string(i));
    d.class_names = {"0", "1"};
    for (std::size_t i = 0; i < s; ++i) {
        int y = i < s / 2 ? 0 : 1;
        std::vector<double> row(n);
        for (std::size_t f = 0; f < n; ++f)
            // First feature carries signal so folds are learnable.
            row[f] = rng.unit() + (f == 0 && y == 1 ? 1.5 : 0.0);
        d.features.push_back(std::move(row));
        d.labels.push_back(y);
    }
    return d;
}

// A deterministic scorer: per-feature mean (ignores its seed).
std::vector<double> mean_scores(const Dataset& data) {
    std::vector<double> out(data.n_features(), 0.0);
    for (const auto& row : data.features)
        for (std::size_t f = 0; f < out.size(); ++f) out[f] += row[f];
    for (auto& v : out) v /= static_cast<double>(data.n_samples());
    return out;
}

}  // namespace

TEST_CASE("compute_asd matches hand values exactly") {
    // Feature 0 fold scores {0, 0.2}: population sd 0.1; feature 1 {0.4, 0.8}: 0.2.
    std::vector<std::vector<double>> folds = {{0.0, 0.4}, {0.2, 0.8}};
    CHECK(compute_asd(folds) == doctest::Approx(0.15).epsilon(1e-15));
    // Sample convention scales each sd by sqrt(2).
    CHECK(compute_asd(folds, SdConvention::Sample) ==
          doctest::Approx(0.15 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(compute_asd({{0.5, 0.5}, {0.5, 0.5}}) == 0.0);
    CHECK_THROWS_AS(compute_asd({{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(compute_asd({{1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("compute_asd equals the reference on random inputs") {
    Rng rng(321);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t k = 2 + rng.below(6), n = 1 + rng.below(10);
        std::vector<std::vector<double>> folds(k, std::vector<double>(n));
        for (auto& row : folds)
            for (auto& v : row) v = rng.unit();
        CHECK(compute_asd(folds) == refimpl::asd(folds));
        CHECK(compute_asd(folds, SdConvention::Sample) == refimpl::asd(folds, true));
    }
}

TEST_CASE("pearson hits the exact poles and matches the reference") {
    std::vector<double> x = {0.1, 0.5, 0.2, 0.9, 0.4};
    CHECK(pearson(x, x) == 1.0);

    std::vector<double> neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    CHECK(pearson(x, neg) == -1.0);

    std::vector<double> affine(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) affine[i] = 2.0 * x[i] + 3.0;
    CHECK(pearson(x, affine) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(std::isnan(pearson(x, {1.0, 1.0, 1.0, 1.0, 1.0})));
    CHECK_THROWS_AS(pearson({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(pearson({1.0, 2.0}, {1.0}), std::invalid_argument);

    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + rng.below(20);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.unit();
            b[i] = rng.unit();
        }
        double got = pearson(a, b);
        CHECK(got == refimpl::pearson(a, b));
        CHECK(got >= -1.0 - 1e-12);
        CHECK(got <= 1.0 + 1e-12);
    }
}

TEST_CASE("compute_apc averages unordered pairs and zeroes undefined ones") {
    std::vector<double> a = {0.1, 0.2, 0.9};
    std::vector<double> b = {0.2, 0.4, 1.8};          // affine of a: r = 1
    std::vector<double> c = {-0.1, -0.2, -0.9};       // negation of a: r = -1
    CHECK(compute_apc({a, b}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(compute_apc({a, c}) == -1.0);
    // Pairs: (a,b) = 1, (a,const) = 0, (b,const) = 0 -> mean 1/3.
    std::vector<double> flat = {0.5, 0.5, 0.5};
    CHECK(compute_apc({a, b, flat}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t k = 2 + rng.below(5);
        std::vector<std::vector<double>> folds(k, std::vector<double>(6));
        for (auto& row : folds)
            for (auto& v : row) v = rng.unit();
        CHECK(compute_apc(folds) == refimpl::apc(folds));
    }
}

TEST_CASE("accuracy_curve runs k = N..1 and stays in [0,1]") {
    auto d = random_dataset(60, 4, 12);
    auto split = kfold_split(d, 5, 3);
    RankerFn identity = [](const Dataset& train, std::uint64_t) {
        std::vector<std::size_t> r(train.n_features());
        std::iota(r.begin(), r.end(), 0);
        return r;
    };
    auto curve = accuracy_curve(d, identity, ClassifierKind::NB, split, 3);
    REQUIRE(curve.points.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(curve.points[i].n_features_kept == 4 - i);
        CHECK(curve.points[i].per_fold.size() == 5);
        CHECK(curve.points[i].mean_accuracy >= 0.0);
        CHECK(curve.points[i].mean_accuracy <= 1.0);
    }
    // Signal sits in feature 0, so even k = 1 should beat coin flipping.
    CHECK(curve.points[3].mean_accuracy > 0.6);
    CHECK(curve.max_mean_accuracy() >= curve.points[0].mean_accuracy);
    CHECK(curve.best_k() >= 1);
    CHECK(curve.best_k() <= 4);
}

TEST_CASE("best_k picks the smallest k attaining the maximum") {
    AccuracyCurve c;
    c.points = {{3, 0.8, {}}, {2, 0.9, {}}, {1, 0.9, {}}};
    CHECK(c.best_k() == 1);
    CHECK(c.max_mean_accuracy() == 0.9);
}

TEST_CASE("the ranker sees only the training split") {
    auto d = random_dataset(50, 3, 99);
    auto split = kfold_split(d, 5, 1);
    RankerFn checked = [&d](const Dataset& train, std::uint64_t) {
        CHECK(train.n_samples() == 40);  // 4 of 5 folds
        CHECK(train.n_samples() < d.n_samples());
        std::vector<std::size_t> r(train.n_features());
        std::iota(r.begin(), r.end(), 0);
        return r;
    };
    accuracy_curve(d, checked, ClassifierKind::NB, split, 1);
}

TEST_CASE("multi-ranker curves equal the single-ranker curve") {
    auto d = random_dataset(50, 3, 4);
    auto split = kfold_split(d, 5, 6);
    RankerFn reversed = [](const Dataset& train, std::uint64_t) {
        std::vector<std::size_t> r(train.n_features());
        std::iota(r.begin(), r.end(), 0);
        std::reverse(r.begin(), r.end());
        return r;
    };
    MultiRankerFn multi = [&](const Dataset& train, std::uint64_t s) {
        return std::vector<std::vector<std::size_t>>{reversed(train, s)};
    };
    auto single = accuracy_curve(d, reversed, ClassifierKind::NB, split, 6);
    auto batched = accuracy_curves_multi(d, multi, {"rev"}, ClassifierKind::NB, split, 6);
    REQUIRE(batched.size() == 1);
    REQUIRE(batched[0].points.size() == single.points.size());
    for (std::size_t i = 0; i < single.points.size(); ++i) {
        CHECK(batched[0].points[i].mean_accuracy == single.points[i].mean_accuracy);
        CHECK(batched[0].points[i].per_fold == single.points[i].per_fold);
    }
    CHECK(batched[0].method_label == "rev");
}

TEST_CASE("accuracy curves with the random forest are deterministic") {
    auto d = random_dataset(40, 3, 10);
    auto split = kfold_split(d, 4, 2);
    RankerFn identity = [](const Dataset& train, std::uint64_t) {
        std::vector<std::size_t> r(train.n_features());
        std::iota(r.begin(), r.end(), 0);
        return r;
    };
    EvalConfig cfg;
    cfg.rf_trees = 10;
    auto a = accuracy_curve(d, identity, ClassifierKind::RF, split, 5, cfg);
    auto b = accuracy_curve(d, identity, ClassifierKind::RF, split, 5, cfg);
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.points[i].per_fold == b.points[i].per_fold);

    cfg.jobs = 3;
    auto c = accuracy_curve(d, identity, ClassifierKind::RF, split, 5, cfg);
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.points[i].per_fold == c.points[i].per_fold);
}

TEST_CASE("cross_fold_stability summarizes fold scores with ASD and APC") {
    auto d = random_dataset(60, 5, 31);
    auto split = kfold_split(d, 5, 8);
    ScorerFn scorer = [](const Dataset& data, std::uint64_t) { return mean_scores(data); };
    auto report = cross_fold_stability(d, scorer, split, 8);
    REQUIRE(report.fold_scores.size() == 5);
    REQUIRE(report.per_feature_sd.size() == 5);
    CHECK(report.asd == refimpl::asd(report.fold_scores));
    CHECK(report.apc == refimpl::apc(report.fold_scores));
    // Per-feature sds average to the ASD.
    double mean_sd = 0.0;
    for (double v : report.per_feature_sd) mean_sd += v;
    mean_sd /= static_cast<double>(report.per_feature_sd.size());
    CHECK(mean_sd == doctest::Approx(report.asd).epsilon(1e-12));
    // Mean scores barely move across folds: high correlation, low sd.
    CHECK(report.apc > 0.99);
    CHECK(report.asd < 0.05);
}

TEST_CASE("cross_fold_stability multi equals repeated single calls") {
    auto d = random_dataset(40, 4, 77);
    auto split = kfold_split(d, 4, 5);
    ScorerFn scorer = [](const Dataset& data, std::uint64_t) { return mean_scores(data); };
    MultiScorerFn multi = [&](const Dataset& data, std::uint64_t s) {
        return std::vector<std::vector<double>>{scorer(data, s), scorer(data, s)};
    };
    auto single = cross_fold_stability(d, scorer, split, 5);
    auto batched = cross_fold_stability_multi(d, multi, {"a", "b"}, split, 5);
    REQUIRE(batched.size() == 2);
    for (const auto& r : batched) {
        CHECK(r.asd == single.asd);
        CHECK(r.apc == single.apc);
        CHECK(r.fold_scores == single.fold_scores);
    }
    CHECK(batched[0].method_label == "a");
    CHECK(batched[1].method_label == "b");
}

TEST_CASE("subsample_stability correlates p = 1 at exactly 1 and falls gracefully") {
    auto d = random_dataset(80, 4, 55);
    ScorerFn scorer = [](const Dataset& data, std::uint64_t) { return mean_scores(data); };
    auto curve = subsample_stability(d, scorer, {1.0, 0.5}, 3, 42);
    REQUIRE(curve.points.size() == 2);
    CHECK(curve.points[0].p == 1.0);
    CHECK(curve.points[0].mean_pearson == 1.0);
    for (double r : curve.points[0].per_repeat) CHECK(r == 1.0);
    CHECK(curve.points[1].per_repeat.size() == 3);
    for (double r : curve.points[1].per_repeat) {
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
    }

    auto again = subsample_stability(d, scorer, {1.0, 0.5}, 3, 42);
    CHECK(again.points[1].per_repeat == curve.points[1].per_repeat);
}

TEST_CASE("subsample_stability multi equals the single-method run") {
    auto d = random_dataset(60, 3, 13);
    ScorerFn scorer = [](const Dataset& data, std::uint64_t) { return mean_scores(data); };
    MultiScorerFn multi = [&](const Dataset& data, std::uint64_t s) {
        return std::vector<std::vector<double>>{scorer(data, s)};
    };
    auto single = subsample_stability(d, scorer, {0.9, 0.6}, 2, 9);
    auto batched = subsample_stability_multi(d, multi, {"m"}, {0.9, 0.6}, 2, 9);
    REQUIRE(batched.size() == 1);
    for (std::size_t pi = 0; pi < single.points.size(); ++pi) {
        CHECK(batched[0].points[pi].mean_pearson == single.points[pi].mean_pearson);
        CHECK(batched[0].points[pi].per_repeat == single.points[pi].per_repeat);
    }
}

TEST_CASE("default p grid descends from 0.9 to 0.3") {
    auto g = default_p_grid();
    CHECK(g == std::vector<double>{0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3});
}

TEST_CASE("standard_method_set lines up base methods and schemes") {
    EnsembleConfig cfg;
    cfg.subsets = 8;
    cfg.selector.relieff_k = 3;
    auto set = standard_method_set(cfg);
    CHECK(set.labels == std::vector<std::string>{"cfs", "relieff", "mi", "fisher", "ew", "rw",
                                                 "ow", "mw"});

    auto d = random_dataset(40, 4, 21);
    auto scores = set.scorer(d, 5);
    REQUIRE(scores.size() == 8);
    for (const auto& v : scores) CHECK(v.size() == 4);

    // Scheme slots reproduce rank_features byte for byte.
    for (std::size_t si = 0; si < all_schemes().size(); ++si) {
        auto direct = rank_features(d, all_schemes()[si], cfg, 5);
        CHECK(scores[4 + si] == direct.defuzzified_scores);
    }

    // Base slots are the min-max normalized raw scores.
    auto mi_norm = normalize_scores(score_method(d, MethodId::MI, cfg.selector).scores);
    CHECK(scores[2] == mi_norm);

    auto rankings = set.ranker(d, 5);
    REQUIRE(rankings.size() == 8);
    for (std::size_t si = 0; si < all_schemes().size(); ++si) {
        auto direct = rank_features(d, all_schemes()[si], cfg, 5);
        CHECK(rankings[4 + si] == direct.ranking);
    }
    CHECK(rankings[2] == ranking_from_scores(score_method(d, MethodId::MI, cfg.selector).scores));
}

TEST_CASE("classifier ids round-trip") {
    CHECK(classifier_from_string("nb") == ClassifierKind::NB);
    CHECK(classifier_from_string("rf") == ClassifierKind::RF);
    CHECK(classifier_to_string(ClassifierKind::RF) == "rf");
    CHECK_THROWS_AS(classifier_from_string("svm"), std::invalid_argument);
}
