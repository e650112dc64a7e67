#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fuzzrank/dataset.hpp"
#include "fuzzrank/selectors.hpp"

using namespace fuzzrank;

namespace {

Dataset make(const std::vector<std::vector<double>>& features, const std::vector<int>& labels) {
    Dataset d;
    d.name = "synthetic";
    d.features = features;
    d.labels = labels;
    for (std::size_t i = 0; i < features.front().size(); ++i)
        d.feature_names.push_back("f" + std::to_string(i));
    d.class_names = {"0", "1"};
    return d;
}

}  // namespace

TEST_CASE("mutual information: label copy scores 1 bit, constants score 0") {
    // f0 equals the label, f1 is constant, f2 is independent of the label.
    auto d = make({{0, 7, 0}, {0, 7, 1}, {1, 7, 0}, {1, 7, 1}}, {0, 0, 1, 1});
    auto mi = score_mutual_information(d, 10);
    CHECK(mi.scores[0] == 1.0);  // H(Y) = 1 bit, exactly recovered
    CHECK(mi.scores[1] == 0.0);
    CHECK(mi.scores[2] == 0.0);  // uniform joint: H(X)+H(Y)-H(X,Y) = 1+1-2
}

TEST_CASE("symmetrical uncertainty is 1 for a label copy and 0 for constants") {
    auto d = make({{0, 7}, {0, 7}, {1, 7}, {1, 7}}, {0, 0, 1, 1});
    auto su = score_correlation_su(d, 10);
    CHECK(su.scores[0] == 1.0);
    CHECK(su.scores[1] == 0.0);
    for (double v : su.scores) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("mutual information is invariant to order-preserving rescaling") {
    auto d1 = make({{1}, {2}, {3}, {4}, {5}, {6}}, {0, 0, 0, 1, 1, 1});
    auto d2 = make({{10}, {20}, {30}, {40}, {50}, {60}}, {0, 0, 0, 1, 1, 1});
    CHECK(score_mutual_information(d1, 5).scores[0] ==
          score_mutual_information(d2, 5).scores[0]);
}

TEST_CASE("fisher score matches a hand calculation") {
    // class 0: {0, 2} (mean 1), class 1: {4, 6} (mean 5), overall mean 3.
    // between = 2*(1-3)^2 + 2*(5-3)^2 = 16; within = 2 + 2 = 4.
    auto d = make({{0}, {2}, {4}, {6}}, {0, 0, 1, 1});
    auto fs = score_fisher(d);
    CHECK(fs.scores[0] == 16.0 / (4.0 + 1e-12));
}

TEST_CASE("fisher score: constant feature scores 0, separated feature dominates") {
    auto d = make({{5, 0.0}, {5, 0.1}, {5, 10.0}, {5, 10.1}}, {0, 0, 1, 1});
    auto fs = score_fisher(d);
    CHECK(fs.scores[0] == 0.0);
    CHECK(fs.scores[1] > 100.0);
}

TEST_CASE("relieff matches a hand calculation with k = 1") {
    // One feature already spanning [0,1]; labels split low/high.
    // Per-anchor contributions (miss weight is 1 with two balanced classes):
    //   anchor 0: hit 0.1, miss 0.9   -> (0.9 - 0.1) / 4
    //   anchor 1: hit 0.1, miss 0.8   -> (0.8 - 0.1) / 4
    //   anchor 2: hit 0.1, miss 0.8   -> (0.8 - 0.1) / 4
    //   anchor 3: hit 0.1, miss 0.9   -> (0.9 - 0.1) / 4
    // total = (0.8 + 0.7 + 0.7 + 0.8) / 4 = 0.75
    auto d = make({{0.0}, {0.1}, {0.9}, {1.0}}, {0, 0, 1, 1});
    auto rf = score_relieff(d, 1);
    CHECK(rf.scores[0] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("relieff: irrelevant feature scores near zero, relevant scores high") {
    // f0 separates the classes; f1 alternates independently of the label.
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) {
        double noise = (i % 2 == 0) ? 0.0 : 1.0;
        x.push_back({i < 10 ? 0.0 : 1.0, noise});
        y.push_back(i < 10 ? 0 : 1);
    }
    auto rf = score_relieff(make(x, y), 3);
    CHECK(rf.scores[0] > 0.5);
    CHECK(rf.scores[0] > rf.scores[1] + 0.3);
}

TEST_CASE("relieff shrinks k for tiny classes instead of failing") {
    auto d = make({{0.0}, {0.2}, {1.0}}, {0, 0, 1});  // class 1 has one member
    auto rf = score_relieff(d, 10);
    CHECK(std::isfinite(rf.scores[0]));
    CHECK(rf.scores[0] > 0.0);
}

TEST_CASE("relieff gives a constant feature exactly zero") {
    auto d = make({{1.0, 3.3}, {0.0, 3.3}, {1.0, 3.3}, {0.0, 3.3}}, {1, 0, 1, 0});
    auto rf = score_relieff(d, 1);
    CHECK(rf.scores[1] == 0.0);
}

TEST_CASE("scores are permutation-equivariant in the feature axis") {
    auto d = make({{0.0, 5.0, 1.0}, {0.1, 4.0, 0.9}, {0.9, 3.0, 0.2}, {1.0, 2.0, 0.1}},
                  {0, 0, 1, 1});
    auto swapped = d;
    for (auto& row : swapped.features) std::swap(row[0], row[2]);
    std::swap(swapped.feature_names[0], swapped.feature_names[2]);

    SelectorConfig cfg;
    cfg.relieff_k = 1;
    cfg.bins = 4;
    for (MethodId m : all_methods()) {
        auto a = score_method(d, m, cfg).scores;
        auto b = score_method(swapped, m, cfg).scores;
        CHECK(a[0] == b[2]);
        CHECK(a[1] == b[1]);
        CHECK(a[2] == b[0]);
    }
}

TEST_CASE("method ids round-trip through strings in canonical order") {
    CHECK(all_methods().size() == 4);
    std::vector<std::string> names;
    for (MethodId m : all_methods()) {
        names.push_back(method_to_string(m));
        CHECK(method_from_string(method_to_string(m)) == m);
    }
    CHECK(names == std::vector<std::string>{"cfs", "relieff", "mi", "fisher"});
    CHECK_THROWS_AS(method_from_string("pca"), std::invalid_argument);
}

TEST_CASE("selectors reject degenerate configuration") {
    auto d = make({{0.0}, {1.0}}, {0, 1});
    CHECK_THROWS_AS(score_mutual_information(d, 1), std::invalid_argument);
    CHECK_THROWS_AS(score_correlation_su(d, 0), std::invalid_argument);
    CHECK_THROWS_AS(score_relieff(d, 0), std::invalid_argument);
}
