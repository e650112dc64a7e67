#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fuzzrank/rng.hpp"
#include "fuzzrank/util.hpp"

using namespace fuzzrank;

TEST_CASE("splitmix64 is a deterministic bijective-style mix") {
    CHECK(splitmix64(0) == splitmix64(0));
    CHECK(splitmix64(1) != splitmix64(2));
    // A few outputs from distinct inputs should all differ.
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(splitmix64(i));
    CHECK(seen.size() == 1000);
}

TEST_CASE("derive_seed depends on every tag and on tag order") {
    CHECK(derive_seed(7, {1, 2}) == derive_seed(7, {1, 2}));
    CHECK(derive_seed(7, {1, 2}) != derive_seed(7, {2, 1}));
    CHECK(derive_seed(7, {1, 2}) != derive_seed(8, {1, 2}));
    CHECK(derive_seed(7, {1}) != derive_seed(7, {1, 0}));
    CHECK(derive_seed(7, {}) != derive_seed(7, {0}));
}

TEST_CASE("Rng::below stays in range and is deterministic") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t n = 1 + static_cast<std::uint64_t>(i % 97);
        std::uint64_t v = a.below(n);
        CHECK(v < n);
        CHECK(v == b.below(n));
    }
    // below(1) is always 0 and must not spin.
    Rng c(5);
    for (int i = 0; i < 100; ++i) CHECK(c.below(1) == 0);
}

TEST_CASE("Rng::below covers small ranges roughly uniformly") {
    Rng rng(99);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 5000; ++i) counts[rng.below(5)]++;
    for (int c : counts) CHECK(c > 800);  // expectation 1000
}

TEST_CASE("Rng::unit lies in [0,1)") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        double u = rng.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("Rng::shuffle permutes and is deterministic per seed") {
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    auto w = v;
    Rng a(42), b(42), c(43);
    a.shuffle(v);
    b.shuffle(w);
    CHECK(v == w);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(50);
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(sorted == expect);

    auto u = expect;
    c.shuffle(u);
    CHECK(u != v);  // different seed, different order (50! makes a clash absurd)
}

TEST_CASE("parallel_for visits every index exactly once") {
    for (int jobs : {1, 2, 7}) {
        std::vector<std::atomic<int>> hits(257);
        for (auto& h : hits) h = 0;
        parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h == 1);
    }
}

TEST_CASE("parallel_for propagates worker exceptions") {
    auto boom = [](std::size_t i) {
        if (i == 13) throw std::runtime_error("boom");
    };
    CHECK_THROWS_AS(parallel_for(100, 4, boom), std::runtime_error);
    CHECK_THROWS_AS(parallel_for(100, 1, boom), std::runtime_error);
}

TEST_CASE("parallel_for handles zero tasks") {
    parallel_for(0, 4, [](std::size_t) { FAIL("should not run"); });
}

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.0, 1.0, -1.5, 0.1, 0.3333333333333333, 1e-9, 12345.6789}) {
        std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("default_jobs is at least one") { CHECK(default_jobs() >= 1); }
