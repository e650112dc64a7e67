#include "fuzzrank/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fuzzrank/util.hpp"

namespace fuzzrank {

namespace {

// Equal-width bin index in [0, n_bins); constant-range features map to bin 0.
std::vector<int> bin_feature(const Dataset& d, std::size_t feat, std::size_t n_bins) {
    double lo = d.features[0][feat], hi = lo;
    for (const auto& row : d.features) {
        lo = std::min(lo, row[feat]);
        hi = std::max(hi, row[feat]);
    }
    std::vector<int> bins(d.n_samples(), 0);
    if (hi > lo) {
        double range = hi - lo;
        for (std::size_t s = 0; s < d.n_samples(); ++s) {
            auto b = static_cast<int>((d.features[s][feat] - lo) / range *
                                      static_cast<double>(n_bins));
            bins[s] = std::min(b, static_cast<int>(n_bins) - 1);
        }
    }
    return bins;
}

double entropy_bits(const std::vector<std::size_t>& counts, std::size_t total) {
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

// Marginal and joint entropies of (binned feature, label), in bits.
// I(X;Y) = H(X) + H(Y) - H(X,Y); the entropy form keeps the identities
// I = H(X) for X == Y and I = 0 for constant X exact in floating point.
struct EntropyTriple {
    double hx, hy, hxy;
};

EntropyTriple feature_label_entropies(const std::vector<int>& bins, const std::vector<int>& labels,
                                      std::size_t n_bins) {
    const std::size_t s = bins.size();
    std::vector<std::size_t> cx(n_bins, 0), cy(2, 0), cxy(n_bins * 2, 0);
    for (std::size_t i = 0; i < s; ++i) {
        cx[bins[i]]++;
        cy[labels[i]]++;
        cxy[static_cast<std::size_t>(bins[i]) * 2 + labels[i]]++;
    }
    return {entropy_bits(cx, s), entropy_bits(cy, s), entropy_bits(cxy, s)};
}

}  // namespace

ScoreVector score_mutual_information(const Dataset& dataset, std::size_t n_bins) {
    if (n_bins < 2) throw std::invalid_argument("score_mutual_information: n_bins >= 2 required");
    ScoreVector out{std::vector<double>(dataset.n_features(), 0.0), MethodId::MI};
    for (std::size_t f = 0; f < dataset.n_features(); ++f) {
        auto bins = bin_feature(dataset, f, n_bins);
        auto [hx, hy, hxy] = feature_label_entropies(bins, dataset.labels, n_bins);
        out.scores[f] = std::max(0.0, hx + hy - hxy);
    }
    return out;
}

ScoreVector score_correlation_su(const Dataset& dataset, std::size_t n_bins) {
    if (n_bins < 2) throw std::invalid_argument("score_correlation_su: n_bins >= 2 required");
    ScoreVector out{std::vector<double>(dataset.n_features(), 0.0), MethodId::CFS_SU};
    for (std::size_t f = 0; f < dataset.n_features(); ++f) {
        auto bins = bin_feature(dataset, f, n_bins);
        auto [hx, hy, hxy] = feature_label_entropies(bins, dataset.labels, n_bins);
        double denom = hx + hy;
        out.scores[f] = denom > 0.0 ? 2.0 * std::max(0.0, hx + hy - hxy) / denom : 0.0;
    }
    return out;
}

ScoreVector score_fisher(const Dataset& dataset) {
    constexpr double kEps = 1e-12;
    const std::size_t s = dataset.n_samples();
    ScoreVector out{std::vector<double>(dataset.n_features(), 0.0), MethodId::FISHER};
    for (std::size_t f = 0; f < dataset.n_features(); ++f) {
        double sum[2] = {0, 0};
        std::size_t n[2] = {0, 0};
        for (std::size_t i = 0; i < s; ++i) {
            sum[dataset.labels[i]] += dataset.features[i][f];
            n[dataset.labels[i]]++;
        }
        double mean_all = (sum[0] + sum[1]) / static_cast<double>(s);
        double mean_c[2] = {sum[0] / static_cast<double>(n[0]),
                            sum[1] / static_cast<double>(n[1])};
        double within[2] = {0, 0};
        for (std::size_t i = 0; i < s; ++i) {
            double dlt = dataset.features[i][f] - mean_c[dataset.labels[i]];
            within[dataset.labels[i]] += dlt * dlt;
        }
        double between = static_cast<double>(n[0]) * (mean_c[0] - mean_all) * (mean_c[0] - mean_all) +
                         static_cast<double>(n[1]) * (mean_c[1] - mean_all) * (mean_c[1] - mean_all);
        out.scores[f] = between / (within[0] + within[1] + kEps);
    }
    return out;
}

ScoreVector score_relieff(const Dataset& dataset, std::size_t k_neighbors) {
    const std::size_t s = dataset.n_samples();
    const std::size_t n = dataset.n_features();
    if (k_neighbors < 1) throw std::invalid_argument("score_relieff: k_neighbors >= 1 required");

    // Min-max scale features to [0,1]; constant features become all-zero so
    // they contribute no distance and receive a score of exactly 0.
    std::vector<std::vector<double>> x(s, std::vector<double>(n, 0.0));
    for (std::size_t f = 0; f < n; ++f) {
        double lo = dataset.features[0][f], hi = lo;
        for (const auto& row : dataset.features) {
            lo = std::min(lo, row[f]);
            hi = std::max(hi, row[f]);
        }
        if (hi > lo)
            for (std::size_t i = 0; i < s; ++i)
                x[i][f] = (dataset.features[i][f] - lo) / (hi - lo);
    }

    std::vector<std::vector<std::size_t>> by_class(2);
    for (std::size_t i = 0; i < s; ++i) by_class[dataset.labels[i]].push_back(i);
    double prior[2] = {static_cast<double>(by_class[0].size()) / static_cast<double>(s),
                       static_cast<double>(by_class[1].size()) / static_cast<double>(s)};

    std::size_t k_hit[2], k_miss[2];  // per anchor class: hits exclude the anchor itself
    bool reduced = false;
    for (int c = 0; c < 2; ++c) {
        std::size_t same = by_class[c].size(), other = by_class[1 - c].size();
        k_hit[c] = std::min(k_neighbors, same - 1);
        k_miss[c] = std::min(k_neighbors, other);
        if (k_hit[c] < k_neighbors || k_miss[c] < k_neighbors) reduced = true;
    }
    if (reduced)
        warn("score_relieff: a class has too few samples for k=" + std::to_string(k_neighbors) +
             "; using class_size-1 neighbors for it");

    ScoreVector out{std::vector<double>(n, 0.0), MethodId::RELIEFF};
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(s);
    auto accumulate_neighbors = [&](std::size_t anchor, const std::vector<std::size_t>& pool,
                                    std::size_t k, std::vector<double>& acc) {
        dist.clear();
        for (std::size_t j : pool) {
            if (j == anchor) continue;
            double m = 0.0;
            const auto& a = x[anchor];
            const auto& b = x[j];
            for (std::size_t f = 0; f < n; ++f) m += std::abs(a[f] - b[f]);
            dist.emplace_back(m, j);
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        for (std::size_t r = 0; r < k; ++r) {
            const auto& b = x[dist[r].second];
            const auto& a = x[anchor];
            for (std::size_t f = 0; f < n; ++f) acc[f] += std::abs(a[f] - b[f]);
        }
    };

    std::vector<double> hit_acc(n), miss_acc(n);
    for (std::size_t anchor = 0; anchor < s; ++anchor) {
        int c = dataset.labels[anchor];
        std::fill(hit_acc.begin(), hit_acc.end(), 0.0);
        std::fill(miss_acc.begin(), miss_acc.end(), 0.0);
        // A class reduced all the way to zero usable hits (single member)
        // simply contributes no hit term for its anchors.
        if (k_hit[c] > 0) accumulate_neighbors(anchor, by_class[c], k_hit[c], hit_acc);
        accumulate_neighbors(anchor, by_class[1 - c], k_miss[c], miss_acc);
        // Prior weight P(miss class) / (1 - P(anchor class)); equals 1 with
        // two classes but is kept in the standard multi-class form.
        double miss_w = prior[1 - c] / (1.0 - prior[c]);
        for (std::size_t f = 0; f < n; ++f) {
            if (k_hit[c] > 0)
                out.scores[f] -= hit_acc[f] / static_cast<double>(k_hit[c]) / static_cast<double>(s);
            out.scores[f] += miss_w * miss_acc[f] / static_cast<double>(k_miss[c]) /
                             static_cast<double>(s);
        }
    }
    return out;
}

ScoreVector score_method(const Dataset& dataset, MethodId method, const SelectorConfig& config) {
    switch (method) {
        case MethodId::CFS_SU: return score_correlation_su(dataset, config.bins);
        case MethodId::RELIEFF: return score_relieff(dataset, config.relieff_k);
        case MethodId::MI: return score_mutual_information(dataset, config.bins);
        case MethodId::FISHER: return score_fisher(dataset);
    }
    throw std::logic_error("unknown method id");
}

MethodId method_from_string(const std::string& id) {
    if (id == "cfs") return MethodId::CFS_SU;
    if (id == "relieff") return MethodId::RELIEFF;
    if (id == "mi") return MethodId::MI;
    if (id == "fisher") return MethodId::FISHER;
    throw std::invalid_argument("unknown method '" + id + "' (expected cfs|relieff|mi|fisher)");
}

std::string method_to_string(MethodId method) {
    switch (method) {
        case MethodId::CFS_SU: return "cfs";
        case MethodId::RELIEFF: return "relieff";
        case MethodId::MI: return "mi";
        case MethodId::FISHER: return "fisher";
    }
    throw std::logic_error("unknown method id");
}

const std::vector<MethodId>& all_methods() {
    static const std::vector<MethodId> methods{MethodId::CFS_SU, MethodId::RELIEFF, MethodId::MI,
                                               MethodId::FISHER};
    return methods;
}

}  // namespace fuzzrank
