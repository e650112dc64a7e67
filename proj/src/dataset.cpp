#include "fuzzrank/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fuzzrank/rng.hpp"
#include "fuzzrank/util.hpp"

namespace fuzzrank {

namespace {

constexpr std::uint64_t kKfoldTag = 0x6B666F6C64ULL;      // "kfold"
constexpr std::uint64_t kSubsampleTag = 0x73756273ULL;    // "subs"

double parse_numeric(const std::string& cell, const std::string& context) {
    const char* s = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw std::runtime_error("non-numeric feature cell '" + cell + "' in " + context);
    if (!std::isfinite(v))
        throw std::runtime_error("non-finite feature value '" + cell + "' in " + context);
    return v;
}

int map_label(const std::string& value, std::vector<std::string>& class_names) {
    for (std::size_t c = 0; c < class_names.size(); ++c)
        if (class_names[c] == value) return static_cast<int>(c);
    if (class_names.size() == 2)
        throw std::runtime_error("more than two classes: saw '" + value + "' after '" +
                                 class_names[0] + "' and '" + class_names[1] + "'");
    class_names.push_back(value);
    return static_cast<int>(class_names.size()) - 1;
}

std::size_t find_label_column(const RawTable& table, const std::string& label_column) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == label_column) return i;
    // Fall back to a 0-based index written in decimal.
    if (!label_column.empty() &&
        std::all_of(label_column.begin(), label_column.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
        std::size_t idx = std::stoul(label_column);
        if (idx < table.header.size()) return idx;
    }
    throw std::runtime_error("label column '" + label_column + "' not found");
}

Dataset from_raw(const RawTable& table, std::size_t label_idx, const std::string& dataset_name) {
    Dataset d;
    d.name = dataset_name;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (i != label_idx) d.feature_names.push_back(table.header[i]);
    d.features.reserve(table.rows.size());
    d.labels.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::vector<double> feats;
        feats.reserve(row.size() - 1);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == label_idx) continue;
            feats.push_back(parse_numeric(row[i], "row " + std::to_string(r + 2) + ", column '" +
                                                      table.header[i] + "'"));
        }
        d.features.push_back(std::move(feats));
        d.labels.push_back(map_label(row[label_idx], d.class_names));
    }
    d.validate();
    return d;
}

}  // namespace

void Dataset::validate() const {
    if (n_samples() < 2) throw std::invalid_argument("dataset needs at least 2 rows");
    if (n_features() < 1) throw std::invalid_argument("dataset needs at least 1 feature");
    const std::size_t n = n_features();
    for (const auto& row : features) {
        if (row.size() != n) throw std::invalid_argument("ragged feature matrix");
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
    }
    if (labels.size() != n_samples())
        throw std::invalid_argument("labels length does not match sample count");
    bool has[2] = {false, false};
    for (int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0 or 1");
        has[y] = true;
    }
    if (!has[0] || !has[1]) throw std::invalid_argument("both classes must be present");
    std::set<std::string> names(feature_names.begin(), feature_names.end());
    if (feature_names.size() != n || names.size() != n)
        throw std::invalid_argument("feature names must be unique and match feature count");
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& dataset_name) {
    RawTable table = read_csv(resolve_data_path(path));
    std::size_t label_idx = find_label_column(table, label_column);
    std::string name = dataset_name;
    if (name.empty()) name = std::filesystem::path(path).stem().string();
    return from_raw(table, label_idx, name);
}

Dataset preprocess_wbc(const RawTable& raw, const std::string& dataset_name) {
    if (raw.n_cols() < 3)
        throw std::runtime_error("wbc preprocessing expects id + features + class columns");
    RawTable cleaned;
    cleaned.header.assign(raw.header.begin() + 1, raw.header.end());
    for (const auto& row : raw.rows) {
        bool missing = std::any_of(row.begin(), row.end(),
                                   [](const std::string& c) { return c == "?"; });
        if (missing) continue;
        cleaned.rows.emplace_back(row.begin() + 1, row.end());
    }
    if (cleaned.rows.empty()) throw std::runtime_error("empty dataset after preprocessing");
    if (raw.n_rows() == 699 && cleaned.rows.size() != 683)
        throw std::runtime_error("wbc validation: expected 683 rows after dropping missing, got " +
                                 std::to_string(cleaned.rows.size()));
    return from_raw(cleaned, cleaned.header.size() - 1, dataset_name);
}

FoldSplit kfold_split(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
    const std::size_t s = dataset.n_samples();
    if (k < 2 || k > s) throw std::invalid_argument("kfold_split: need 2 <= k <= S");

    std::vector<std::vector<std::size_t>> by_class(2);
    for (std::size_t i = 0; i < s; ++i) by_class[dataset.labels[i]].push_back(i);

    FoldSplit split;
    split.seed = seed;
    split.folds.assign(k, {});
    Rng rng(derive_seed(seed, {kKfoldTag, k}));

    bool stratifiable = by_class[0].size() >= k && by_class[1].size() >= k;
    if (!stratifiable) {
        warn("kfold_split: a class has fewer than k samples; using an unstratified split");
        std::vector<std::size_t> order(s);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        std::size_t base = s / k, rem = s % k, pos = 0;
        for (std::size_t f = 0; f < k; ++f) {
            std::size_t take = base + (f < rem ? 1 : 0);
            split.folds[f].assign(order.begin() + pos, order.begin() + pos + take);
            std::sort(split.folds[f].begin(), split.folds[f].end());
            pos += take;
        }
        return split;
    }

    // Stratified: deal each class across folds; leftover samples go to
    // consecutive folds starting where the previous class's leftovers ended,
    // keeping total fold sizes within one of each other.
    std::size_t extra_offset = 0;
    for (auto& members : by_class) {
        rng.shuffle(members);
        std::size_t base = members.size() / k, rem = members.size() % k, pos = 0;
        for (std::size_t f = 0; f < k; ++f) {
            std::size_t take = base + ((f + k - extra_offset % k) % k < rem ? 1 : 0);
            auto& fold = split.folds[f];
            fold.insert(fold.end(), members.begin() + pos, members.begin() + pos + take);
            pos += take;
        }
        extra_offset += rem;
    }
    for (auto& fold : split.folds) std::sort(fold.begin(), fold.end());
    return split;
}

Dataset subsample(const Dataset& dataset, double p, std::uint64_t seed) {
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("subsample: need 0 < p <= 1");
    if (p == 1.0) return dataset;
    const std::size_t s = dataset.n_samples();
    const auto take = static_cast<std::size_t>(std::floor(p * static_cast<double>(s)));
    if (take < 2) throw std::invalid_argument("subsample: floor(p*S) must be at least 2");

    for (int attempt = 0; attempt < 100; ++attempt) {
        Rng rng(derive_seed(seed, {kSubsampleTag, static_cast<std::uint64_t>(attempt)}));
        std::vector<std::size_t> order(s);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        std::vector<std::size_t> chosen(order.begin(), order.begin() + take);
        std::sort(chosen.begin(), chosen.end());
        bool has[2] = {false, false};
        for (std::size_t i : chosen) has[dataset.labels[i]] = true;
        if (has[0] && has[1]) return take_rows(dataset, chosen);
    }
    throw std::runtime_error("subsample: could not draw both classes in 100 attempts");
}

Dataset take_rows(const Dataset& dataset, const std::vector<std::size_t>& rows) {
    Dataset d;
    d.name = dataset.name;
    d.feature_names = dataset.feature_names;
    d.class_names = dataset.class_names;
    d.features.reserve(rows.size());
    d.labels.reserve(rows.size());
    for (std::size_t r : rows) {
        d.features.push_back(dataset.features.at(r));
        d.labels.push_back(dataset.labels.at(r));
    }
    return d;
}

std::vector<std::size_t> train_indices(const FoldSplit& split, std::size_t test_fold) {
    std::vector<std::size_t> idx;
    for (std::size_t f = 0; f < split.folds.size(); ++f) {
        if (f == test_fold) continue;
        idx.insert(idx.end(), split.folds[f].begin(), split.folds[f].end());
    }
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::string resolve_data_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::path(path).is_absolute() || fs::exists(path)) return path;
    if (const char* root = std::getenv("FUZZRANK_DATA_DIR")) {
        fs::path candidate = fs::path(root) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

}  // namespace fuzzrank
