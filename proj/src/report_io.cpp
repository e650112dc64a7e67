#include "fuzzrank/report_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "fuzzrank/util.hpp"

namespace fuzzrank {

using nlohmann::json;

namespace {

json parse_config_echo(const std::string& config_echo_json) {
    if (config_echo_json.empty()) return json::object();
    return json::parse(config_echo_json);
}

json curve_to_json(const AccuracyCurve& curve) {
    json points = json::array();
    for (const auto& pt : curve.points)
        points.push_back({{"k", pt.n_features_kept},
                          {"mean_accuracy", pt.mean_accuracy},
                          {"per_fold", pt.per_fold}});
    return {{"method", curve.method_label},
            {"points", points},
            {"best_k", curve.best_k()},
            {"max_mean_accuracy", curve.max_mean_accuracy()}};
}

}  // namespace

std::string ranking_json(const RankingResult& result, const std::string& config_echo_json,
                         const std::string& timestamp) {
    json methods = json::array();
    for (MethodId m : result.method_ids) methods.push_back(method_to_string(m));
    json doc{{"dataset", result.dataset_name},
             {"scheme", scheme_to_string(result.scheme)},
             {"seed", result.seed},
             {"L", result.subsets},
             {"ratio", result.ratio},
             {"methods", methods},
             {"feature_names", result.feature_names},
             {"scores", result.defuzzified_scores},
             {"ranking", result.ranking},
             {"config", parse_config_echo(config_echo_json)},
             {"timestamp", timestamp}};
    return doc.dump(2) + "\n";
}

std::vector<std::vector<std::string>> ranking_csv_rows(const RankingResult& result) {
    std::vector<std::vector<std::string>> rows{{"feature_name", "score", "rank"}};
    for (std::size_t r = 0; r < result.ranking.size(); ++r) {
        std::size_t i = result.ranking[r];
        std::string name = i < result.feature_names.size() ? result.feature_names[i]
                                                           : "f" + std::to_string(i);
        rows.push_back({name, format_double(result.defuzzified_scores[i]), std::to_string(r + 1)});
    }
    return rows;
}

std::string accuracy_json(const std::string& dataset_name, ClassifierKind classifier,
                          std::size_t folds, std::uint64_t seed,
                          const std::vector<AccuracyCurve>& curves,
                          const std::string& config_echo_json, const std::string& timestamp) {
    json curve_docs = json::array();
    for (const auto& c : curves) curve_docs.push_back(curve_to_json(c));
    json doc{{"dataset", dataset_name},
             {"classifier", classifier_to_string(classifier)},
             {"folds", folds},
             {"seed", seed},
             {"curves", curve_docs},
             {"config", parse_config_echo(config_echo_json)},
             {"timestamp", timestamp}};
    return doc.dump(2) + "\n";
}

std::vector<std::vector<std::string>> accuracy_curves_csv_rows(
    const std::vector<AccuracyCurve>& curves) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"k"};
    for (const auto& c : curves) header.push_back(c.method_label);
    rows.push_back(header);
    if (curves.empty()) return rows;
    for (std::size_t pi = 0; pi < curves.front().points.size(); ++pi) {
        std::vector<std::string> row{std::to_string(curves.front().points[pi].n_features_kept)};
        for (const auto& c : curves) row.push_back(format_double(c.points[pi].mean_accuracy));
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::vector<std::string>> accuracy_summary_csv_rows(
    const std::vector<AccuracyCurve>& curves) {
    std::vector<std::vector<std::string>> rows{{"method", "best_k", "max_mean_accuracy"}};
    for (const auto& c : curves)
        rows.push_back({c.method_label, std::to_string(c.best_k()),
                        format_double(c.max_mean_accuracy())});
    return rows;
}

std::string stability_json(const std::string& dataset_name, std::size_t folds, std::uint64_t seed,
                           const std::vector<StabilityReport>& reports,
                           const std::vector<SubsampleCurve>& curves,
                           const std::string& config_echo_json, const std::string& timestamp) {
    json cross = json::array();
    for (const auto& r : reports)
        cross.push_back({{"method", r.method_label},
                         {"asd", r.asd},
                         {"apc", r.apc},
                         {"per_feature_sd", r.per_feature_sd},
                         {"fold_scores", r.fold_scores}});
    json sub = json::array();
    for (const auto& c : curves) {
        json points = json::array();
        for (const auto& pt : c.points)
            points.push_back(
                {{"p", pt.p}, {"mean_pearson", pt.mean_pearson}, {"per_repeat", pt.per_repeat}});
        sub.push_back({{"method", c.method_label}, {"points", points}});
    }
    json doc{{"dataset", dataset_name},
             {"folds", folds},
             {"seed", seed},
             {"cross_fold", cross},
             {"subsample", sub},
             {"config", parse_config_echo(config_echo_json)},
             {"timestamp", timestamp}};
    return doc.dump(2) + "\n";
}

std::vector<std::vector<std::string>> stability_table_csv_rows(
    const std::vector<StabilityReport>& reports) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"metric"};
    for (const auto& r : reports) header.push_back(r.method_label);
    rows.push_back(header);
    std::vector<std::string> asd_row{"asd"}, apc_row{"apc"};
    for (const auto& r : reports) {
        asd_row.push_back(format_double(r.asd));
        apc_row.push_back(format_double(r.apc));
    }
    rows.push_back(asd_row);
    rows.push_back(apc_row);
    return rows;
}

std::vector<std::vector<std::string>> subsample_curves_csv_rows(
    const std::vector<SubsampleCurve>& curves) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"p"};
    for (const auto& c : curves) header.push_back(c.method_label);
    rows.push_back(header);
    if (curves.empty()) return rows;
    for (std::size_t pi = 0; pi < curves.front().points.size(); ++pi) {
        std::vector<std::string> row{format_double(curves.front().points[pi].p)};
        for (const auto& c : curves) row.push_back(format_double(c.points[pi].mean_pearson));
        rows.push_back(row);
    }
    return rows;
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fuzzrank
