// Python bindings for the fuzzrank core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fuzzrank/dataset.hpp"
#include "fuzzrank/evaluation.hpp"
#include "fuzzrank/fuzzy_ensemble.hpp"
#include "fuzzrank/selectors.hpp"

namespace py = pybind11;
using namespace fuzzrank;

namespace {

EnsembleConfig make_config(const std::vector<std::string>& methods, std::size_t subsets,
                           double ratio, std::size_t relieff_k, std::size_t bins,
                           const std::string& sd, const std::string& norm_scope, int jobs) {
    EnsembleConfig cfg;
    cfg.subsets = subsets;
    cfg.ratio = ratio;
    cfg.methods.clear();
    for (const auto& m : methods) cfg.methods.push_back(method_from_string(m));
    cfg.selector.relieff_k = relieff_k;
    cfg.selector.bins = bins;
    cfg.sd_convention = sd == "sample" ? SdConvention::Sample : SdConvention::Population;
    cfg.normalization_scope = normalization_scope_from_string(norm_scope);
    cfg.jobs = jobs;
    return cfg;
}

py::dict ranking_to_dict(const RankingResult& r) {
    py::dict d;
    d["dataset"] = r.dataset_name;
    d["scheme"] = scheme_to_string(r.scheme);
    d["seed"] = r.seed;
    d["L"] = r.subsets;
    d["ratio"] = r.ratio;
    std::vector<std::string> methods;
    for (MethodId m : r.method_ids) methods.push_back(method_to_string(m));
    d["methods"] = methods;
    d["feature_names"] = r.feature_names;
    d["scores"] = r.defuzzified_scores;
    d["ranking"] = r.ranking;
    return d;
}

py::dict curve_to_dict(const AccuracyCurve& c) {
    py::dict d;
    d["method"] = c.method_label;
    d["classifier"] = classifier_to_string(c.classifier);
    py::list points;
    for (const auto& pt : c.points) {
        py::dict p;
        p["k"] = pt.n_features_kept;
        p["mean_accuracy"] = pt.mean_accuracy;
        p["per_fold"] = pt.per_fold;
        points.append(p);
    }
    d["points"] = points;
    d["best_k"] = c.best_k();
    d["max_mean_accuracy"] = c.max_mean_accuracy();
    return d;
}

py::dict stability_to_dict(const StabilityReport& r) {
    py::dict d;
    d["method"] = r.method_label;
    d["asd"] = r.asd;
    d["apc"] = r.apc;
    d["per_feature_sd"] = r.per_feature_sd;
    d["fold_scores"] = r.fold_scores;
    return d;
}

py::dict subsample_to_dict(const SubsampleCurve& c) {
    py::dict d;
    d["method"] = c.method_label;
    py::list points;
    for (const auto& pt : c.points) {
        py::dict p;
        p["p"] = pt.p;
        p["mean_pearson"] = pt.mean_pearson;
        p["per_repeat"] = pt.per_repeat;
        points.append(p);
    }
    d["points"] = points;
    return d;
}

void register_dataset(py::module_& m) {
    py::class_<Dataset>(m, "Dataset")
        .def_readonly("features", &Dataset::features)
        .def_readonly("labels", &Dataset::labels)
        .def_readonly("feature_names", &Dataset::feature_names)
        .def_readonly("class_names", &Dataset::class_names)
        .def_readonly("name", &Dataset::name)
        .def_property_readonly("n_samples", &Dataset::n_samples)
        .def_property_readonly("n_features", &Dataset::n_features)
        .def("__repr__", [](const Dataset& d) {
            return "<Dataset '" + d.name + "' S=" + std::to_string(d.n_samples()) +
                   " N=" + std::to_string(d.n_features()) + ">";
        });

    m.def("load_csv", &load_csv, py::arg("path"), py::arg("label"), py::arg("name") = "",
          "Load a header-ed CSV with a two-valued label column.");
    m.def(
        "load_wbc",
        [](const std::string& path, const std::string& name) {
            return preprocess_wbc(read_csv(resolve_data_path(path)), name);
        },
        py::arg("path"), py::arg("name") = "wbc",
        "Load the classic breast-cancer table: drops the id column and rows with '?'.");
    m.def(
        "subsample",
        [](const Dataset& d, double p, std::uint64_t seed) { return subsample(d, p, seed); },
        py::arg("dataset"), py::arg("p"), py::arg("seed"),
        "Uniform subsample of floor(p*S) rows without replacement.");
    m.def(
        "kfold_split",
        [](const Dataset& d, std::size_t k, std::uint64_t seed) {
            return kfold_split(d, k, seed).folds;
        },
        py::arg("dataset"), py::arg("k"), py::arg("seed"),
        "Stratified k-fold split; returns k index lists.");
}

void register_ranking(py::module_& m) {
    m.def(
        "score",
        [](const Dataset& d, const std::string& method, std::size_t relieff_k, std::size_t bins) {
            SelectorConfig cfg{relieff_k, bins};
            return score_method(d, method_from_string(method), cfg).scores;
        },
        py::arg("dataset"), py::arg("method"), py::arg("relieff_k") = 10, py::arg("bins") = 10,
        "Single base-scorer run; method is one of cfs|relieff|mi|fisher.");

    m.def(
        "rank_features",
        [](const Dataset& d, const std::string& scheme, const std::vector<std::string>& methods,
           std::size_t subsets, double ratio, std::uint64_t seed, std::size_t relieff_k,
           std::size_t bins, const std::string& sd, const std::string& norm_scope, int jobs) {
            auto cfg = make_config(methods, subsets, ratio, relieff_k, bins, sd, norm_scope, jobs);
            return ranking_to_dict(rank_features(d, scheme_from_string(scheme), cfg, seed));
        },
        py::arg("dataset"), py::arg("scheme") = "ow",
        py::arg("methods") = std::vector<std::string>{"cfs", "relieff", "mi", "fisher"},
        py::arg("subsets") = 100, py::arg("ratio") = 0.632, py::arg("seed") = 42,
        py::arg("relieff_k") = 10, py::arg("bins") = 10, py::arg("sd") = "population",
        py::arg("norm_scope") = "features", py::arg("jobs") = 1,
        "Bootstrap fuzzy-set ensemble ranking; returns a dict with scores and ranking.");

    m.def("discretize", &discretize, py::arg("value"),
          "Round a value in [0,1] to the nearest 0.01 grid point (ties up).");
    m.def("normalize_scores", &normalize_scores, py::arg("raw"),
          "Min-max normalize a score vector (constant input maps to all 0.5).");
}

void register_evaluation(py::module_& m) {
    m.def(
        "accuracy_curves",
        [](const Dataset& d, const std::string& classifier, std::size_t folds, std::uint64_t seed,
           const std::vector<std::string>& methods, std::size_t subsets, double ratio,
           std::size_t relieff_k, std::size_t bins, std::size_t rf_trees, int jobs) {
            auto cfg = make_config(methods, subsets, ratio, relieff_k, bins, "population",
                                   "features", 1);
            auto split = kfold_split(d, folds, seed);
            MethodSet set = standard_method_set(cfg);
            EvalConfig eval_cfg;
            eval_cfg.rf_trees = rf_trees;
            eval_cfg.jobs = jobs;
            auto curves = accuracy_curves_multi(d, set.ranker, set.labels,
                                                classifier_from_string(classifier), split, seed,
                                                eval_cfg);
            py::list out;
            for (const auto& c : curves) out.append(curve_to_dict(c));
            return out;
        },
        py::arg("dataset"), py::arg("classifier") = "nb", py::arg("folds") = 5,
        py::arg("seed") = 42,
        py::arg("methods") = std::vector<std::string>{"cfs", "relieff", "mi", "fisher"},
        py::arg("subsets") = 100, py::arg("ratio") = 0.632, py::arg("relieff_k") = 10,
        py::arg("bins") = 10, py::arg("rf_trees") = 100, py::arg("jobs") = 1,
        "Accuracy-vs-features-kept curves for the 4 base methods and 4 schemes.");

    m.def(
        "cross_fold_stability",
        [](const Dataset& d, std::size_t folds, std::uint64_t seed,
           const std::vector<std::string>& methods, std::size_t subsets, double ratio,
           std::size_t relieff_k, std::size_t bins, int jobs) {
            auto cfg = make_config(methods, subsets, ratio, relieff_k, bins, "population",
                                   "features", 1);
            auto split = kfold_split(d, folds, seed);
            MethodSet set = standard_method_set(cfg);
            auto reports = cross_fold_stability_multi(d, set.scorer, set.labels, split, seed,
                                                      cfg.sd_convention, jobs);
            py::list out;
            for (const auto& r : reports) out.append(stability_to_dict(r));
            return out;
        },
        py::arg("dataset"), py::arg("folds") = 5, py::arg("seed") = 42,
        py::arg("methods") = std::vector<std::string>{"cfs", "relieff", "mi", "fisher"},
        py::arg("subsets") = 100, py::arg("ratio") = 0.632, py::arg("relieff_k") = 10,
        py::arg("bins") = 10, py::arg("jobs") = 1,
        "Cross-fold ASD/APC stability for the 4 base methods and 4 schemes.");

    m.def(
        "subsample_stability",
        [](const Dataset& d, const std::vector<double>& p_grid, std::size_t repeats,
           std::uint64_t seed, const std::vector<std::string>& methods, std::size_t subsets,
           double ratio, std::size_t relieff_k, std::size_t bins, int jobs) {
            auto cfg = make_config(methods, subsets, ratio, relieff_k, bins, "population",
                                   "features", 1);
            MethodSet set = standard_method_set(cfg);
            auto curves =
                subsample_stability_multi(d, set.scorer, set.labels, p_grid, repeats, seed, jobs);
            py::list out;
            for (const auto& c : curves) out.append(subsample_to_dict(c));
            return out;
        },
        py::arg("dataset"), py::arg("p_grid") = default_p_grid(), py::arg("repeats") = 5,
        py::arg("seed") = 42,
        py::arg("methods") = std::vector<std::string>{"cfs", "relieff", "mi", "fisher"},
        py::arg("subsets") = 100, py::arg("ratio") = 0.632, py::arg("relieff_k") = 10,
        py::arg("bins") = 10, py::arg("jobs") = 1,
        "Pearson similarity of subsample scores against full-data scores.");

    m.def("compute_asd", &compute_asd, py::arg("fold_scores"),
          py::arg("convention") = SdConvention::Population);
    m.def("compute_apc", &compute_apc, py::arg("fold_scores"));
    m.def("pearson", &pearson, py::arg("x"), py::arg("y"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bootstrap fuzzy-set feature ranking (core bindings)";

    py::enum_<SdConvention>(m, "SdConvention")
        .value("population", SdConvention::Population)
        .value("sample", SdConvention::Sample);

    register_dataset(m);
    register_ranking(m);
    register_evaluation(m);
}
