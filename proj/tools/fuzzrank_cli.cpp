// fuzzrank command-line front end: reproducible feature-ranking and
// evaluation runs over CSV datasets, with JSON/CSV reports.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fuzzrank/csv.hpp"
#include "fuzzrank/dataset.hpp"
#include "fuzzrank/evaluation.hpp"
#include "fuzzrank/fuzzy_ensemble.hpp"
#include "fuzzrank/report_io.hpp"
#include "fuzzrank/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string data;
    std::string label;
    std::string preprocess = "none";  // none | wbc
    std::vector<std::string> methods{"cfs", "relieff", "mi", "fisher"};
    std::size_t subsets = 100;  // L
    double ratio = 0.632;
    std::uint64_t seed = 42;
    std::size_t relieff_k = 10;
    std::size_t bins = 10;
    std::string sd_convention = "population";
    std::string norm_scope = "features";
    std::string out = ".";
    int jobs = fuzzrank::default_jobs();

    // rank
    std::string scheme;

    // eval-accuracy
    std::string classifier = "nb";
    std::size_t folds = 5;
    std::size_t rf_trees = 100;

    // eval-stability
    std::string p_grid = "0.9:0.3:0.1";
    std::size_t repeats = 5;
};

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--data", opt.data, "Dataset CSV path (FUZZRANK_DATA_DIR roots relative paths)")
        ->required();
    cmd->add_option("--label", opt.label, "Label column name (or 0-based index)")->required();
    cmd->add_option("--preprocess", opt.preprocess,
                    "Input preprocessing: none, or wbc (drop id column and rows with '?')")
        ->check(CLI::IsMember({"none", "wbc"}));
    cmd->add_option("--methods", opt.methods, "Base scorers to combine")
        ->delimiter(',')
        ->check(CLI::IsMember({"cfs", "relieff", "mi", "fisher"}));
    cmd->add_option("--subsets", opt.subsets, "Number of bootstrap subsets L")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--ratio", opt.ratio, "Bootstrap subset size as a fraction of S")
        ->check(CLI::Range(1e-9, 1.0));
    cmd->add_option("--seed", opt.seed, "Master seed");
    cmd->add_option("--relieff-k", opt.relieff_k, "ReliefF neighbors per class")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--bins", opt.bins, "Equal-width bins for MI/SU")->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--sd", opt.sd_convention, "Standard-deviation convention")
        ->check(CLI::IsMember({"population", "sample"}));
    cmd->add_option("--norm-scope", opt.norm_scope,
                    "Min-max normalization scope: features (per subset run) or subsets")
        ->check(CLI::IsMember({"features", "subsets"}));
    cmd->add_option("--out", opt.out, "Output directory (created if missing)");
    cmd->add_option("--jobs", opt.jobs, "Worker threads (never affects results)")
        ->check(CLI::PositiveNumber);
}

fuzzrank::Dataset load_dataset(const Options& opt) {
    std::string name = fs::path(opt.data).stem().string();
    if (opt.preprocess == "wbc") {
        fuzzrank::RawTable raw = fuzzrank::read_csv(fuzzrank::resolve_data_path(opt.data));
        if (!opt.label.empty() && raw.header.back() != opt.label)
            throw std::runtime_error("wbc preprocessing expects the label ('" + opt.label +
                                     "') to be the last column; found '" + raw.header.back() + "'");
        return fuzzrank::preprocess_wbc(raw, name);
    }
    return fuzzrank::load_csv(opt.data, opt.label, name);
}

fuzzrank::EnsembleConfig ensemble_config(const Options& opt) {
    fuzzrank::EnsembleConfig cfg;
    cfg.subsets = opt.subsets;
    cfg.ratio = opt.ratio;
    cfg.methods.clear();
    for (const auto& m : opt.methods) cfg.methods.push_back(fuzzrank::method_from_string(m));
    cfg.selector.relieff_k = opt.relieff_k;
    cfg.selector.bins = opt.bins;
    cfg.sd_convention = opt.sd_convention == "sample" ? fuzzrank::SdConvention::Sample
                                                      : fuzzrank::SdConvention::Population;
    cfg.normalization_scope = fuzzrank::normalization_scope_from_string(opt.norm_scope);
    cfg.jobs = opt.jobs;
    return cfg;
}

// p-grid syntax: "start:stop:step" (descending, inclusive) or a comma list.
std::vector<double> parse_p_grid(const std::string& text) {
    std::vector<double> grid;
    auto parse_one = [](const std::string& s) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::runtime_error("bad p-grid value '" + s + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i)
            if (i == text.size() || text[i] == ':') {
                parts.push_back(text.substr(start, i - start));
                start = i + 1;
            }
        if (parts.size() != 3) throw std::runtime_error("p-grid range must be start:stop:step");
        // Work in thousandths to keep the grid values exact (0.9, 0.8, ...).
        long a = std::lround(parse_one(parts[0]) * 1000.0);
        long b = std::lround(parse_one(parts[1]) * 1000.0);
        long step = std::lround(parse_one(parts[2]) * 1000.0);
        if (step <= 0 || a < b) throw std::runtime_error("p-grid range must descend, step > 0");
        for (long v = a; v >= b; v -= step) grid.push_back(static_cast<double>(v) / 1000.0);
    } else {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i)
            if (i == text.size() || text[i] == ',') {
                grid.push_back(parse_one(text.substr(start, i - start)));
                start = i + 1;
            }
    }
    for (double p : grid)
        if (!(p > 0.0) || p > 1.0) throw std::runtime_error("p-grid values must lie in (0, 1]");
    if (grid.empty()) throw std::runtime_error("empty p-grid");
    return grid;
}

// Resolved-run echo embedded in every JSON artifact. Deliberately excludes
// --out and --jobs: neither changes any result, and identical runs must
// produce identical bytes regardless of where and how wide they execute.
json config_echo(const std::string& command, const Options& opt) {
    json echo{{"command", command},
              {"data", opt.data},
              {"label", opt.label},
              {"preprocess", opt.preprocess},
              {"methods", opt.methods},
              {"L", opt.subsets},
              {"ratio", opt.ratio},
              {"seed", opt.seed},
              {"relieff_k", opt.relieff_k},
              {"bins", opt.bins},
              {"sd_convention", opt.sd_convention},
              {"normalization_scope", opt.norm_scope}};
    if (command == "rank") echo["scheme"] = opt.scheme;
    if (command == "eval-accuracy") {
        echo["classifier"] = opt.classifier;
        echo["folds"] = opt.folds;
        echo["rf_trees"] = opt.rf_trees;
    }
    if (command == "eval-stability") {
        echo["folds"] = opt.folds;
        echo["p_grid"] = parse_p_grid(opt.p_grid);
        echo["repeats"] = opt.repeats;
    }
    return echo;
}

void write_config_file(const fs::path& dir, const json& echo, const std::string& timestamp) {
    json doc{{"config", echo}, {"timestamp", timestamp}};
    fuzzrank::write_text_file((dir / "config.json").string(), doc.dump(2) + "\n");
}

int run_rank(const Options& opt) {
    fuzzrank::Dataset dataset = load_dataset(opt);
    auto cfg = ensemble_config(opt);
    auto result =
        fuzzrank::rank_features(dataset, fuzzrank::scheme_from_string(opt.scheme), cfg, opt.seed);

    fs::path dir(opt.out);
    fs::create_directories(dir);
    json echo = config_echo("rank", opt);
    std::string ts = fuzzrank::utc_timestamp();
    fuzzrank::write_text_file((dir / "ranking.json").string(),
                              fuzzrank::ranking_json(result, echo.dump(), ts));
    fuzzrank::write_csv((dir / "ranking.csv").string(), fuzzrank::ranking_csv_rows(result));
    write_config_file(dir, echo, ts);
    return 0;
}

int run_eval_accuracy(const Options& opt) {
    fuzzrank::Dataset dataset = load_dataset(opt);
    auto cfg = ensemble_config(opt);
    auto classifier = fuzzrank::classifier_from_string(opt.classifier);
    auto folds = fuzzrank::kfold_split(dataset, opt.folds, opt.seed);

    fuzzrank::MethodSet set = fuzzrank::standard_method_set(cfg);
    fuzzrank::EvalConfig eval_cfg;
    eval_cfg.rf_trees = opt.rf_trees;
    eval_cfg.jobs = opt.jobs;
    auto curves = fuzzrank::accuracy_curves_multi(dataset, set.ranker, set.labels, classifier,
                                                  folds, opt.seed, eval_cfg);

    fs::path dir(opt.out);
    fs::create_directories(dir);
    json echo = config_echo("eval-accuracy", opt);
    std::string ts = fuzzrank::utc_timestamp();
    std::string suffix = fuzzrank::classifier_to_string(classifier);
    fuzzrank::write_text_file(
        (dir / ("accuracy_" + suffix + ".json")).string(),
        fuzzrank::accuracy_json(dataset.name, classifier, opt.folds, opt.seed, curves, echo.dump(),
                                ts));
    fuzzrank::write_csv((dir / ("accuracy_curves_" + suffix + ".csv")).string(),
                        fuzzrank::accuracy_curves_csv_rows(curves));
    fuzzrank::write_csv((dir / ("accuracy_summary_" + suffix + ".csv")).string(),
                        fuzzrank::accuracy_summary_csv_rows(curves));
    write_config_file(dir, echo, ts);
    return 0;
}

int run_eval_stability(const Options& opt) {
    fuzzrank::Dataset dataset = load_dataset(opt);
    auto cfg = ensemble_config(opt);
    auto folds = fuzzrank::kfold_split(dataset, opt.folds, opt.seed);
    auto p_grid = parse_p_grid(opt.p_grid);

    fuzzrank::MethodSet set = fuzzrank::standard_method_set(cfg);
    auto reports = fuzzrank::cross_fold_stability_multi(dataset, set.scorer, set.labels, folds,
                                                        opt.seed, cfg.sd_convention, opt.jobs);
    auto curves = fuzzrank::subsample_stability_multi(dataset, set.scorer, set.labels, p_grid,
                                                      opt.repeats, opt.seed, opt.jobs);

    fs::path dir(opt.out);
    fs::create_directories(dir);
    json echo = config_echo("eval-stability", opt);
    std::string ts = fuzzrank::utc_timestamp();
    fuzzrank::write_text_file(
        (dir / "stability.json").string(),
        fuzzrank::stability_json(dataset.name, opt.folds, opt.seed, reports, curves, echo.dump(),
                                 ts));
    fuzzrank::write_csv((dir / "stability_table.csv").string(),
                        fuzzrank::stability_table_csv_rows(reports));
    fuzzrank::write_csv((dir / "subsample_curves.csv").string(),
                        fuzzrank::subsample_curves_csv_rows(curves));
    write_config_file(dir, echo, ts);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzrank: bootstrap fuzzy-set feature ranking and its evaluation protocols"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read option defaults from a TOML/INI file");

    Options opt;
    CLI::App* rank = app.add_subcommand("rank", "Rank features and write ranking.json/.csv");
    add_common_options(rank, opt);
    rank->add_option("--scheme", opt.scheme, "Weighting scheme")
        ->required()
        ->check(CLI::IsMember({"ew", "rw", "ow", "mw"}));

    CLI::App* eval_acc = app.add_subcommand(
        "eval-accuracy", "Cross-validated accuracy curves under feature elimination");
    add_common_options(eval_acc, opt);
    eval_acc->add_option("--classifier", opt.classifier, "Evaluation classifier")
        ->check(CLI::IsMember({"nb", "rf"}));
    eval_acc->add_option("--folds", opt.folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
    eval_acc->add_option("--rf-trees", opt.rf_trees, "Random-forest tree count")
        ->check(CLI::PositiveNumber);

    CLI::App* eval_stab = app.add_subcommand(
        "eval-stability", "Cross-fold ASD/APC and subsample stability curves");
    add_common_options(eval_stab, opt);
    eval_stab->add_option("--folds", opt.folds, "Cross-validation folds")
        ->check(CLI::Range(2, 1000));
    eval_stab->add_option("--p-grid", opt.p_grid, "Subsample proportions, start:stop:step or list");
    eval_stab->add_option("--repeats", opt.repeats, "Repeats per proportion")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage hint to stderr
        return 2;
    }

    try {
        if (rank->parsed()) return run_rank(opt);
        if (eval_acc->parsed()) return run_eval_accuracy(opt);
        if (eval_stab->parsed()) return run_eval_stability(opt);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
