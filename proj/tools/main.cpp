#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "sigstream/errors.hpp"
#include "sigstream/evaluation.hpp"
#include "sigstream/lasso.hpp"
#include "sigstream/market.hpp"
#include "sigstream/rng.hpp"
#include "sigstream/split.hpp"
#include "sigstream/synthetic.hpp"
#include "sigstream/textio.hpp"

namespace {

using namespace sigstream;

// report files are key=value lines; sidecar CSVs share the report's stem
std::string sidecar_path(const std::string& report, const char* suffix) {
  const std::filesystem::path p(report);
  std::filesystem::path base = p.parent_path() / p.stem();
  return base.string() + suffix;
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string text;
  for (const auto& [key, value] : kv) text += key + "=" + value + "\n";
  write_file(path, text);
}

const char* orientation_name(Orientation o) {
  return o == Orientation::higher_is_one ? "higher_is_one" : "lower_is_one";
}

struct LabeledFeatures {
  AlgebraParams params;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> X;
  std::vector<int> labels;
};

LabeledFeatures read_labeled_features(const std::string& path) {
  FeatureTable table = read_feature_csv(path);
  LabeledFeatures data;
  data.params = table.params;
  for (FeatureRecord& r : table.records) {
    if (!r.label.has_value())
      throw ValidationError("stream '" + r.id +
                            "' has no label; labeled features required");
    data.ids.push_back(std::move(r.id));
    data.X.push_back(std::move(r.features));
    data.labels.push_back(*r.label);
  }
  if (data.X.empty()) throw ValidationError("feature file has no rows");
  return data;
}

struct GenerateArgs {
  std::string class_a, class_b, output;
  std::size_t count = 0;
  std::optional<std::size_t> count_b;
  std::size_t points = 60;
  double noise = 0.3;
  double price_vol = 0.001;
  std::uint64_t seed = 0;
};

int cmd_generate(const GenerateArgs& args) {
  GeneratorConfig cfg_a;
  cfg_a.profile_class = *parse_profile(args.class_a);
  cfg_a.n_points = args.points;
  cfg_a.noise_level = args.noise;
  cfg_a.price_vol = args.price_vol;
  cfg_a.count = args.count;
  cfg_a.seed = args.seed;
  GeneratorConfig cfg_b = cfg_a;
  cfg_b.profile_class = *parse_profile(args.class_b);
  cfg_b.count = args.count_b.value_or(args.count);

  const auto streams = generate_dataset(cfg_a, cfg_b);
  write_order_book_csv(args.output, streams);
  std::cout << "wrote " << streams.size() << " streams (" << cfg_a.count
            << " " << args.class_a << " + " << cfg_b.count << " "
            << args.class_b << ") to " << args.output << "\n";
  return 0;
}

struct FeaturizeArgs {
  std::string input, output;
  int depth = 4;
  std::vector<double> bucket;
  int workers = 1;
};

int cmd_featurize(const FeaturizeArgs& args) {
  std::vector<OrderBookStream> streams = parse_order_book_csv(args.input);
  std::size_t bucket_skipped = 0;
  if (!args.bucket.empty()) {
    std::vector<OrderBookStream> sliced;
    for (const OrderBookStream& s : streams) {
      try {
        sliced.push_back(slice_bucket(s, args.bucket[0], args.bucket[1]));
      } catch (const EmptyBucketError& e) {
        std::cerr << "warning: skipping: " << e.what() << "\n";
        ++bucket_skipped;
      }
    }
    streams = std::move(sliced);
  }

  const FeaturizeResult result =
      featurize_streams(streams, args.depth, args.workers);
  for (const std::string& w : result.warnings)
    std::cerr << "warning: " << w << "\n";
  if (result.table.records.empty())
    throw ValidationError("no stream survived featurization");
  write_feature_csv(args.output, result.table);
  std::cout << "wrote " << result.table.records.size() << " feature rows ("
            << feature_count(result.table.params) << " columns) to "
            << args.output;
  if (result.skipped + bucket_skipped > 0)
    std::cout << "; skipped " << result.skipped + bucket_skipped
              << " streams";
  std::cout << "\n";
  return 0;
}

struct TrainArgs {
  std::string input, model_path, report;
  double split_ratio = 0.75;
  std::uint64_t seed = 0;
  int folds = 5;
  int grid = 30;
  std::optional<double> alpha;
};

int cmd_train(const TrainArgs& args) {
  const LabeledFeatures data = read_labeled_features(args.input);
  std::vector<double> y(data.labels.begin(), data.labels.end());
  const SplitIndices split =
      stratified_split(content_hashes(data.X, y), data.labels,
                       args.split_ratio, derive_seed(args.seed, "split", 0));

  std::vector<std::vector<double>> learn_X, oos_X;
  std::vector<double> learn_y;
  std::vector<int> learn_labels, oos_labels;
  for (const std::size_t i : split.learn) {
    learn_X.push_back(data.X[i]);
    learn_y.push_back(y[i]);
    learn_labels.push_back(data.labels[i]);
  }
  for (const std::size_t i : split.test) {
    oos_X.push_back(data.X[i]);
    oos_labels.push_back(data.labels[i]);
  }

  TrainConfig cfg;
  cfg.seed = args.seed;
  cfg.cv_folds = args.folds;
  cfg.grid_size = args.grid;
  cfg.alpha_override = args.alpha;
  const LassoModel model = train(learn_X, learn_y, data.params, cfg);
  save_model(args.model_path, model);

  const std::vector<double> learn_scores = predict(model, learn_X);
  const std::vector<double> oos_scores = predict(model, oos_X);
  const ClassificationReport report =
      evaluate_classifier(learn_scores, learn_labels, oos_scores, oos_labels);

  const std::size_t nonzero = model.beta.size() - static_cast<std::size_t>(
      std::count(model.beta.begin(), model.beta.end(), 0.0));
  if (nonzero == 0)
    std::cerr << "warning: all coefficients are zero at alpha "
              << format_double(model.alpha)
              << "; the model predicts the base rate only\n";
  if (!model.converged)
    std::cerr << "warning: coordinate descent hit the sweep limit before "
                 "converging\n";

  std::cout << "rows: " << learn_X.size() << " learning / " << oos_X.size()
            << " out-of-sample\n"
            << "alpha: " << format_double(model.alpha)
            << (args.alpha ? " (override)" : " (cross-validated)") << "\n"
            << "nonzero coefficients: " << nonzero << " / "
            << model.beta.size() + model.dropped.size() << "\n"
            << "learning:      KS " << format_double(report.ks_learning)
            << "  AUC " << format_double(report.auc_learning) << "\n"
            << "out-of-sample: KS " << format_double(report.ks_oos)
            << "  AUC " << format_double(report.auc_oos) << "  correct "
            << format_double(report.correct_ratio) << "\n";
  const auto top = top_coefficients(model, 15);
  if (!top.empty()) {
    std::cout << "top coefficients:\n";
    for (std::size_t i = 0; i < top.size(); ++i)
      std::cout << "  " << i + 1 << "  sig_" << top[i].first << "  "
                << format_double(top[i].second) << "\n";
  }
  std::cout << "model written to " << args.model_path << "\n";

  if (args.report.empty()) return 0;
  write_report(
      args.report,
      {{"seed", format_int(static_cast<std::int64_t>(args.seed))},
       {"split_ratio", format_double(args.split_ratio)},
       {"n_learning", std::to_string(learn_X.size())},
       {"n_oos", std::to_string(oos_X.size())},
       {"alpha", format_double(model.alpha)},
       {"nonzero_count", std::to_string(nonzero)},
       {"converged", model.converged ? "1" : "0"},
       {"ks_learning", format_double(report.ks_learning)},
       {"ks_oos", format_double(report.ks_oos)},
       {"threshold", format_double(report.threshold)},
       {"orientation", orientation_name(report.orientation)},
       {"tp", std::to_string(report.tp)},
       {"fp", std::to_string(report.fp)},
       {"tn", std::to_string(report.tn)},
       {"fn", std::to_string(report.fn)},
       {"correct_ratio", format_double(report.correct_ratio)},
       {"auc_learning", format_double(report.auc_learning)},
       {"auc_oos", format_double(report.auc_oos)}});

  auto scores_csv = [&](const std::vector<std::size_t>& rows,
                        const std::vector<double>& scores) {
    std::string text = "stream_id,label,score\n";
    for (std::size_t k = 0; k < rows.size(); ++k)
      text += data.ids[rows[k]] + "," + std::to_string(data.labels[rows[k]]) +
              "," + format_double(scores[k]) + "\n";
    return text;
  };
  write_file(sidecar_path(args.report, "_learn_scores.csv"),
             scores_csv(split.learn, learn_scores));
  write_file(sidecar_path(args.report, "_oos_scores.csv"),
             scores_csv(split.test, oos_scores));

  std::string roc = "fpr,tpr\n";
  for (const auto& [fpr, tpr] : report.roc_points)
    roc += format_double(fpr) + "," + format_double(tpr) + "\n";
  write_file(sidecar_path(args.report, "_roc.csv"), roc);

  if (!model.cv_table.empty()) {
    std::string cv = "alpha,cv_error\n";
    for (const auto& [a, err] : model.cv_table)
      cv += format_double(a) + "," + format_double(err) + "\n";
    write_file(sidecar_path(args.report, "_cv.csv"), cv);
  }
  std::cout << "report written to " << args.report << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string input, mode, output;
  int trials = 50;
  std::vector<std::size_t> sizes;
  double split_ratio = 0.75;
  std::uint64_t seed = 0;
  int folds = 5;
  int grid = 30;
  std::optional<double> alpha;
};

constexpr const char* kStatNames[] = {"min", "p5",  "p10", "p25", "p50",
                                      "p75", "p90", "p95", "max"};

std::vector<double> summary_values(const IndicatorSummary& s) {
  return {s.min, s.p5, s.p10, s.p25, s.p50, s.p75, s.p90, s.p95, s.max};
}

int cmd_evaluate_baseline(const EvaluateArgs& args,
                          const LabeledFeatures& data, TrainConfig train_cfg) {
  BaselineConfig cfg;
  cfg.trials = args.trials;
  cfg.split_ratio = args.split_ratio;
  cfg.seed = args.seed;
  cfg.train = train_cfg;
  const BaselineResult result =
      randomized_label_baseline(data.X, data.labels, data.params, cfg);

  const std::pair<std::string, const IndicatorSummary*> indicators[] = {
      {"ks_oos", &result.ks},
      {"auc_oos", &result.auc},
      {"correct_ratio", &result.ratio}};

  std::cout << "percentiles of the classification indicators ("
            << args.trials << " shuffled-label trials)\n";
  std::cout << "indicator     ";
  for (const char* stat : kStatNames) std::cout << "\t" << stat;
  std::cout << "\n";
  std::vector<std::pair<std::string, std::string>> kv = {
      {"trials", std::to_string(args.trials)},
      {"seed", format_int(static_cast<std::int64_t>(args.seed))},
      {"split_ratio", format_double(args.split_ratio)}};
  for (const auto& [name, summary] : indicators) {
    std::cout << name;
    const auto values = summary_values(*summary);
    for (std::size_t k = 0; k < values.size(); ++k) {
      std::cout << "\t" << format_double(values[k]);
      kv.emplace_back(name + "_" + kStatNames[k], format_double(values[k]));
    }
    std::cout << "\n";
  }
  std::cout << "reference (95th percentile): KS "
            << format_double(result.ks.p95) << "  AUC "
            << format_double(result.auc.p95) << "  correct "
            << format_double(result.ratio.p95) << "\n";
  kv.emplace_back("ref_ks", format_double(result.ks.p95));
  kv.emplace_back("ref_auc", format_double(result.auc.p95));
  kv.emplace_back("ref_ratio", format_double(result.ratio.p95));
  write_report(args.output, kv);

  std::string trials_csv = "trial,ks_oos,auc_oos,correct_ratio\n";
  for (std::size_t t = 0; t < result.trials.size(); ++t)
    trials_csv += std::to_string(t) + "," +
                  format_double(result.trials[t][0]) + "," +
                  format_double(result.trials[t][1]) + "," +
                  format_double(result.trials[t][2]) + "\n";
  write_file(sidecar_path(args.output, "_trials.csv"), trials_csv);
  std::cout << "report written to " << args.output << "\n";
  return 0;
}

int cmd_evaluate_curve(const EvaluateArgs& args, const LabeledFeatures& data,
                       TrainConfig train_cfg) {
  LearningCurveConfig cfg;
  cfg.sizes = args.sizes;
  cfg.trials = args.trials;
  cfg.pool_ratio = args.split_ratio;
  cfg.seed = args.seed;
  cfg.train = train_cfg;
  const auto curve = learning_curve(data.X, data.labels, data.params, cfg);

  std::vector<std::pair<std::string, std::string>> kv = {
      {"trials", std::to_string(args.trials)},
      {"seed", format_int(static_cast<std::int64_t>(args.seed))},
      {"pool_ratio", format_double(args.split_ratio)}};
  std::string sizes_text;
  for (const LearningCurvePoint& point : curve)
    sizes_text += (sizes_text.empty() ? "" : ",") + std::to_string(point.size);
  kv.emplace_back("sizes", sizes_text);

  std::cout << "learning curve (" << args.trials << " trials per size)\n"
            << "size\tindicator\tmin\tq1\tmedian\tq3\tmax\n";
  for (const LearningCurvePoint& point : curve) {
    const std::pair<std::string, const FiveNumber*> indicators[] = {
        {"ks_oos", &point.ks},
        {"auc_oos", &point.auc},
        {"correct_ratio", &point.ratio}};
    for (const auto& [name, five] : indicators) {
      const double values[] = {five->min, five->q1, five->median, five->q3,
                               five->max};
      const char* stats[] = {"min", "q1", "median", "q3", "max"};
      std::cout << point.size << "\t" << name;
      for (std::size_t k = 0; k < 5; ++k) {
        std::cout << "\t" << format_double(values[k]);
        kv.emplace_back("size_" + std::to_string(point.size) + "_" + name +
                            "_" + stats[k],
                        format_double(values[k]));
      }
      std::cout << "\n";
    }
  }
  write_report(args.output, kv);

  std::string trials_csv = "size,trial,ks_oos,auc_oos,correct_ratio\n";
  for (const LearningCurvePoint& point : curve)
    for (std::size_t t = 0; t < point.trials.size(); ++t)
      trials_csv += std::to_string(point.size) + "," + std::to_string(t) +
                    "," + format_double(point.trials[t][0]) + "," +
                    format_double(point.trials[t][1]) + "," +
                    format_double(point.trials[t][2]) + "\n";
  write_file(sidecar_path(args.output, "_trials.csv"), trials_csv);
  std::cout << "report written to " << args.output << "\n";
  return 0;
}

int cmd_evaluate(const EvaluateArgs& args) {
  const LabeledFeatures data = read_labeled_features(args.input);
  TrainConfig train_cfg;
  train_cfg.cv_folds = args.folds;
  train_cfg.grid_size = args.grid;
  train_cfg.alpha_override = args.alpha;
  if (args.mode == "baseline")
    return cmd_evaluate_baseline(args, data, train_cfg);
  return cmd_evaluate_curve(args, data, train_cfg);
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // ParseError, ValidationError, and I/O failures are all data errors
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "signature-based order-book stream classification: generate, "
      "featurize, train, evaluate"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "read defaults from a key = value file; flags win");

  const std::vector<std::string> profile_names = {
      "front_loaded", "back_loaded", "mid_loaded", "front_and_back_loaded",
      "flat"};

  GenerateArgs gen;
  CLI::App* generate =
      app.add_subcommand("generate", "write a labeled synthetic raw CSV");
  generate->add_option("--class-a", gen.class_a, "label-0 profile class")
      ->required()
      ->check(CLI::IsMember(profile_names));
  generate->add_option("--class-b", gen.class_b, "label-1 profile class")
      ->required()
      ->check(CLI::IsMember(profile_names));
  generate->add_option("--count", gen.count, "streams per class")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--count-b", gen.count_b,
                       "class-b stream count when unbalanced");
  generate->add_option("--points", gen.points, "rows per stream")->capture_default_str()
      ->check(CLI::Range(std::size_t{3}, std::size_t{1000000}));
  generate->add_option("--noise", gen.noise, "volume perturbation level")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--price-vol", gen.price_vol,
                       "per-step mid-price log volatility")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "master seed")->required();
  generate->add_option("-o,--output", gen.output, "raw CSV path")->required();

  FeaturizeArgs feat;
  CLI::App* featurize = app.add_subcommand(
      "featurize", "normalized lead-lag signature features of raw streams");
  featurize->add_option("-i,--input", feat.input, "raw CSV path")
      ->required()
      ->check(CLI::ExistingFile);
  featurize->add_option("-o,--output", feat.output, "feature CSV path")
      ->required();
  featurize->add_option("--depth", feat.depth, "signature truncation depth")->capture_default_str()
      ->check(CLI::PositiveNumber);
  featurize
      ->add_option("--bucket", feat.bucket,
                   "time window start,end; rows outside are dropped")
      ->delimiter(',')
      ->expected(2);
  featurize->add_option("--workers", feat.workers, "worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);

  TrainArgs tr;
  CLI::App* train_cmd = app.add_subcommand(
      "train", "split, cross-validate, and fit the penalized model");
  train_cmd->add_option("-i,--input", tr.input, "feature CSV path")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("-o,--model", tr.model_path, "model file path")
      ->required();
  train_cmd->add_option("--report", tr.report,
                        "report path; score/roc/cv CSVs share its stem");
  train_cmd->add_option("--split", tr.split_ratio, "learning-set fraction")->capture_default_str()
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  train_cmd->add_option("--seed", tr.seed, "master seed")->required();
  train_cmd->add_option("--folds", tr.folds, "cross-validation folds")->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  train_cmd->add_option("--grid", tr.grid, "alpha grid size")->capture_default_str()
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--alpha", tr.alpha,
                        "fixed penalty; skips cross-validation");

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "shuffled-label baseline or learning-curve protocol");
  evaluate->add_option("-i,--input", ev.input, "feature CSV path")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--mode", ev.mode, "protocol")
      ->required()
      ->check(CLI::IsMember({"baseline", "learning-curve"}));
  evaluate->add_option("--trials", ev.trials, "trials per setting")->capture_default_str()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--sizes", ev.sizes, "learning-set sizes")
      ->delimiter(',');
  evaluate->add_option("--split", ev.split_ratio,
                       "learning-pool fraction")->capture_default_str()
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  evaluate->add_option("--seed", ev.seed, "master seed")->required();
  evaluate->add_option("--folds", ev.folds, "cross-validation folds")->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  evaluate->add_option("--grid", ev.grid, "alpha grid size")->capture_default_str()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--alpha", ev.alpha,
                       "fixed penalty; skips cross-validation");
  evaluate->add_option("-o,--output", ev.output, "report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (evaluate->parsed() && ev.mode == "learning-curve" && ev.sizes.empty()) {
    std::cerr << "usage error: --mode learning-curve requires --sizes\n";
    return 1;
  }

  if (generate->parsed()) return guarded([&] { return cmd_generate(gen); });
  if (featurize->parsed()) return guarded([&] { return cmd_featurize(feat); });
  if (train_cmd->parsed()) return guarded([&] { return cmd_train(tr); });
  return guarded([&] { return cmd_evaluate(ev); });
}
