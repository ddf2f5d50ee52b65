#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "sigstream/lasso.hpp"

namespace sigstream {

struct KsResult {
  double distance = 0.0;
  double threshold = 0.0;  // smallest pooled value attaining the max
};

// Two-sample Kolmogorov-Smirnov distance of the right-continuous ECDFs,
// maximized over pooled sample values; ECDF gaps are compared as exact
// integer numerators so threshold ties break deterministically.
KsResult ks_distance(const std::vector<double>& scores0,
                     const std::vector<double>& scores1);

// Whether larger scores vote for class 1 (flipped when the learning-set
// class-1 mean falls below the class-0 mean).
enum class Orientation { higher_is_one, lower_is_one };

Orientation choose_orientation(const std::vector<double>& scores,
                               const std::vector<int>& labels);

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double correct_ratio = 0.0;
};

// Strict comparison: score > threshold predicts 1 (score < threshold for the
// flipped orientation); ties at the threshold predict 0.
Confusion confusion_at_threshold(const std::vector<double>& scores,
                                 const std::vector<int>& labels,
                                 double threshold, Orientation orientation);

struct RocResult {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0)→(1,1)
  double auc = 0.0;
};

// AUC as the Mann-Whitney statistic over cross-class pairs (ties count 1/2),
// computed from midranks; points sweep distinct scores descending.
RocResult roc_auc(const std::vector<double>& scores,
                  const std::vector<int>& labels);

// Linear interpolation between closest order statistics (the ubiquitous
// "type 7" rule): percentile({1..100}, 95) = 95.05.
double percentile(std::vector<double> values, double pct);

struct ClassificationReport {
  double ks_learning = 0.0;
  double ks_oos = 0.0;
  double threshold = 0.0;
  Orientation orientation = Orientation::higher_is_one;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double correct_ratio = 0.0;
  double auc_learning = 0.0;
  double auc_oos = 0.0;
  std::vector<std::pair<double, double>> roc_points;  // out-of-sample
};

// Threshold and orientation are fitted on the learning scores; the confusion
// matrix, correct ratio, and ROC describe the out-of-sample set.
ClassificationReport evaluate_classifier(
    const std::vector<double>& learn_scores,
    const std::vector<int>& learn_labels,
    const std::vector<double>& oos_scores,
    const std::vector<int>& oos_labels);

struct IndicatorSummary {
  double min = 0.0, p5 = 0.0, p10 = 0.0, p25 = 0.0, p50 = 0.0, p75 = 0.0,
         p90 = 0.0, p95 = 0.0, max = 0.0;
};

IndicatorSummary summarize(const std::vector<double>& values);

// Per-trial (ks_oos, auc_oos, correct_ratio).
using TrialIndicators = std::array<double, 3>;

struct BaselineConfig {
  int trials = 50;
  double split_ratio = 0.75;
  std::uint64_t seed = 0;
  TrainConfig train;
};

struct BaselineResult {
  IndicatorSummary ks, auc, ratio;  // the p95 fields are the "Ref" levels
  std::vector<TrialIndicators> trials;
};

// Null-hypothesis reference: a fixed stratified split from the true labels,
// then per trial the labels are globally permuted and the full pipeline
// (standardization, CV, fit) reruns on the learning rows.
BaselineResult randomized_label_baseline(
    const std::vector<std::vector<double>>& X, const std::vector<int>& labels,
    const AlgebraParams& params, const BaselineConfig& config);

struct FiveNumber {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct LearningCurvePoint {
  std::size_t size = 0;
  FiveNumber ks, auc, ratio;
  std::vector<TrialIndicators> trials;
};

struct LearningCurveConfig {
  std::vector<std::size_t> sizes;
  int trials = 50;
  double pool_ratio = 0.75;  // training pool fraction; the rest is the test set
  std::uint64_t seed = 0;
  TrainConfig train;
};

// Robustness to learning-set size: a fixed stratified test set, and per size
// `trials` subsamples of the pool (redrawn, up to 100 times, if a subsample
// lacks 2 rows of either class), each retrained and tested on the same rows.
std::vector<LearningCurvePoint> learning_curve(
    const std::vector<std::vector<double>>& X, const std::vector<int>& labels,
    const AlgebraParams& params, const LearningCurveConfig& config);

}  // namespace sigstream
