#include "sigstream/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "sigstream/errors.hpp"
#include "sigstream/rng.hpp"
#include "sigstream/split.hpp"

namespace sigstream {

namespace {

void split_by_class(const std::vector<double>& scores,
                    const std::vector<int>& labels,
                    std::vector<double>& class0, std::vector<double>& class1) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("scores/labels length mismatch");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1)
      throw ValidationError("labels must be 0 or 1");
    (labels[i] == 1 ? class1 : class0).push_back(scores[i]);
  }
}

}  // namespace

KsResult ks_distance(const std::vector<double>& scores0,
                     const std::vector<double>& scores1) {
  if (scores0.empty() || scores1.empty())
    throw ValidationError("KS distance needs two non-empty samples");
  std::vector<double> a = scores0, b = scores1;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<long long>(a.size());
  const auto nb = static_cast<long long>(b.size());

  KsResult best;
  long long best_num = -1;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double t;
    if (j == b.size() || (i < a.size() && a[i] <= b[j]))
      t = a[i];
    else
      t = b[j];
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    const long long num = std::llabs(static_cast<long long>(i) * nb -
                                     static_cast<long long>(j) * na);
    if (num > best_num) {  // strictly greater keeps the smallest threshold
      best_num = num;
      best.threshold = t;
    }
  }
  best.distance = static_cast<double>(best_num) /
                  (static_cast<double>(na) * static_cast<double>(nb));
  return best;
}

Orientation choose_orientation(const std::vector<double>& scores,
                               const std::vector<int>& labels) {
  std::vector<double> class0, class1;
  split_by_class(scores, labels, class0, class1);
  if (class0.empty() || class1.empty()) return Orientation::higher_is_one;
  const double mean0 =
      std::accumulate(class0.begin(), class0.end(), 0.0) /
      static_cast<double>(class0.size());
  const double mean1 =
      std::accumulate(class1.begin(), class1.end(), 0.0) /
      static_cast<double>(class1.size());
  return mean1 < mean0 ? Orientation::lower_is_one
                       : Orientation::higher_is_one;
}

Confusion confusion_at_threshold(const std::vector<double>& scores,
                                 const std::vector<int>& labels,
                                 double threshold, Orientation orientation) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("scores/labels length mismatch");
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = orientation == Orientation::higher_is_one
                               ? scores[i] > threshold
                               : scores[i] < threshold;
    if (labels[i] == 1)
      (predicted ? c.tp : c.fn)++;
    else
      (predicted ? c.fp : c.tn)++;
  }
  c.correct_ratio = scores.empty()
                        ? 0.0
                        : static_cast<double>(c.tp + c.tn) /
                              static_cast<double>(scores.size());
  return c;
}

RocResult roc_auc(const std::vector<double>& scores,
                  const std::vector<int>& labels) {
  std::vector<double> class0, class1;
  split_by_class(scores, labels, class0, class1);
  if (class0.empty() || class1.empty())
    throw ValidationError("ROC needs both classes present");
  const double n0 = static_cast<double>(class0.size());
  const double n1 = static_cast<double>(class1.size());

  // midranks over the pooled sample; doubled ranks stay integral
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return scores[x] < scores[y];
                   });
  double doubled_rank_sum1 = 0.0;
  std::size_t a = 0;
  while (a < order.size()) {
    std::size_t b = a + 1;
    while (b < order.size() && scores[order[b]] == scores[order[a]]) ++b;
    const double doubled_rank = static_cast<double>(a + b + 1);  // 1-based
    for (std::size_t k = a; k < b; ++k)
      if (labels[order[k]] == 1) doubled_rank_sum1 += doubled_rank;
    a = b;
  }
  RocResult result;
  const double u1 = (doubled_rank_sum1 - n1 * (n1 + 1.0)) / 2.0;
  result.auc = u1 / (n0 * n1);

  // sweep distinct scores descending with the strict ">" rule
  result.points.emplace_back(0.0, 0.0);
  std::size_t above0 = 0, above1 = 0;
  std::size_t e = order.size();
  while (e > 0) {
    std::size_t s = e;
    while (s > 0 && scores[order[s - 1]] == scores[order[e - 1]]) --s;
    for (std::size_t k = s; k < e; ++k)
      (labels[order[k]] == 1 ? above1 : above0)++;
    result.points.emplace_back(static_cast<double>(above0) / n0,
                               static_cast<double>(above1) / n1);
    e = s;
  }
  return result;
}

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw std::invalid_argument("empty percentile input");
  if (pct < 0.0 || pct > 100.0)
    throw std::invalid_argument("percentile outside [0,100]");
  std::sort(values.begin(), values.end());
  const double h =
      static_cast<double>(values.size() - 1) * pct / 100.0;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

ClassificationReport evaluate_classifier(
    const std::vector<double>& learn_scores,
    const std::vector<int>& learn_labels,
    const std::vector<double>& oos_scores,
    const std::vector<int>& oos_labels) {
  std::vector<double> learn0, learn1, oos0, oos1;
  split_by_class(learn_scores, learn_labels, learn0, learn1);
  split_by_class(oos_scores, oos_labels, oos0, oos1);

  ClassificationReport report;
  const KsResult ks_learn = ks_distance(learn0, learn1);
  report.ks_learning = ks_learn.distance;
  report.threshold = ks_learn.threshold;
  report.ks_oos = ks_distance(oos0, oos1).distance;
  report.orientation = choose_orientation(learn_scores, learn_labels);

  const Confusion c = confusion_at_threshold(oos_scores, oos_labels,
                                             report.threshold,
                                             report.orientation);
  report.tp = c.tp;
  report.fp = c.fp;
  report.tn = c.tn;
  report.fn = c.fn;
  report.correct_ratio = c.correct_ratio;

  report.auc_learning = roc_auc(learn_scores, learn_labels).auc;
  const RocResult oos_roc = roc_auc(oos_scores, oos_labels);
  report.auc_oos = oos_roc.auc;
  report.roc_points = oos_roc.points;
  return report;
}

IndicatorSummary summarize(const std::vector<double>& values) {
  IndicatorSummary s;
  s.min = *std::min_element(values.begin(), values.end());
  s.p5 = percentile(values, 5.0);
  s.p10 = percentile(values, 10.0);
  s.p25 = percentile(values, 25.0);
  s.p50 = percentile(values, 50.0);
  s.p75 = percentile(values, 75.0);
  s.p90 = percentile(values, 90.0);
  s.p95 = percentile(values, 95.0);
  s.max = *std::max_element(values.begin(), values.end());
  return s;
}

namespace {

struct SplitData {
  std::vector<std::vector<double>> learn_X, test_X;
  std::vector<std::size_t> learn_rows, test_rows;
};

SplitData fixed_split(const std::vector<std::vector<double>>& X,
                      const std::vector<int>& labels, double ratio,
                      std::uint64_t seed) {
  std::vector<double> y(labels.begin(), labels.end());
  const SplitIndices indices =
      stratified_split(content_hashes(X, y), labels, ratio, seed);
  SplitData data;
  data.learn_rows = indices.learn;
  data.test_rows = indices.test;
  for (const std::size_t i : indices.learn) data.learn_X.push_back(X[i]);
  for (const std::size_t i : indices.test) data.test_X.push_back(X[i]);
  return data;
}

TrialIndicators run_trial(const SplitData& data,
                          const std::vector<int>& labels,
                          const AlgebraParams& params, TrainConfig train_cfg) {
  std::vector<double> learn_y;
  std::vector<int> learn_labels, test_labels;
  for (const std::size_t i : data.learn_rows) {
    learn_y.push_back(labels[i]);
    learn_labels.push_back(labels[i]);
  }
  for (const std::size_t i : data.test_rows) test_labels.push_back(labels[i]);

  const LassoModel model = train(data.learn_X, learn_y, params, train_cfg);
  const ClassificationReport report =
      evaluate_classifier(predict(model, data.learn_X), learn_labels,
                          predict(model, data.test_X), test_labels);
  return {report.ks_oos, report.auc_oos, report.correct_ratio};
}

}  // namespace

BaselineResult randomized_label_baseline(
    const std::vector<std::vector<double>>& X, const std::vector<int>& labels,
    const AlgebraParams& params, const BaselineConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const SplitData data = fixed_split(X, labels, config.split_ratio,
                                     derive_seed(config.seed, "split", 0));

  BaselineResult result;
  for (int t = 0; t < config.trials; ++t) {
    SplitMix64 rng(derive_seed(config.seed, "baseline",
                               static_cast<std::uint64_t>(t)));
    std::vector<int> permuted = labels;
    // redraw when a permutation starves the learning set of a class
    for (int attempt = 0;; ++attempt) {
      shuffle(permuted, rng);
      std::size_t counts[2] = {0, 0};
      for (const std::size_t i : data.learn_rows) ++counts[permuted[i]];
      if (counts[0] >= 2 && counts[1] >= 2) break;
      if (attempt >= 100)
        throw ValidationError(
            "could not draw a two-class learning set in 100 attempts");
    }
    TrainConfig train_cfg = config.train;
    train_cfg.seed = derive_seed(config.seed, "trial-train",
                                 static_cast<std::uint64_t>(t));
    result.trials.push_back(run_trial(data, permuted, params, train_cfg));
  }

  std::vector<double> ks, auc, ratio;
  for (const TrialIndicators& t : result.trials) {
    ks.push_back(t[0]);
    auc.push_back(t[1]);
    ratio.push_back(t[2]);
  }
  result.ks = summarize(ks);
  result.auc = summarize(auc);
  result.ratio = summarize(ratio);
  return result;
}

std::vector<LearningCurvePoint> learning_curve(
    const std::vector<std::vector<double>>& X, const std::vector<int>& labels,
    const AlgebraParams& params, const LearningCurveConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const SplitData data = fixed_split(X, labels, config.pool_ratio,
                                     derive_seed(config.seed, "split", 0));

  std::vector<LearningCurvePoint> curve;
  for (std::size_t si = 0; si < config.sizes.size(); ++si) {
    const std::size_t size = config.sizes[si];
    if (size < 4 || size > data.learn_rows.size())
      throw std::invalid_argument("learning-curve size outside the pool");

    LearningCurvePoint point;
    point.size = size;
    for (int t = 0; t < config.trials; ++t) {
      SplitMix64 rng(derive_seed(config.seed, "curve",
                                 si * 1000000 + static_cast<std::uint64_t>(t)));
      std::vector<std::size_t> pool = data.learn_rows;
      SplitData subset;
      subset.test_rows = data.test_rows;
      subset.test_X = data.test_X;
      for (int attempt = 0;; ++attempt) {
        shuffle(pool, rng);
        std::size_t counts[2] = {0, 0};
        for (std::size_t k = 0; k < size; ++k) ++counts[labels[pool[k]]];
        if (counts[0] >= 2 && counts[1] >= 2) break;
        if (attempt >= 100)
          throw ValidationError(
              "could not draw a two-class subsample in 100 attempts");
      }
      subset.learn_rows.assign(pool.begin(),
                               pool.begin() + static_cast<std::ptrdiff_t>(size));
      for (const std::size_t i : subset.learn_rows)
        subset.learn_X.push_back(X[i]);

      TrainConfig train_cfg = config.train;
      train_cfg.seed = derive_seed(config.seed, "curve-train",
                                   si * 1000000 + static_cast<std::uint64_t>(t));
      point.trials.push_back(run_trial(subset, labels, params, train_cfg));
    }

    std::vector<double> ks, auc, ratio;
    for (const TrialIndicators& t : point.trials) {
      ks.push_back(t[0]);
      auc.push_back(t[1]);
      ratio.push_back(t[2]);
    }
    const auto five = [](const std::vector<double>& v) {
      FiveNumber f;
      f.min = *std::min_element(v.begin(), v.end());
      f.q1 = percentile(v, 25.0);
      f.median = percentile(v, 50.0);
      f.q3 = percentile(v, 75.0);
      f.max = *std::max_element(v.begin(), v.end());
      return f;
    };
    point.ks = five(ks);
    point.auc = five(auc);
    point.ratio = five(ratio);
    curve.push_back(std::move(point));
  }
  return curve;
}

}  // namespace sigstream
