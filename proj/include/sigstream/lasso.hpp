#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigstream/tensor_algebra.hpp"

namespace sigstream {

struct StandardizationStats {
  std::vector<double> mean;            // one entry per input column
  std::vector<double> stdev;           // population standard deviation
  std::vector<std::size_t> dropped;    // columns with stdev < 1e-12, ascending
};

// Per-column population moments; throws on an empty matrix.
StandardizationStats standardize_fit(const std::vector<std::vector<double>>& X);

// Centered/scaled copy with dropped columns removed, column-major.
std::vector<std::vector<double>> standardize_apply(
    const StandardizationStats& stats,
    const std::vector<std::vector<double>>& X);

struct CoordinateDescentResult {
  std::vector<double> beta;
  double intercept = 0.0;
  bool converged = true;
  int sweeps = 0;
  std::vector<double> objective;  // after each sweep
};

// Minimizes sum_k (x_k . beta + intercept - y_k)^2 + alpha * sum_j |beta_j|
// over centered column-major data; the intercept is unpenalized and equals
// mean(y).  Cyclic soft-threshold updates; stops when the largest coefficient
// change in a sweep drops below tol.
CoordinateDescentResult coordinate_descent(
    const std::vector<std::vector<double>>& columns,
    const std::vector<double>& y, double alpha, int max_sweeps = 10000,
    double tol = 1e-8, const std::vector<double>* warm_start = nullptr);

// Smallest alpha whose solution is identically zero: 2 max_j |x_j . (y - mean y)|.
double alpha_max(const std::vector<std::vector<double>>& columns,
                 const std::vector<double>& y);

// Ascending log-spaced grid from 1e-4 * amax to amax.
std::vector<double> alpha_grid(double amax, int size);

struct CrossValidationResult {
  double alpha = 0.0;
  std::vector<std::pair<double, double>> table;  // (alpha, mean CV error)
};

// k-fold CV over the grid: rows are put in a canonical seeded order (keyed by
// per-column rank profiles, so the order survives row permutation and column
// rescaling), folds are contiguous ranges of that order, each fold's training
// part is re-standardized, and the mean held-out squared error is averaged
// across folds.  Ties prefer the larger alpha.
CrossValidationResult cross_validate_alpha(
    const std::vector<std::vector<double>>& X, const std::vector<double>& y,
    const std::vector<double>& grid, int k, std::uint64_t seed);

struct LassoModel {
  AlgebraParams params;
  double alpha = 0.0;
  double intercept = 0.0;
  std::vector<std::size_t> retained;  // original column indices, ascending
  std::vector<double> mean;           // aligned with retained
  std::vector<double> stdev;
  std::vector<double> beta;
  std::vector<std::size_t> dropped;
  std::vector<std::pair<double, double>> cv_table;
  bool converged = true;
};

struct TrainConfig {
  std::uint64_t seed = 0;
  int cv_folds = 5;
  int grid_size = 30;
  std::optional<double> alpha_override;
  int max_sweeps = 10000;
  double tol = 1e-8;
};

// Standardize on the learning set, pick alpha by CV (unless overridden), fit
// with coordinate descent.  Rows of X are raw feature vectors of length
// feature_count(params); y entries must be 0 or 1 with both classes present.
LassoModel train(const std::vector<std::vector<double>>& X,
                 const std::vector<double>& y, const AlgebraParams& params,
                 const TrainConfig& config);

double predict_one(const LassoModel& model, const std::vector<double>& row);
std::vector<double> predict(const LassoModel& model,
                            const std::vector<std::vector<double>>& X);

// Nonzero coefficients of largest magnitude, descending, with dotted names.
std::vector<std::pair<std::string, double>> top_coefficients(
    const LassoModel& model, std::size_t n);

void save_model(const std::string& path, const LassoModel& model);
LassoModel load_model(const std::string& path);

}  // namespace sigstream
