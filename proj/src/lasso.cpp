#include "sigstream/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sigstream/errors.hpp"
#include "sigstream/rng.hpp"
#include "sigstream/split.hpp"
#include "sigstream/textio.hpp"

namespace sigstream {

namespace {

constexpr double kDropStdev = 1e-12;

void check_matrix(const std::vector<std::vector<double>>& X,
                  const std::vector<double>& y) {
  if (X.size() != y.size())
    throw std::invalid_argument("X and y have different row counts");
  for (const double v : y)
    if (!std::isfinite(v)) throw NumericError("non-finite label");
  for (const auto& row : X) {
    if (row.size() != X[0].size())
      throw std::invalid_argument("ragged feature matrix");
    for (const double v : row)
      if (!std::isfinite(v)) throw NumericError("non-finite feature value");
  }
}

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

// Four-lane dot product.  The fixed association matters: alpha_max and the
// descent gradient must round identically or the kill condition at exactly
// alpha_max would leak a coefficient.
double dot4(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += a[k] * b[k];
    s1 += a[k + 1] * b[k + 1];
    s2 += a[k + 2] * b[k + 2];
    s3 += a[k + 3] * b[k + 3];
  }
  for (; k < n; ++k) s0 += a[k] * b[k];
  return (s0 + s1) + (s2 + s3);
}

// Average ranks per column, doubled so ties stay integral; the profile is
// exactly invariant under row permutation and positive column rescaling,
// which is what keys the fold shuffle.
std::vector<std::uint64_t> rank_profile_hashes(
    const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
  const std::size_t n = X.size();
  const std::size_t p = n == 0 ? 0 : X[0].size();
  std::vector<std::vector<double>> ranks(n, std::vector<double>(p));
  std::vector<std::size_t> idx(n);
  for (std::size_t j = 0; j < p; ++j) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return X[a][j] < X[b][j];
    });
    std::size_t a = 0;
    while (a < n) {
      std::size_t b = a + 1;
      while (b < n && X[idx[b]][j] == X[idx[a]][j]) ++b;
      const double doubled_rank = static_cast<double>(a + b - 1);
      for (std::size_t k = a; k < b; ++k) ranks[idx[k]][j] = doubled_rank;
      a = b;
    }
  }
  std::vector<std::uint64_t> hashes(n);
  for (std::size_t i = 0; i < n; ++i)
    hashes[i] = row_content_hash(ranks[i], y[i]);
  return hashes;
}

struct Canonical {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
};

Canonical canonical_rows(const std::vector<std::vector<double>>& X,
                         const std::vector<double>& y, std::uint64_t seed) {
  Canonical c;
  for (const std::size_t i : shuffled_order(rank_profile_hashes(X, y), seed)) {
    c.X.push_back(X[i]);
    c.y.push_back(y[i]);
  }
  return c;
}

double held_out_error(const StandardizationStats& stats,
                      const std::vector<double>& beta, double intercept,
                      const std::vector<std::size_t>& retained,
                      const std::vector<std::vector<double>>& rows,
                      const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double score = intercept;
    for (std::size_t j = 0; j < retained.size(); ++j) {
      if (beta[j] == 0.0) continue;
      const std::size_t col = retained[j];
      score += beta[j] * (rows[i][col] - stats.mean[col]) / stats.stdev[col];
    }
    acc += (score - y[i]) * (score - y[i]);
  }
  return acc / static_cast<double>(rows.size());
}

std::vector<std::size_t> retained_columns(const StandardizationStats& stats) {
  std::vector<std::size_t> retained;
  std::size_t next_dropped = 0;
  for (std::size_t j = 0; j < stats.mean.size(); ++j) {
    if (next_dropped < stats.dropped.size() &&
        stats.dropped[next_dropped] == j) {
      ++next_dropped;
      continue;
    }
    retained.push_back(j);
  }
  return retained;
}

}  // namespace

StandardizationStats standardize_fit(
    const std::vector<std::vector<double>>& X) {
  if (X.size() < 2)
    throw std::invalid_argument("standardization needs at least 2 rows");
  const std::size_t n = X.size();
  const std::size_t p = X[0].size();
  StandardizationStats stats;
  stats.mean.assign(p, 0.0);
  stats.stdev.assign(p, 0.0);
  for (const auto& row : X) {
    if (row.size() != p) throw std::invalid_argument("ragged feature matrix");
    for (std::size_t j = 0; j < p; ++j) stats.mean[j] += row[j];
  }
  for (std::size_t j = 0; j < p; ++j)
    stats.mean[j] /= static_cast<double>(n);
  for (const auto& row : X)
    for (std::size_t j = 0; j < p; ++j) {
      const double d = row[j] - stats.mean[j];
      stats.stdev[j] += d * d;
    }
  for (std::size_t j = 0; j < p; ++j) {
    stats.stdev[j] = std::sqrt(stats.stdev[j] / static_cast<double>(n));
    if (stats.stdev[j] < kDropStdev) stats.dropped.push_back(j);
  }
  return stats;
}

std::vector<std::vector<double>> standardize_apply(
    const StandardizationStats& stats,
    const std::vector<std::vector<double>>& X) {
  const std::vector<std::size_t> retained = retained_columns(stats);
  std::vector<std::vector<double>> columns(
      retained.size(), std::vector<double>(X.size()));
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].size() != stats.mean.size())
      throw std::invalid_argument("feature row length mismatch");
    for (std::size_t j = 0; j < retained.size(); ++j) {
      const std::size_t col = retained[j];
      columns[j][i] = (X[i][col] - stats.mean[col]) / stats.stdev[col];
    }
  }
  return columns;
}

CoordinateDescentResult coordinate_descent(
    const std::vector<std::vector<double>>& columns,
    const std::vector<double>& y, double alpha, int max_sweeps, double tol,
    const std::vector<double>* warm_start) {
  const std::size_t n = y.size();
  const std::size_t p = columns.size();
  if (n == 0) throw std::invalid_argument("empty response");
  if (alpha < 0.0) throw std::invalid_argument("negative alpha");
  for (const auto& col : columns)
    if (col.size() != n)
      throw std::invalid_argument("column/response length mismatch");
  for (const double v : y)
    if (!std::isfinite(v)) throw NumericError("non-finite label");
  for (const auto& col : columns)
    for (const double v : col)
      if (!std::isfinite(v)) throw NumericError("non-finite feature value");

  CoordinateDescentResult result;
  result.intercept =
      std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  if (warm_start != nullptr && warm_start->size() != p)
    throw std::invalid_argument("warm start length mismatch");
  result.beta = warm_start != nullptr ? *warm_start : std::vector<double>(p);

  std::vector<double> sumsq(p, 0.0);
  for (std::size_t j = 0; j < p; ++j)
    for (const double v : columns[j]) sumsq[j] += v * v;

  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = y[k] - result.intercept;
  for (std::size_t j = 0; j < p; ++j) {
    if (result.beta[j] == 0.0) continue;
    for (std::size_t k = 0; k < n; ++k) r[k] -= columns[j][k] * result.beta[j];
  }

  const auto update_column = [&](std::size_t j) {
    if (sumsq[j] == 0.0) return 0.0;
    const double z =
        result.beta[j] * sumsq[j] + dot4(columns[j].data(), r.data(), n);
    const double updated = soft_threshold(z, alpha / 2.0) / sumsq[j];
    const double delta = updated - result.beta[j];
    if (delta != 0.0) {
      for (std::size_t k = 0; k < n; ++k) r[k] -= columns[j][k] * delta;
      result.beta[j] = updated;
    }
    return std::abs(delta);
  };
  const auto record_objective = [&] {
    double obj = 0.0;
    for (const double v : r) obj += v * v;
    for (const double b : result.beta) obj += alpha * std::abs(b);
    result.objective.push_back(obj);
  };

  // full sweeps decide convergence; between them, cheap sweeps over the
  // current active set grind its coefficients down without touching the
  // (typically much wider) zero block
  std::vector<std::size_t> active;
  result.converged = false;
  bool full_sweep = true;
  while (result.sweeps < max_sweeps) {
    ++result.sweeps;
    double max_change = 0.0;
    if (full_sweep) {
      active.clear();
      for (std::size_t j = 0; j < p; ++j) {
        max_change = std::max(max_change, update_column(j));
        if (result.beta[j] != 0.0) active.push_back(j);
      }
    } else {
      for (const std::size_t j : active)
        max_change = std::max(max_change, update_column(j));
    }
    record_objective();
    if (max_change < tol) {
      if (full_sweep) {
        result.converged = true;
        break;
      }
      full_sweep = true;  // active set settled; confirm over every column
    } else {
      full_sweep = false;
    }
  }
  return result;
}

double alpha_max(const std::vector<std::vector<double>>& columns,
                 const std::vector<double>& y) {
  const double mean_y =
      std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  std::vector<double> centered(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) centered[k] = y[k] - mean_y;
  double worst = 0.0;
  for (const auto& col : columns)
    worst = std::max(
        worst, std::abs(dot4(col.data(), centered.data(), centered.size())));
  return 2.0 * worst;
}

std::vector<double> alpha_grid(double amax, int size) {
  if (size < 1) throw std::invalid_argument("grid size must be positive");
  if (!(amax > 0.0))
    throw std::invalid_argument("alpha grid needs a positive alpha_max");
  if (size == 1) return {amax};
  std::vector<double> grid(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i)
    grid[static_cast<std::size_t>(i)] =
        amax * std::pow(10.0, -4.0 * (1.0 - static_cast<double>(i) /
                                                static_cast<double>(size - 1)));
  return grid;
}

CrossValidationResult cross_validate_alpha(
    const std::vector<std::vector<double>>& X, const std::vector<double>& y,
    const std::vector<double>& grid, int k, std::uint64_t seed) {
  check_matrix(X, y);
  if (grid.empty()) throw std::invalid_argument("empty alpha grid");
  const Canonical c = canonical_rows(X, y, seed);
  const auto bounds = fold_bounds(c.y.size(), k);

  std::vector<double> errors(grid.size(), 0.0);
  for (const auto& [begin, end] : bounds) {
    std::vector<std::vector<double>> train_rows, test_rows;
    std::vector<double> train_y, test_y;
    for (std::size_t i = 0; i < c.y.size(); ++i) {
      if (i >= begin && i < end) {
        test_rows.push_back(c.X[i]);
        test_y.push_back(c.y[i]);
      } else {
        train_rows.push_back(c.X[i]);
        train_y.push_back(c.y[i]);
      }
    }
    const StandardizationStats stats = standardize_fit(train_rows);
    const auto columns = standardize_apply(stats, train_rows);
    const auto retained = retained_columns(stats);

    std::vector<double> warm(columns.size(), 0.0);
    for (std::size_t g = grid.size(); g-- > 0;) {
      const CoordinateDescentResult fit = coordinate_descent(
          columns, train_y, grid[g], 10000, 1e-8, &warm);
      warm = fit.beta;
      errors[g] += held_out_error(stats, fit.beta, fit.intercept, retained,
                                  test_rows, test_y);
    }
  }

  CrossValidationResult result;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double mean_error = errors[g] / static_cast<double>(bounds.size());
    result.table.emplace_back(grid[g], mean_error);
  }
  double best = result.table[0].second;
  result.alpha = result.table[0].first;
  for (const auto& [alpha, error] : result.table)
    if (error <= best) {
      best = error;
      result.alpha = alpha;  // ties resolve to the larger alpha
    }
  return result;
}

LassoModel train(const std::vector<std::vector<double>>& X,
                 const std::vector<double>& y, const AlgebraParams& params,
                 const TrainConfig& config) {
  check_matrix(X, y);
  if (X.empty()) throw ValidationError("empty training set");
  if (X[0].size() != feature_count(params))
    throw std::invalid_argument("feature length does not match params");
  std::size_t counts[2] = {0, 0};
  for (const double v : y) {
    if (v != 0.0 && v != 1.0)
      throw ValidationError("labels must be 0 or 1 for training");
    ++counts[v == 1.0];
  }
  if (counts[0] < 2 || counts[1] < 2)
    throw ValidationError("training needs at least 2 rows of each class");

  const std::uint64_t fold_seed = derive_seed(config.seed, "folds", 0);
  const Canonical c = canonical_rows(X, y, fold_seed);
  const StandardizationStats stats = standardize_fit(c.X);
  const auto columns = standardize_apply(stats, c.X);

  LassoModel model;
  model.params = params;
  model.dropped = stats.dropped;
  model.retained = retained_columns(stats);
  for (const std::size_t col : model.retained) {
    model.mean.push_back(stats.mean[col]);
    model.stdev.push_back(stats.stdev[col]);
  }

  if (config.alpha_override) {
    model.alpha = *config.alpha_override;
  } else {
    const double amax = alpha_max(columns, c.y);
    const auto grid = alpha_grid(amax, config.grid_size);
    const CrossValidationResult cv =
        cross_validate_alpha(c.X, c.y, grid, config.cv_folds, fold_seed);
    model.alpha = cv.alpha;
    model.cv_table = cv.table;
  }

  const CoordinateDescentResult fit = coordinate_descent(
      columns, c.y, model.alpha, config.max_sweeps, config.tol);
  model.intercept = fit.intercept;
  model.beta = fit.beta;
  model.converged = fit.converged;
  return model;
}

double predict_one(const LassoModel& model, const std::vector<double>& row) {
  if (row.size() != feature_count(model.params))
    throw std::invalid_argument("feature length does not match model");
  double score = model.intercept;
  for (std::size_t j = 0; j < model.retained.size(); ++j) {
    if (model.beta[j] == 0.0) continue;
    score += model.beta[j] * (row[model.retained[j]] - model.mean[j]) /
             model.stdev[j];
  }
  return score;
}

std::vector<double> predict(const LassoModel& model,
                            const std::vector<std::vector<double>>& X) {
  std::vector<double> scores;
  scores.reserve(X.size());
  for (const auto& row : X) scores.push_back(predict_one(model, row));
  return scores;
}

std::vector<std::pair<std::string, double>> top_coefficients(
    const LassoModel& model, std::size_t n) {
  const auto names = all_multi_indices(model.params);
  std::vector<std::size_t> nonzero;
  for (std::size_t j = 0; j < model.beta.size(); ++j)
    if (model.beta[j] != 0.0) nonzero.push_back(j);
  std::stable_sort(nonzero.begin(), nonzero.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(model.beta[a]) > std::abs(model.beta[b]);
                   });
  if (nonzero.size() > n) nonzero.resize(n);
  std::vector<std::pair<std::string, double>> top;
  for (const std::size_t j : nonzero)
    top.emplace_back(dotted(names[model.retained[j]]), model.beta[j]);
  return top;
}

void save_model(const std::string& path, const LassoModel& model) {
  const auto names = all_multi_indices(model.params);
  std::string out;
  out += "width=" + format_int(model.params.width) + "\n";
  out += "depth=" + format_int(model.params.depth) + "\n";
  out += "alpha=" + format_double(model.alpha) + "\n";
  out += "intercept=" + format_double(model.intercept) + "\n";
  out += "dropped=";
  for (std::size_t i = 0; i < model.dropped.size(); ++i) {
    if (i > 0) out += ',';
    out += dotted(names[model.dropped[i]]);
  }
  out += '\n';
  for (std::size_t j = 0; j < model.retained.size(); ++j) {
    out += dotted(names[model.retained[j]]);
    out += ',';
    out += format_double(model.mean[j]);
    out += ',';
    out += format_double(model.stdev[j]);
    out += ',';
    out += format_double(model.beta[j]);
    out += '\n';
  }
  write_file(path, out);
}

LassoModel load_model(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.size() < 5) throw ParseError(path + ": truncated model file");
  const auto expect = [&](std::size_t ln, const std::string& key) {
    const std::string& line = lines[ln];
    if (line.compare(0, key.size() + 1, key + "=") != 0)
      throw ParseError(path + ": expected '" + key + "=' on line " +
                       std::to_string(ln + 1));
    return line.substr(key.size() + 1);
  };

  LassoModel model;
  std::int64_t width = 0, depth = 0;
  if (!try_parse_int(expect(0, "width"), width) || width < 1)
    throw ParseError(path + ": bad width");
  if (!try_parse_int(expect(1, "depth"), depth) || depth < 1)
    throw ParseError(path + ": bad depth");
  model.params = AlgebraParams{static_cast<int>(width),
                               static_cast<int>(depth)};
  if (!try_parse_double(expect(2, "alpha"), model.alpha))
    throw ParseError(path + ": bad alpha");
  if (!try_parse_double(expect(3, "intercept"), model.intercept))
    throw ParseError(path + ": bad intercept");

  const std::string dropped_list = expect(4, "dropped");
  if (!dropped_list.empty())
    for (const auto field : split_fields(dropped_list))
      model.dropped.push_back(
          slot_of(model.params, parse_dotted(field, model.params)) - 1);

  for (std::size_t ln = 5; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const auto fields = split_fields(lines[ln]);
    if (fields.size() != 4)
      throw ParseError(path + ":" + std::to_string(ln + 1) +
                       ": expected 4 fields");
    const std::size_t col =
        slot_of(model.params, parse_dotted(fields[0], model.params)) - 1;
    if (!model.retained.empty() && col <= model.retained.back())
      throw ParseError(path + ": feature lines out of order");
    double mean = 0.0, stdev = 0.0, beta = 0.0;
    if (!try_parse_double(fields[1], mean) ||
        !try_parse_double(fields[2], stdev) ||
        !try_parse_double(fields[3], beta))
      throw ParseError(path + ":" + std::to_string(ln + 1) + ": bad number");
    model.retained.push_back(col);
    model.mean.push_back(mean);
    model.stdev.push_back(stdev);
    model.beta.push_back(beta);
  }
  return model;
}

}  // namespace sigstream
