#include "sigstream/market.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <unordered_map>

#include "sigstream/errors.hpp"
#include "sigstream/textio.hpp"

namespace sigstream {

namespace {

double population_stdev(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (const double x : xs) var += (x - mean) * (x - mean);
  return std::sqrt(var / n);
}

constexpr double kDegenerateStdev = 1e-12;

}  // namespace

std::optional<int> label_from_id(std::string_view id) {
  if (id.size() >= 3 && id[id.size() - 3] == '-' && id[id.size() - 2] == 'L') {
    const char c = id.back();
    if (c == '0') return 0;
    if (c == '1') return 1;
  }
  return std::nullopt;
}

void validate_order_book(const OrderBookStream& s) {
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const OrderBookRow& r = s.rows[i];
    const std::string at = " in stream '" + s.id + "' at t=" +
                           format_double(r.time);
    if (!(r.best_bid > 0.0))
      throw ValidationError("non-positive bid price" + at);
    if (r.best_ask < r.best_bid)
      throw ValidationError("crossed book (ask < bid)" + at);
    if (r.ask_volume < 0.0 || r.bid_volume < 0.0)
      throw ValidationError("negative volume" + at);
    if (i > 0) {
      if (!(r.time > s.rows[i - 1].time))
        throw ValidationError("timestamps not strictly increasing" + at);
      if (r.cum_volume < s.rows[i - 1].cum_volume)
        throw ValidationError("decreasing cumulative volume" + at);
    }
  }
}

std::vector<OrderBookStream> parse_order_book_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || lines[0] != kRawCsvHeader)
    throw ParseError(path + ": expected header '" + kRawCsvHeader + "'");

  std::vector<OrderBookStream> streams;
  std::unordered_map<std::string, std::size_t> index_of;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 7)
      throw ParseError(path + ":" + std::to_string(ln + 1) +
                       ": expected 7 fields, got " +
                       std::to_string(fields.size()));
    if (fields[0].empty())
      throw ParseError(path + ":" + std::to_string(ln + 1) +
                       ": empty stream_id");
    OrderBookRow row;
    double* const slots[6] = {&row.time,       &row.best_ask,
                              &row.best_bid,   &row.ask_volume,
                              &row.bid_volume, &row.cum_volume};
    for (int f = 0; f < 6; ++f) {
      if (!try_parse_double(fields[static_cast<std::size_t>(f) + 1],
                            *slots[f]) ||
          !std::isfinite(*slots[f]))
        throw ParseError(path + ":" + std::to_string(ln + 1) +
                         ": bad number '" +
                         std::string(fields[static_cast<std::size_t>(f) + 1]) +
                         "'");
    }
    const std::string id(fields[0]);
    auto [it, inserted] = index_of.try_emplace(id, streams.size());
    if (inserted)
      streams.push_back(OrderBookStream{id, label_from_id(id), {}});
    streams[it->second].rows.push_back(row);
  }

  for (OrderBookStream& s : streams) {
    std::stable_sort(s.rows.begin(), s.rows.end(),
                     [](const OrderBookRow& a, const OrderBookRow& b) {
                       return a.time < b.time;
                     });
    // equal timestamps collapse to the last occurrence
    std::size_t out = 0;
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      if (out > 0 && s.rows[i].time == s.rows[out - 1].time)
        s.rows[out - 1] = s.rows[i];
      else
        s.rows[out++] = s.rows[i];
    }
    s.rows.resize(out);
    validate_order_book(s);
  }
  return streams;
}

void write_order_book_csv(const std::string& path,
                          const std::vector<OrderBookStream>& streams) {
  std::string out(kRawCsvHeader);
  out += '\n';
  for (const OrderBookStream& s : streams)
    for (const OrderBookRow& r : s.rows) {
      out += s.id;
      out += ',';
      out += format_double(r.time);
      out += ',';
      out += format_double(r.best_ask);
      out += ',';
      out += format_double(r.best_bid);
      out += ',';
      out += format_double(r.ask_volume);
      out += ',';
      out += format_double(r.bid_volume);
      out += ',';
      out += format_double(r.cum_volume);
      out += '\n';
    }
  write_file(path, out);
}

NormalizedStream normalize(const OrderBookStream& s) {
  validate_order_book(s);
  const std::size_t n = s.rows.size();
  if (n < 3)
    throw ValidationError("stream '" + s.id + "' has " + std::to_string(n) +
                          " rows; need at least 3");
  const double t0 = s.rows.front().time;
  const double tN = s.rows.back().time;
  if (!(tN > t0))
    throw ValidationError("stream '" + s.id + "' has zero duration");

  NormalizedStream out;
  out.id = s.id;
  out.label = s.label;
  out.u.resize(n);
  out.p.resize(n);
  out.s.resize(n);
  out.d.resize(n);
  out.c.resize(n);

  std::vector<double> log_mid(n), spread(n);
  for (std::size_t i = 0; i < n; ++i) {
    const OrderBookRow& r = s.rows[i];
    out.u[i] = (r.time - t0) / (tN - t0);
    log_mid[i] = std::log(0.5 * (r.best_ask + r.best_bid));
    spread[i] = r.best_ask - r.best_bid;
    const double total = r.ask_volume + r.bid_volume;
    out.d[i] = total == 0.0 ? 0.0 : (r.ask_volume - r.bid_volume) / total;
  }

  std::vector<double> dlog(n - 1);
  for (std::size_t i = 1; i < n; ++i) dlog[i - 1] = log_mid[i] - log_mid[i - 1];
  const double sd_price = population_stdev(dlog);
  if (sd_price < kDegenerateStdev) {
    out.price_degenerate = true;
  } else {
    for (std::size_t i = 0; i < n; ++i) out.p[i] = log_mid[i] / sd_price;
  }

  const double sd_spread = population_stdev(spread);
  if (sd_spread < kDegenerateStdev) {
    out.spread_degenerate = true;
  } else {
    for (std::size_t i = 0; i < n; ++i) out.s[i] = spread[i] / sd_spread;
  }

  const double c_final = s.rows.back().cum_volume;
  if (c_final == 0.0) {
    out.volume_degenerate = true;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      out.c[i] = s.rows[i].cum_volume / c_final;
  }
  return out;
}

Stream assemble_input(const NormalizedStream& n) {
  Stream base;
  base.times = n.u;
  base.points.resize(n.u.size());
  for (std::size_t i = 0; i < n.u.size(); ++i)
    base.points[i] = {n.u[i], n.p[i], n.s[i], n.d[i], n.c[i]};
  return partial_lead_lag(base, {{2}});
}

FeatureRecord featurize(const Stream& z, int depth) {
  const TruncatedTensor sig = stream_signature(z, depth);
  FeatureRecord record;
  record.features.assign(sig.coeffs.begin() + 1, sig.coeffs.end());
  return record;
}

OrderBookStream slice_bucket(const OrderBookStream& s, double t_start,
                             double t_end) {
  if (!(t_start < t_end))
    throw std::invalid_argument("bucket start must precede end");
  OrderBookStream out;
  out.id = s.id + "@" + format_double(t_start) + "-" + format_double(t_end);
  out.label = s.label;
  for (const OrderBookRow& r : s.rows)
    if (r.time >= t_start && r.time <= t_end) out.rows.push_back(r);
  if (out.rows.size() < 3)
    throw EmptyBucketError("bucket [" + format_double(t_start) + ", " +
                           format_double(t_end) + "] keeps only " +
                           std::to_string(out.rows.size()) +
                           " rows of stream '" + s.id + "'");
  return out;
}

namespace {

struct StreamOutcome {
  bool ok = false;
  FeatureRecord record;
  std::string warning;
  std::exception_ptr failure;
};

StreamOutcome featurize_one(const OrderBookStream& s, int depth) {
  StreamOutcome outcome;
  try {
    const NormalizedStream norm = normalize(s);
    if (norm.price_degenerate || norm.spread_degenerate ||
        norm.volume_degenerate) {
      std::string which;
      if (norm.price_degenerate) which += " price";
      if (norm.spread_degenerate) which += " spread";
      if (norm.volume_degenerate) which += " volume";
      outcome.warning = "stream '" + s.id + "': degenerate channel(s):" +
                        which + " (zero-filled)";
    }
    outcome.record = featurize(assemble_input(norm), depth);
    outcome.record.id = s.id;
    outcome.record.label = s.label;
    outcome.ok = true;
  } catch (const ValidationError& e) {
    outcome.warning = "skipping stream '" + s.id + "': " + e.what();
  } catch (...) {
    outcome.failure = std::current_exception();
  }
  return outcome;
}

}  // namespace

FeaturizeResult featurize_streams(const std::vector<OrderBookStream>& streams,
                                  int depth, int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  std::vector<StreamOutcome> outcomes(streams.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < streams.size(); ++i)
      outcomes[i] = featurize_one(streams[i], depth);
  } else {
    std::atomic<std::size_t> next{0};
    auto run = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= streams.size()) return;
        outcomes[i] = featurize_one(streams[i], depth);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
  }

  FeaturizeResult result;
  result.table.params = AlgebraParams{6, depth};
  for (StreamOutcome& outcome : outcomes) {
    if (outcome.failure) std::rethrow_exception(outcome.failure);
    if (!outcome.warning.empty()) result.warnings.push_back(outcome.warning);
    if (outcome.ok)
      result.table.records.push_back(std::move(outcome.record));
    else
      ++result.skipped;
  }
  return result;
}

void write_feature_csv(const std::string& path, const FeatureTable& table) {
  std::string out = "stream_id,label";
  for (const MultiIndex& index : all_multi_indices(table.params)) {
    out += ",sig_";
    out += dotted(index);
  }
  out += '\n';
  const std::size_t width = feature_count(table.params);
  for (const FeatureRecord& record : table.records) {
    if (record.features.size() != width)
      throw ValidationError("feature row '" + record.id +
                            "' has wrong length");
    out += record.id;
    out += ',';
    if (record.label) out += record.label.value() ? '1' : '0';
    for (const double x : record.features) {
      out += ',';
      out += format_double(x);
    }
    out += '\n';
  }
  write_file(path, out);
}

FeatureTable read_feature_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw ParseError(path + ": empty file");
  const auto header = split_fields(lines[0]);
  if (header.size() < 3 || header[0] != "stream_id" || header[1] != "label")
    throw ParseError(path + ": bad feature header");

  std::size_t depth = 1;
  for (std::size_t f = 2; f < header.size(); ++f) {
    const std::string_view name = header[f];
    if (name.substr(0, 4) != "sig_")
      throw ParseError(path + ": bad feature column '" + std::string(name) +
                       "'");
    const std::string_view body = name.substr(4);
    depth = std::max(depth, 1 + static_cast<std::size_t>(std::count(
                                   body.begin(), body.end(), '.')));
  }
  // degree-1 columns come first, one per channel
  int width = 0;
  for (std::size_t f = 2; f < header.size(); ++f) {
    if (header[f].find('.') != std::string_view::npos) break;
    ++width;
  }
  const AlgebraParams params{width, static_cast<int>(depth)};
  const std::size_t expected = feature_count(params);
  if (header.size() != expected + 2)
    throw ParseError(path + ": feature column count does not match width " +
                     std::to_string(width) + ", depth " +
                     std::to_string(depth));
  const auto canonical = all_multi_indices(params);
  for (std::size_t f = 2; f < header.size(); ++f)
    if (header[f].substr(4) != dotted(canonical[f - 2]))
      throw ParseError(path + ": feature columns not in canonical order at '" +
                       std::string(header[f]) + "'");

  FeatureTable table;
  table.params = params;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const auto fields = split_fields(lines[ln]);
    if (fields.size() != header.size())
      throw ParseError(path + ":" + std::to_string(ln + 1) +
                       ": wrong field count");
    FeatureRecord record;
    record.id = std::string(fields[0]);
    if (!fields[1].empty()) {
      if (fields[1] == "0")
        record.label = 0;
      else if (fields[1] == "1")
        record.label = 1;
      else
        throw ParseError(path + ":" + std::to_string(ln + 1) +
                         ": label must be empty, 0, or 1");
    }
    record.features.resize(expected);
    for (std::size_t f = 0; f < expected; ++f) {
      if (!try_parse_double(fields[f + 2], record.features[f]) ||
          !std::isfinite(record.features[f]))
        throw ParseError(path + ":" + std::to_string(ln + 1) +
                         ": bad number '" + std::string(fields[f + 2]) + "'");
    }
    table.records.push_back(std::move(record));
  }
  return table;
}

}  // namespace sigstream
