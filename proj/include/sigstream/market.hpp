#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigstream/lead_lag.hpp"

namespace sigstream {

struct OrderBookRow {
  double time = 0.0;
  double best_ask = 0.0;
  double best_bid = 0.0;
  double ask_volume = 0.0;
  double bid_volume = 0.0;
  double cum_volume = 0.0;
};

// Level-one book stream.  A trailing "-L0"/"-L1" in the id carries the class
// label through the raw CSV format, which has no label column.
struct OrderBookStream {
  std::string id;
  std::optional<int> label;
  std::vector<OrderBookRow> rows;
};

inline constexpr const char* kRawCsvHeader =
    "stream_id,timestamp,best_ask,best_bid,ask_volume,bid_volume,cum_volume";

std::optional<int> label_from_id(std::string_view id);

// Validates row invariants (ask >= bid > 0, volumes >= 0, cum_volume
// non-decreasing, strictly increasing times); throws ValidationError.
void validate_order_book(const OrderBookStream& s);

// Streams grouped by id (first-appearance order), rows time-sorted with
// duplicate timestamps collapsed to the last occurrence.
std::vector<OrderBookStream> parse_order_book_csv(const std::string& path);

void write_order_book_csv(const std::string& path,
                          const std::vector<OrderBookStream>& streams);

// The normalized channels; a degenerate channel is identically zero with its
// flag set instead of failing the stream.
struct NormalizedStream {
  std::string id;
  std::optional<int> label;
  std::vector<double> u, p, s, d, c;
  bool price_degenerate = false;
  bool spread_degenerate = false;
  bool volume_degenerate = false;
};

// u affine to [0,1]; p = log mid-price scaled so StDev(delta p) = 1;
// s = spread scaled so StDev(s) = 1; d = (Va-Vb)/(Va+Vb); c = C/C_N.
// Population standard deviations throughout; needs >= 3 rows.
NormalizedStream normalize(const OrderBookStream& s);

// 6-dim input stream (u,p,s,d,c) lead-transformed with the lagged copy of p
// appended: channels u,p,s,d,c,p_lag over 2N+1 points.
Stream assemble_input(const NormalizedStream& n);

struct FeatureRecord {
  std::string id;
  std::optional<int> label;
  std::vector<double> features;
};

// Depth-m signature coefficients of the assembled stream, degree-0 dropped;
// id/label left for the caller to fill.
FeatureRecord featurize(const Stream& z, int depth = 4);

// Rows with t_start <= t <= t_end; throws EmptyBucketError below 3 rows.
OrderBookStream slice_bucket(const OrderBookStream& s, double t_start,
                             double t_end);

struct FeatureTable {
  AlgebraParams params;
  std::vector<FeatureRecord> records;
};

struct FeaturizeResult {
  FeatureTable table;
  std::vector<std::string> warnings;  // one per skipped/flagged stream
  std::size_t skipped = 0;
};

// Normalize + assemble + featurize per stream; invalid streams are skipped
// with a warning.  Parallel across streams, results in input order.
FeaturizeResult featurize_streams(const std::vector<OrderBookStream>& streams,
                                  int depth, int workers);

// Header: stream_id,label,sig_<dotted multi-index>... in canonical order.
void write_feature_csv(const std::string& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::string& path);

}  // namespace sigstream
