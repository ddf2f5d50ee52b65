#pragma once

#include <cstdint>
#include <vector>

#include "sigstream/tensor_algebra.hpp"

namespace sigstream {

// Time-stamped points in R^d.  Only the ordered points influence signatures;
// timestamps matter to bucketing and the lead/lag constructions.
struct Stream {
  std::vector<double> times;
  std::vector<std::vector<double>> points;

  std::size_t dimension() const { return points.empty() ? 0 : points[0].size(); }
  std::size_t size() const { return points.size(); }
};

// Throws ValidationError unless: >= 2 points, strictly increasing times,
// matching lengths, uniform dimension >= 1.
void validate_stream(const Stream& s);

// Depth-m signature of the piecewise-linear interpolant: left-to-right
// concatenation of segment exponentials.
TruncatedTensor stream_signature(const Stream& s, int depth);

// Signed area between the (i,j) projection and its chord:
// (t[(i,j)] - t[(j,i)]) / 2.
double area(const TruncatedTensor& t, int i, int j);

// (t[(i,i,j)] - t[(i,j,i)]) / 2; the area of the running-area curve.
double second_order_area(const TruncatedTensor& t, int i, int j);

// Same piecewise-linear image with `count` extra points dropped uniformly at
// random onto randomly chosen segments; signature-preserving by construction.
Stream insert_collinear_points(const Stream& s, int count, std::uint64_t seed);

}  // namespace sigstream
