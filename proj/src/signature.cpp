#include "sigstream/signature.hpp"

#include <cmath>
#include <stdexcept>

#include "sigstream/errors.hpp"
#include "sigstream/rng.hpp"

namespace sigstream {

void validate_stream(const Stream& s) {
  if (s.points.size() < 2)
    throw ValidationError("stream needs at least 2 points");
  if (s.times.size() != s.points.size())
    throw ValidationError("stream times/points length mismatch");
  const std::size_t d = s.points[0].size();
  if (d == 0) throw ValidationError("stream points must have dimension >= 1");
  for (const auto& p : s.points)
    if (p.size() != d)
      throw ValidationError("stream points have mixed dimensions");
  for (std::size_t i = 1; i < s.times.size(); ++i)
    if (!(s.times[i] > s.times[i - 1]))
      throw ValidationError("stream times must be strictly increasing");
}

TruncatedTensor stream_signature(const Stream& s, int depth) {
  validate_stream(s);
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const AlgebraParams params{static_cast<int>(s.dimension()), depth};
  const std::size_t d = s.dimension();
  std::vector<double> delta(d);
  TruncatedTensor sig = unit_tensor(params);
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    for (std::size_t ch = 0; ch < d; ++ch)
      delta[ch] = s.points[i][ch] - s.points[i - 1][ch];
    concat_inplace(sig, exp_of_increment(delta, params));
  }
  return sig;
}

double area(const TruncatedTensor& t, int i, int j) {
  if (i == j) throw std::domain_error("area needs two distinct channels");
  if (t.params.depth < 2)
    throw std::domain_error("area needs depth >= 2");
  return 0.5 * (get_coefficient(t, {i, j}) - get_coefficient(t, {j, i}));
}

double second_order_area(const TruncatedTensor& t, int i, int j) {
  if (i == j)
    throw std::domain_error("second_order_area needs two distinct channels");
  if (t.params.depth < 3)
    throw std::domain_error("second_order_area needs depth >= 3");
  return 0.5 *
         (get_coefficient(t, {i, i, j}) - get_coefficient(t, {i, j, i}));
}

Stream insert_collinear_points(const Stream& s, int count,
                               std::uint64_t seed) {
  validate_stream(s);
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  Stream out = s;
  SplitMix64 rng(seed);
  const std::size_t d = s.dimension();
  for (int n = 0; n < count; ++n) {
    const std::size_t seg = rng.below(out.points.size() - 1);
    double t;
    do {
      const double u = rng.uniform();
      t = out.times[seg] + u * (out.times[seg + 1] - out.times[seg]);
    } while (!(t > out.times[seg] && t < out.times[seg + 1]));
    const double w =
        (t - out.times[seg]) / (out.times[seg + 1] - out.times[seg]);
    std::vector<double> point(d);
    for (std::size_t ch = 0; ch < d; ++ch)
      point[ch] = out.points[seg][ch] +
                  w * (out.points[seg + 1][ch] - out.points[seg][ch]);
    out.times.insert(out.times.begin() + static_cast<std::ptrdiff_t>(seg) + 1,
                     t);
    out.points.insert(
        out.points.begin() + static_cast<std::ptrdiff_t>(seg) + 1,
        std::move(point));
  }
  return out;
}

}  // namespace sigstream
