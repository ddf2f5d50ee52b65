#include "sigstream/lead_lag.hpp"

#include <stdexcept>

#include "sigstream/errors.hpp"

namespace sigstream {

namespace {

// rule(j) gives the source sample index for doubled index j.
template <typename Rule>
Stream doubled(const Stream& s, Rule rule) {
  validate_stream(s);
  const std::size_t n2 = 2 * (s.points.size() - 1) + 1;
  Stream out;
  out.times.resize(n2);
  out.points.resize(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    out.times[j] = static_cast<double>(j);
    out.points[j] = s.points[rule(j)];
  }
  return out;
}

void check_spec(const Stream& s, const LeadLagSpec& spec) {
  std::vector<bool> seen(s.dimension() + 1, false);
  for (const int ch : spec.lag_channels) {
    if (ch < 1 || static_cast<std::size_t>(ch) > s.dimension())
      throw std::invalid_argument("lag channel out of range");
    if (seen[static_cast<std::size_t>(ch)])
      throw std::invalid_argument("duplicate lag channel");
    seen[static_cast<std::size_t>(ch)] = true;
  }
}

}  // namespace

Stream lead_transform(const Stream& s) {
  // X^lead_j = X_{t_i} for j = 2i and for j = 2i-1
  return doubled(s, [](std::size_t j) { return (j + 1) / 2; });
}

Stream lag_transform(const Stream& s) {
  // X^lag_j = X_{t_i} for j = 2i and for j = 2i+1
  return doubled(s, [](std::size_t j) { return j / 2; });
}

Stream partial_lead_lag(const Stream& s, const LeadLagSpec& spec) {
  validate_stream(s);
  check_spec(s, spec);
  const std::size_t d = s.dimension();
  const std::size_t n2 = 2 * (s.points.size() - 1) + 1;
  Stream out;
  out.times.resize(n2);
  out.points.assign(n2,
                    std::vector<double>(d + spec.lag_channels.size(), 0.0));
  for (std::size_t j = 0; j < n2; ++j) {
    out.times[j] = static_cast<double>(j);
    const std::vector<double>& lead = s.points[(j + 1) / 2];
    const std::vector<double>& lag = s.points[j / 2];
    for (std::size_t ch = 0; ch < d; ++ch) out.points[j][ch] = lead[ch];
    for (std::size_t k = 0; k < spec.lag_channels.size(); ++k)
      out.points[j][d + k] =
          lag[static_cast<std::size_t>(spec.lag_channels[k] - 1)];
  }
  return out;
}

double cross_variation(const Stream& s, int i, int j) {
  validate_stream(s);
  if (i < 1 || static_cast<std::size_t>(i) > s.dimension() || j < 1 ||
      static_cast<std::size_t>(j) > s.dimension())
    throw std::out_of_range("channel out of range");
  const std::size_t ci = static_cast<std::size_t>(i - 1);
  const std::size_t cj = static_cast<std::size_t>(j - 1);
  double acc = 0.0;
  for (std::size_t k = 1; k < s.points.size(); ++k)
    acc += (s.points[k][ci] - s.points[k - 1][ci]) *
           (s.points[k][cj] - s.points[k - 1][cj]);
  return acc;
}

}  // namespace sigstream
