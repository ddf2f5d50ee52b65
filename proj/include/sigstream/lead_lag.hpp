#pragma once

#include <vector>

#include "sigstream/signature.hpp"

namespace sigstream {

// Channels (1-based) whose lagged copies are appended after the lead block.
struct LeadLagSpec {
  std::vector<int> lag_channels;
};

// Point-doubling transforms; outputs carry synthetic timestamps 0..2N.
// lead: [x0, x1, x1, x2, x2, ...]   lag: [x0, x0, x1, x1, x2, ...]
Stream lead_transform(const Stream& s);
Stream lag_transform(const Stream& s);

// (d + |lag_channels|)-dimensional stream: lead of every channel, then the
// lag of each selected channel, index-aligned.
Stream partial_lead_lag(const Stream& s, const LeadLagSpec& spec);

// Quadratic cross-variation sum of Delta x^i * Delta x^j over increments;
// the independent oracle for the lead-lag signature identity.
double cross_variation(const Stream& s, int i, int j);

}  // namespace sigstream
