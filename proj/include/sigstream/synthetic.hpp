#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigstream/market.hpp"

namespace sigstream {

enum class ProfileClass {
  front_loaded,
  back_loaded,
  mid_loaded,
  front_and_back_loaded,
  flat,
};

std::string_view profile_name(ProfileClass profile);
std::optional<ProfileClass> parse_profile(std::string_view name);

struct GeneratorConfig {
  ProfileClass profile_class = ProfileClass::flat;
  std::size_t n_points = 60;
  double noise_level = 0.3;
  double price_vol = 0.001;
  std::uint64_t seed = 0;
  std::size_t count = 1;
};

// Cumulative volume fraction traded by normalized time u in [0,1];
// increasing, 0 at u=0, 1 at u=1.
double base_profile(ProfileClass profile, double u);

// One stream of n_points rows at 60-second spacing.  Cumulative volume
// follows the class profile with multiplicative log-normal perturbation of
// the increments (renormalized, so it is non-decreasing by construction);
// mid-price is a log random walk, spread a tick with occasional widening,
// imbalance a clipped AR(1).  Deterministic in (seed, index); the id is
// "<profile>-s<seed>-<index>" without a label suffix.
OrderBookStream generate_stream(const GeneratorConfig& cfg, std::size_t index);

// cfg_a.count streams labeled 0 followed by cfg_b.count labeled 1, ids
// suffixed "-L0"/"-L1".  Class-b streams use indices cfg_a.count onward, so
// two identical configs give disjoint draws rather than duplicates.
std::vector<OrderBookStream> generate_dataset(const GeneratorConfig& cfg_a,
                                              const GeneratorConfig& cfg_b);

}  // namespace sigstream
