#include "sigstream/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigstream/rng.hpp"
#include "sigstream/textio.hpp"

namespace sigstream {

namespace {

constexpr double kBaseMid = 100.0;
constexpr double kTick = 0.01;
constexpr double kWidenProbability = 0.1;
constexpr double kImbalancePersistence = 0.7;
constexpr double kImbalanceInnovation = 0.3;
constexpr double kImbalanceClip = 0.95;
constexpr double kTotalVolumeBase = 500.0;
constexpr double kTotalVolumeSpread = 0.2;
constexpr double kVolumeScale = 10000.0;
constexpr double kStepSeconds = 60.0;
constexpr double kMidSteepness = 8.0;
constexpr double kEndsSteepness = 2.6;

SplitMix64 channel_rng(const GeneratorConfig& cfg, const char* channel,
                       std::size_t index) {
  return SplitMix64(derive_seed(cfg.seed, channel, index));
}

}  // namespace

std::string_view profile_name(ProfileClass profile) {
  switch (profile) {
    case ProfileClass::front_loaded:
      return "front_loaded";
    case ProfileClass::back_loaded:
      return "back_loaded";
    case ProfileClass::mid_loaded:
      return "mid_loaded";
    case ProfileClass::front_and_back_loaded:
      return "front_and_back_loaded";
    case ProfileClass::flat:
      return "flat";
  }
  throw std::invalid_argument("unknown profile class");
}

std::optional<ProfileClass> parse_profile(std::string_view name) {
  for (const ProfileClass p :
       {ProfileClass::front_loaded, ProfileClass::back_loaded,
        ProfileClass::mid_loaded, ProfileClass::front_and_back_loaded,
        ProfileClass::flat})
    if (name == profile_name(p)) return p;
  return std::nullopt;
}

double base_profile(ProfileClass profile, double u) {
  switch (profile) {
    case ProfileClass::front_loaded:
      return std::sqrt(u);
    case ProfileClass::back_loaded:
      return u * u;
    case ProfileClass::mid_loaded: {
      const double k = kMidSteepness;
      return (std::tanh(k * (u - 0.5)) + std::tanh(k / 2.0)) /
             (2.0 * std::tanh(k / 2.0));
    }
    case ProfileClass::front_and_back_loaded: {
      const double k = kEndsSteepness;
      return 0.5 * (1.0 + std::tan(k * (u - 0.5)) / std::tan(k / 2.0));
    }
    case ProfileClass::flat:
      return u;
  }
  throw std::invalid_argument("unknown profile class");
}

OrderBookStream generate_stream(const GeneratorConfig& cfg,
                                std::size_t index) {
  if (cfg.n_points < 3)
    throw std::invalid_argument("generate_stream: n_points must be >= 3");
  if (cfg.noise_level < 0.0 || cfg.price_vol < 0.0)
    throw std::invalid_argument(
        "generate_stream: noise_level and price_vol must be >= 0");

  const std::size_t n = cfg.n_points;
  SplitMix64 volume_rng = channel_rng(cfg, "volume", index);
  SplitMix64 price_rng = channel_rng(cfg, "price", index);
  SplitMix64 spread_rng = channel_rng(cfg, "spread", index);
  SplitMix64 imbalance_rng = channel_rng(cfg, "imbalance", index);
  SplitMix64 total_rng = channel_rng(cfg, "total", index);

  // perturbed profile increments, renormalized so the path still ends at 1
  std::vector<double> increments(n - 1);
  double total_increment = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double u0 = static_cast<double>(i) / static_cast<double>(n - 1);
    const double u1 =
        static_cast<double>(i + 1) / static_cast<double>(n - 1);
    double step =
        base_profile(cfg.profile_class, u1) - base_profile(cfg.profile_class, u0);
    if (cfg.noise_level > 0.0)
      step *= std::exp(cfg.noise_level * volume_rng.normal() -
                       cfg.noise_level * cfg.noise_level / 2.0);
    increments[i] = step;
    total_increment += step;
  }

  OrderBookStream stream;
  stream.id = std::string(profile_name(cfg.profile_class)) + "-s" +
              format_int(static_cast<std::int64_t>(cfg.seed)) + "-" +
              format_int(static_cast<std::int64_t>(index));
  stream.rows.resize(n);

  double cum = 0.0;
  double log_mid = std::log(kBaseMid);
  double imbalance = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      cum += increments[i - 1] / total_increment;
      log_mid += cfg.price_vol * price_rng.normal();
    }
    const double mid = std::exp(log_mid);
    const double spread =
        kTick * (spread_rng.uniform() < kWidenProbability ? 2.0 : 1.0);
    imbalance = std::clamp(
        kImbalancePersistence * imbalance +
            kImbalanceInnovation * imbalance_rng.normal(),
        -kImbalanceClip, kImbalanceClip);
    const double total =
        kTotalVolumeBase * std::exp(kTotalVolumeSpread * total_rng.normal());

    OrderBookRow& row = stream.rows[i];
    row.time = kStepSeconds * static_cast<double>(i);
    row.best_bid = mid - spread / 2.0;
    row.best_ask = mid + spread / 2.0;
    row.ask_volume = total * (1.0 + imbalance) / 2.0;
    row.bid_volume = total * (1.0 - imbalance) / 2.0;
    row.cum_volume = kVolumeScale * cum;
  }
  validate_order_book(stream);
  return stream;
}

std::vector<OrderBookStream> generate_dataset(const GeneratorConfig& cfg_a,
                                              const GeneratorConfig& cfg_b) {
  std::vector<OrderBookStream> streams;
  streams.reserve(cfg_a.count + cfg_b.count);
  for (int label = 0; label < 2; ++label) {
    const GeneratorConfig& cfg = label == 0 ? cfg_a : cfg_b;
    // class-b indices continue after class-a's, so identical configs still
    // draw disjoint streams (the null experiment stays meaningful)
    const std::size_t offset = label == 0 ? 0 : cfg_a.count;
    for (std::size_t i = 0; i < cfg.count; ++i) {
      OrderBookStream s = generate_stream(cfg, offset + i);
      s.id += label == 0 ? "-L0" : "-L1";
      s.label = label;
      streams.push_back(std::move(s));
    }
  }
  return streams;
}

}  // namespace sigstream
