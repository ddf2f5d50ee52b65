#include "sigstream/split.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sigstream/errors.hpp"
#include "sigstream/rng.hpp"

namespace sigstream {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void mix_u64(std::uint64_t& h, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= (v >> (8 * b)) & 0xFF;
    h *= kFnvPrime;
  }
}

}  // namespace

std::uint64_t row_content_hash(const std::vector<double>& features,
                               double label) {
  std::uint64_t h = kFnvOffset;
  for (const double x : features) mix_u64(h, std::bit_cast<std::uint64_t>(x));
  mix_u64(h, std::bit_cast<std::uint64_t>(label));
  return h;
}

std::vector<std::uint64_t> content_hashes(
    const std::vector<std::vector<double>>& rows,
    const std::vector<double>& labels) {
  if (rows.size() != labels.size())
    throw std::invalid_argument("rows/labels length mismatch");
  std::vector<std::uint64_t> hashes(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    hashes[i] = row_content_hash(rows[i], labels[i]);
  return hashes;
}

std::vector<std::size_t> shuffled_order(
    const std::vector<std::uint64_t>& hashes, std::uint64_t seed) {
  std::vector<std::size_t> order(hashes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return hashes[a] < hashes[b];
                   });
  SplitMix64 rng(seed);
  shuffle(order, rng);
  return order;
}

SplitIndices stratified_split(const std::vector<std::uint64_t>& hashes,
                              const std::vector<int>& labels, double ratio,
                              std::uint64_t seed) {
  if (hashes.size() != labels.size())
    throw std::invalid_argument("hashes/labels length mismatch");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("split ratio must lie in (0,1)");
  std::size_t counts[2] = {0, 0};
  for (const int label : labels) {
    if (label != 0 && label != 1)
      throw ValidationError("labels must be 0 or 1 for a stratified split");
    ++counts[label];
  }
  std::size_t targets[2];
  for (int c = 0; c < 2; ++c)
    targets[c] = static_cast<std::size_t>(
        std::llround(ratio * static_cast<double>(counts[c])));

  SplitIndices split;
  std::size_t taken[2] = {0, 0};
  for (const std::size_t i : shuffled_order(hashes, seed)) {
    const int c = labels[i];
    if (taken[c] < targets[c]) {
      split.learn.push_back(i);
      ++taken[c];
    } else {
      split.test.push_back(i);
    }
  }
  return split;
}

std::vector<std::pair<std::size_t, std::size_t>> fold_bounds(std::size_t n,
                                                             int k) {
  if (k < 2) throw std::invalid_argument("need at least 2 folds");
  if (static_cast<std::size_t>(k) > n)
    throw std::invalid_argument("more folds than rows");
  std::vector<std::pair<std::size_t, std::size_t>> bounds;
  const std::size_t base = n / static_cast<std::size_t>(k);
  const std::size_t extra = n % static_cast<std::size_t>(k);
  std::size_t begin = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t size = base + (static_cast<std::size_t>(f) < extra);
    bounds.emplace_back(begin, begin + size);
    begin += size;
  }
  return bounds;
}

}  // namespace sigstream
