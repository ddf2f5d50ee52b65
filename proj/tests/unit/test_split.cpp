#include "sigstream/split.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sigstream/errors.hpp"
#include "sigstream/rng.hpp"

using namespace sigstream;

namespace {

struct Rows {
  std::vector<std::vector<double>> features;
  std::vector<double> labels;
};

Rows random_rows(std::uint64_t seed, std::size_t n, std::size_t width) {
  SplitMix64 rng(seed);
  Rows rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(width);
    for (double& x : row) x = rng.uniform(-1.0, 1.0);
    rows.features.push_back(std::move(row));
    rows.labels.push_back(static_cast<double>(rng.below(2)));
  }
  return rows;
}

Rows permuted(const Rows& rows, std::uint64_t seed) {
  std::vector<std::size_t> perm(rows.features.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  SplitMix64 rng(seed);
  shuffle(perm, rng);
  Rows out;
  for (const std::size_t i : perm) {
    out.features.push_back(rows.features[i]);
    out.labels.push_back(rows.labels[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("content hash keys on features and label") {
  const std::vector<double> a = {0.25, -1.5, 3.0};
  const std::vector<double> b = {0.25, -1.5, 3.0000001};
  CHECK(row_content_hash(a, 0.0) == row_content_hash(a, 0.0));
  CHECK(row_content_hash(a, 0.0) != row_content_hash(a, 1.0));
  CHECK(row_content_hash(a, 0.0) != row_content_hash(b, 0.0));
}

TEST_CASE("shuffled order visits the same contents under permutation") {
  const Rows rows = random_rows(21, 60, 5);
  const Rows moved = permuted(rows, 99);
  const auto order1 =
      shuffled_order(content_hashes(rows.features, rows.labels), 7);
  const auto order2 =
      shuffled_order(content_hashes(moved.features, moved.labels), 7);
  REQUIRE(order1.size() == order2.size());
  for (std::size_t j = 0; j < order1.size(); ++j) {
    CHECK(rows.features[order1[j]] == moved.features[order2[j]]);
    CHECK(rows.labels[order1[j]] == moved.labels[order2[j]]);
  }
}

TEST_CASE("shuffled order is a permutation and varies with the seed") {
  const Rows rows = random_rows(22, 40, 3);
  const auto hashes = content_hashes(rows.features, rows.labels);
  const auto order1 = shuffled_order(hashes, 1);
  const auto order2 = shuffled_order(hashes, 2);
  CHECK(std::set<std::size_t>(order1.begin(), order1.end()).size() == 40);
  CHECK(order1 != order2);
  CHECK(order1 == shuffled_order(hashes, 1));
}

TEST_CASE("stratified split hits the per-class targets") {
  const Rows rows = random_rows(23, 101, 4);
  const auto hashes = content_hashes(rows.features, rows.labels);
  std::vector<int> labels;
  for (const double y : rows.labels) labels.push_back(static_cast<int>(y));
  const SplitIndices split = stratified_split(hashes, labels, 0.75, 5);

  std::size_t n1 = 0;
  for (const int y : labels) n1 += static_cast<std::size_t>(y);
  const std::size_t n0 = labels.size() - n1;
  std::size_t learn0 = 0, learn1 = 0;
  for (const std::size_t i : split.learn)
    (labels[i] == 1 ? learn1 : learn0)++;
  CHECK(learn0 ==
        static_cast<std::size_t>(std::llround(0.75 * static_cast<double>(n0))));
  CHECK(learn1 ==
        static_cast<std::size_t>(std::llround(0.75 * static_cast<double>(n1))));
  CHECK(split.learn.size() + split.test.size() == labels.size());

  std::set<std::size_t> seen(split.learn.begin(), split.learn.end());
  seen.insert(split.test.begin(), split.test.end());
  CHECK(seen.size() == labels.size());
}

TEST_CASE("stratified split is permutation invariant in content") {
  const Rows rows = random_rows(24, 50, 4);
  const Rows moved = permuted(rows, 17);
  std::vector<int> labels1, labels2;
  for (const double y : rows.labels) labels1.push_back(static_cast<int>(y));
  for (const double y : moved.labels) labels2.push_back(static_cast<int>(y));
  const SplitIndices s1 = stratified_split(
      content_hashes(rows.features, rows.labels), labels1, 0.6, 3);
  const SplitIndices s2 = stratified_split(
      content_hashes(moved.features, moved.labels), labels2, 0.6, 3);
  REQUIRE(s1.learn.size() == s2.learn.size());
  for (std::size_t j = 0; j < s1.learn.size(); ++j)
    CHECK(rows.features[s1.learn[j]] == moved.features[s2.learn[j]]);
  for (std::size_t j = 0; j < s1.test.size(); ++j)
    CHECK(rows.features[s1.test[j]] == moved.features[s2.test[j]]);
}

TEST_CASE("stratified split validates its inputs") {
  const std::vector<std::uint64_t> hashes = {1, 2, 3};
  CHECK_THROWS_AS(stratified_split(hashes, {0, 1}, 0.75, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(stratified_split(hashes, {0, 1, 2}, 0.75, 1),
                  ValidationError);
  CHECK_THROWS_AS(stratified_split(hashes, {0, 1, 1}, 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(stratified_split(hashes, {0, 1, 1}, 0.0, 1),
                  std::invalid_argument);
}

TEST_CASE("fold bounds partition contiguously") {
  const auto even = fold_bounds(10, 5);
  REQUIRE(even.size() == 5);
  for (std::size_t f = 0; f < 5; ++f) {
    CHECK(even[f].first == 2 * f);
    CHECK(even[f].second == 2 * f + 2);
  }

  const auto uneven = fold_bounds(11, 5);
  CHECK(uneven[0] == std::pair<std::size_t, std::size_t>{0, 3});
  CHECK(uneven[1] == std::pair<std::size_t, std::size_t>{3, 5});
  CHECK(uneven[4] == std::pair<std::size_t, std::size_t>{9, 11});

  CHECK_THROWS_AS(fold_bounds(10, 1), std::invalid_argument);
  CHECK_THROWS_AS(fold_bounds(3, 5), std::invalid_argument);
}
