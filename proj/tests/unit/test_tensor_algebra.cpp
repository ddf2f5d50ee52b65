#include "sigstream/tensor_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "sigstream/rng.hpp"

using namespace sigstream;

namespace {

TruncatedTensor random_tensor(const AlgebraParams& p, SplitMix64& rng) {
  TruncatedTensor t = zero_tensor(p);
  for (double& c : t.coeffs) c = rng.uniform(-1.0, 1.0);
  return t;
}

// Group-like element: product of a few segment exponentials.
TruncatedTensor random_grouplike(const AlgebraParams& p, SplitMix64& rng,
                                 int segments) {
  TruncatedTensor t = unit_tensor(p);
  for (int s = 0; s < segments; ++s) {
    std::vector<double> v(static_cast<std::size_t>(p.width));
    for (double& x : v) x = rng.uniform(-0.5, 0.5);
    concat_inplace(t, exp_of_increment(v, p));
  }
  return t;
}

double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
  return worst;
}

}  // namespace

TEST_CASE("feature counts") {
  CHECK(feature_count({6, 4}) == 1554);
  CHECK(feature_count({2, 2}) == 6);
  CHECK(feature_count({1, 3}) == 3);
  CHECK(tensor_size({6, 4}) == 1555);
  CHECK_THROWS_AS(feature_count({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(feature_count({2, 0}), std::invalid_argument);
}

TEST_CASE("canonical layout round-trips") {
  const AlgebraParams p{3, 4};
  for (std::size_t slot = 0; slot < tensor_size(p); ++slot)
    CHECK(slot_of(p, multi_index_at(p, slot)) == slot);
  CHECK(slot_of(p, {}) == 0);
  CHECK(slot_of(p, {1}) == 1);
  CHECK(slot_of(p, {3}) == 3);
  CHECK(slot_of(p, {1, 1}) == 4);
  // degree ascending, then lexicographic
  const auto indices = all_multi_indices(p);
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const auto& a = indices[i - 1];
    const auto& b = indices[i];
    const bool ordered =
        a.size() < b.size() || (a.size() == b.size() && a < b);
    CHECK(ordered);
  }
}

TEST_CASE("dotted rendering") {
  CHECK(dotted({1, 5, 1, 5}) == "1.5.1.5");
  CHECK(dotted({2}) == "2");
  const AlgebraParams p{6, 4};
  CHECK(parse_dotted("1.5.1.5", p) == MultiIndex{1, 5, 1, 5});
  CHECK_THROWS(parse_dotted("1.7", p));
  CHECK_THROWS(parse_dotted("1.2.3.4.5", p));
  CHECK_THROWS(parse_dotted("x", p));
}

TEST_CASE("exp_of_increment closed forms") {
  const AlgebraParams p{2, 2};
  const TruncatedTensor t = exp_of_increment({1.0, 2.0}, p);
  CHECK(get_coefficient(t, {}) == 1.0);
  CHECK(get_coefficient(t, {1}) == 1.0);
  CHECK(get_coefficient(t, {2}) == 2.0);
  CHECK(get_coefficient(t, {1, 1}) == 0.5);
  CHECK(get_coefficient(t, {1, 2}) == 1.0);
  CHECK(get_coefficient(t, {2, 1}) == 1.0);
  CHECK(get_coefficient(t, {2, 2}) == 2.0);

  CHECK(max_abs_diff(exp_of_increment({0.0, 0.0}, p), unit_tensor(p)) == 0.0);

  const TruncatedTensor s = exp_of_increment({3.0}, {1, 3});
  CHECK(get_coefficient(s, {1}) == 3.0);
  CHECK(get_coefficient(s, {1, 1}) == 4.5);
  CHECK(get_coefficient(s, {1, 1, 1}) == 4.5);

  CHECK_THROWS_AS(exp_of_increment({1.0}, p), std::invalid_argument);
}

TEST_CASE("concat product worked example") {
  const AlgebraParams p{2, 2};
  const TruncatedTensor t = concat_product(exp_of_increment({1.0, 0.0}, p),
                                           exp_of_increment({0.0, 1.0}, p));
  CHECK(get_coefficient(t, {}) == 1.0);
  CHECK(get_coefficient(t, {1}) == 1.0);
  CHECK(get_coefficient(t, {2}) == 1.0);
  CHECK(get_coefficient(t, {1, 1}) == 0.5);
  CHECK(get_coefficient(t, {1, 2}) == 1.0);
  CHECK(get_coefficient(t, {2, 1}) == 0.0);
  CHECK(get_coefficient(t, {2, 2}) == 0.5);
}

TEST_CASE("unit is a two-sided identity") {
  SplitMix64 rng(11);
  for (int d = 1; d <= 4; ++d)
    for (int m = 1; m <= 4; ++m) {
      const AlgebraParams p{d, m};
      const TruncatedTensor t = random_tensor(p, rng);
      CHECK(max_abs_diff(concat_product(unit_tensor(p), t), t) == 0.0);
      CHECK(max_abs_diff(concat_product(t, unit_tensor(p)), t) == 0.0);
    }
}

TEST_CASE("group inverse of a linear segment") {
  const AlgebraParams p{3, 4};
  SplitMix64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> v(3);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    std::vector<double> w = {-v[0], -v[1], -v[2]};
    const TruncatedTensor t =
        concat_product(exp_of_increment(v, p), exp_of_increment(w, p));
    CHECK(max_abs_diff(t, unit_tensor(p)) <= 1e-12);
  }
}

TEST_CASE("associativity on random tensors") {
  SplitMix64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const AlgebraParams p{static_cast<int>(rng.below(4)) + 1,
                          static_cast<int>(rng.below(4)) + 1};
    const TruncatedTensor a = random_tensor(p, rng);
    const TruncatedTensor b = random_tensor(p, rng);
    const TruncatedTensor c = random_tensor(p, rng);
    CHECK(max_abs_diff(concat_product(a, concat_product(b, c)),
                       concat_product(concat_product(a, b), c)) <= 1e-12);
  }
}

TEST_CASE("params mismatch rejected") {
  const TruncatedTensor a = unit_tensor({2, 2});
  const TruncatedTensor b = unit_tensor({2, 3});
  CHECK_THROWS_AS(concat_product(a, b), std::invalid_argument);
}

TEST_CASE("log of exp is the increment") {
  SplitMix64 rng(14);
  for (int rep = 0; rep < 50; ++rep) {
    const AlgebraParams p{static_cast<int>(rng.below(4)) + 1,
                          static_cast<int>(rng.below(4)) + 1};
    std::vector<double> v(static_cast<std::size_t>(p.width));
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    const TruncatedTensor lg = log(exp_of_increment(v, p));
    for (std::size_t slot = 0; slot < tensor_size(p); ++slot) {
      const MultiIndex index = multi_index_at(p, slot);
      const double expected =
          index.size() == 1 ? v[static_cast<std::size_t>(index[0] - 1)] : 0.0;
      CHECK(std::abs(lg.coeffs[slot] - expected) <= 1e-12);
    }
  }
}

TEST_CASE("log of unit is zero") {
  const AlgebraParams p{3, 3};
  CHECK(max_abs_diff(log(unit_tensor(p)), zero_tensor(p)) == 0.0);
}

TEST_CASE("log rejects and renormalizes heads") {
  const AlgebraParams p{2, 2};
  TruncatedTensor t = exp_of_increment({1.0, 2.0}, p);
  t.coeffs[0] = 1.5;
  CHECK_THROWS_AS(log(t), std::domain_error);
  for (double& c : t.coeffs) c *= (1.0 + 5e-10);  // head within 1e-9 of 1
  t.coeffs[0] = 1.0 + 5e-10;
  const TruncatedTensor lg = log(t);
  CHECK(std::abs(get_coefficient(lg, {1}) - 1.0) <= 1e-9);
  CHECK(std::abs(get_coefficient(lg, {2}) - 2.0) <= 1e-9);
}

TEST_CASE("log of right-then-up signature gives the area generator") {
  const AlgebraParams p{2, 2};
  const TruncatedTensor sig = concat_product(exp_of_increment({1.0, 0.0}, p),
                                             exp_of_increment({0.0, 1.0}, p));
  const TruncatedTensor lg = log(sig);
  CHECK(get_coefficient(lg, {1}) == 1.0);
  CHECK(get_coefficient(lg, {2}) == 1.0);
  CHECK(get_coefficient(lg, {1, 1}) == 0.0);
  CHECK(get_coefficient(lg, {2, 2}) == 0.0);
  CHECK(get_coefficient(lg, {1, 2}) == 0.5);
  CHECK(get_coefficient(lg, {2, 1}) == -0.5);
}

TEST_CASE("shuffle product enumerations") {
  const AlgebraParams p{3, 4};
  CHECK(shuffle_product({1}, {2}, p) ==
        std::vector<MultiIndex>{{1, 2}, {2, 1}});
  CHECK(shuffle_product({1}, {1}, p) ==
        std::vector<MultiIndex>{{1, 1}, {1, 1}});
  CHECK(shuffle_product({1}, {2, 3}, p) ==
        std::vector<MultiIndex>{{1, 2, 3}, {2, 1, 3}, {2, 3, 1}});
  CHECK(shuffle_product({}, {2, 3}, p) == std::vector<MultiIndex>{{2, 3}});
  CHECK_THROWS_AS(shuffle_product({1, 2, 3}, {1, 2}, p),
                  std::invalid_argument);
}

TEST_CASE("shuffle identity on group-like tensors") {
  SplitMix64 rng(15);
  for (int rep = 0; rep < 10; ++rep) {
    const AlgebraParams p{static_cast<int>(rng.below(3)) + 2, 4};
    const TruncatedTensor t = random_grouplike(p, rng, 5);
    const auto indices = all_multi_indices({p.width, 3});
    for (const auto& I : indices)
      for (const auto& J : indices) {
        if (I.size() + J.size() > 4) continue;
        double sum = 0.0;
        for (const auto& K : shuffle_product(I, J, p))
          sum += get_coefficient(t, K);
        const double prod = get_coefficient(t, I) * get_coefficient(t, J);
        CHECK(std::abs(prod - sum) <=
              1e-10 * std::max(1.0, std::abs(prod)));
      }
  }
}

TEST_CASE("shuffle specializations") {
  SplitMix64 rng(16);
  const AlgebraParams p{4, 2};
  for (int rep = 0; rep < 20; ++rep) {
    const TruncatedTensor t = random_grouplike(p, rng, 4);
    for (int i = 1; i <= 4; ++i) {
      const double xi = get_coefficient(t, {i});
      CHECK(std::abs(get_coefficient(t, {i, i}) - xi * xi / 2.0) <= 1e-12);
      for (int j = 1; j <= 4; ++j) {
        if (i == j) continue;
        const double sum =
            get_coefficient(t, {i, j}) + get_coefficient(t, {j, i});
        CHECK(std::abs(sum - xi * get_coefficient(t, {j})) <= 1e-12);
      }
    }
  }
}

TEST_CASE("concat matches the iterated-integral oracle") {
  SplitMix64 rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const AlgebraParams p{3, 4};
    std::vector<std::vector<double>> points(1, std::vector<double>(3, 0.0));
    TruncatedTensor sig = unit_tensor(p);
    for (int seg = 0; seg < 4; ++seg) {
      std::vector<double> next = points.back();
      std::vector<double> delta(3);
      for (std::size_t ch = 0; ch < 3; ++ch) {
        delta[ch] = rng.uniform(-0.5, 0.5);
        next[ch] += delta[ch];
      }
      points.push_back(next);
      concat_inplace(sig, exp_of_increment(delta, p));
    }
    for (std::size_t slot = 1; slot < tensor_size(p); ++slot) {
      const double expected =
          oracles::iterated_integral(points, multi_index_at(p, slot));
      CHECK(std::abs(sig.coeffs[slot] - expected) <= 1e-12);
    }
  }
}

TEST_CASE("get_coefficient accessor and errors") {
  const AlgebraParams p{2, 2};
  const TruncatedTensor t = exp_of_increment({1.0, 2.0}, p);
  CHECK(get_coefficient(t, {2, 2}) == 2.0);
  CHECK(get_coefficient(unit_tensor(p), {1}) == 0.0);
  CHECK(get_coefficient(t, {}) == t.coeffs[0]);
  CHECK_THROWS_AS(get_coefficient(t, {3}), std::out_of_range);
  CHECK_THROWS_AS(get_coefficient(t, {1, 1, 1}), std::out_of_range);
}
