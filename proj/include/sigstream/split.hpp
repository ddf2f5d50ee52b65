#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sigstream {

// FNV-1a over the feature bit patterns and the label, so a row's identity
// does not depend on its position in the table.
std::uint64_t row_content_hash(const std::vector<double>& features,
                               double label);

std::vector<std::uint64_t> content_hashes(
    const std::vector<std::vector<double>>& rows,
    const std::vector<double>& labels);

// Indices sorted by content hash, then Fisher-Yates shuffled under the seed.
// The visited row contents are invariant under permutation of the input.
std::vector<std::size_t> shuffled_order(
    const std::vector<std::uint64_t>& hashes, std::uint64_t seed);

struct SplitIndices {
  std::vector<std::size_t> learn;
  std::vector<std::size_t> test;
};

// Stratified split: walking the shuffled order, the first round(ratio * n_c)
// rows of each class c go to the learning set, the rest to the test set.
SplitIndices stratified_split(const std::vector<std::uint64_t>& hashes,
                              const std::vector<int>& labels, double ratio,
                              std::uint64_t seed);

// k contiguous [begin, end) ranges covering n rows, sizes differing by <= 1;
// the first n % k folds take the extra row.
std::vector<std::pair<std::size_t, std::size_t>> fold_bounds(std::size_t n,
                                                             int k);

}  // namespace sigstream
