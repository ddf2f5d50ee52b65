#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sigstream {

// Truncated free tensor algebra over the alphabet {1..width}, depth `depth`.
struct AlgebraParams {
  int width = 1;
  int depth = 1;

  friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

// Letters in 1..width; empty = the degree-0 slot.
using MultiIndex = std::vector<int>;

// Number of coefficients of degree 1..depth (the feature count); the stored
// tensor additionally holds the degree-0 slot at index 0.
std::size_t feature_count(const AlgebraParams& params);
std::size_t tensor_size(const AlgebraParams& params);

// Index of the first degree-k coefficient in the flat layout.
std::size_t level_offset(const AlgebraParams& params, int degree);

// Flat slot of a multi-index under the canonical layout: ascending degree,
// lexicographic within a degree.
std::size_t slot_of(const AlgebraParams& params, const MultiIndex& index);
MultiIndex multi_index_at(const AlgebraParams& params, std::size_t slot);

// All multi-indices of degree 1..depth in canonical order.
std::vector<MultiIndex> all_multi_indices(const AlgebraParams& params);

// "1.5.1.5" rendering used by file formats.
std::string dotted(const MultiIndex& index);
MultiIndex parse_dotted(std::string_view text, const AlgebraParams& params);

// Dense coefficient vector in canonical order, degree 0 first.
struct TruncatedTensor {
  AlgebraParams params;
  std::vector<double> coeffs;
};

TruncatedTensor zero_tensor(const AlgebraParams& params);
TruncatedTensor unit_tensor(const AlgebraParams& params);

// Signature of a single linear segment with total increment v:
// coefficient at (i_1..i_k) is v_{i_1}*...*v_{i_k}/k!.
TruncatedTensor exp_of_increment(const std::vector<double>& v,
                                 const AlgebraParams& params);

// a <- a (x) b, truncated at depth.  Works level by level from the top so the
// update is safely in place.
void concat_inplace(TruncatedTensor& a, const TruncatedTensor& b);
TruncatedTensor concat_product(const TruncatedTensor& a,
                               const TruncatedTensor& b);

// Truncated tensor logarithm; requires degree-0 coefficient 1 (inputs within
// 1e-9 are renormalized first).
TruncatedTensor log(const TruncatedTensor& t);

// All riffle shuffles of I and J, with multiplicity.
std::vector<MultiIndex> shuffle_product(const MultiIndex& I,
                                        const MultiIndex& J,
                                        const AlgebraParams& params);

double get_coefficient(const TruncatedTensor& t, const MultiIndex& index);

}  // namespace sigstream
