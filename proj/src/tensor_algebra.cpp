#include "sigstream/tensor_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "sigstream/errors.hpp"
#include "sigstream/textio.hpp"

namespace sigstream {

namespace {

void check_params(const AlgebraParams& p) {
  if (p.width < 1) throw std::invalid_argument("width must be >= 1");
  if (p.depth < 1) throw std::invalid_argument("depth must be >= 1");
}

void check_index(const AlgebraParams& p, const MultiIndex& index) {
  if (index.size() > static_cast<std::size_t>(p.depth))
    throw std::out_of_range("multi-index longer than depth");
  for (const int letter : index)
    if (letter < 1 || letter > p.width)
      throw std::out_of_range("letter outside alphabet 1.." +
                              std::to_string(p.width));
}

void check_same_params(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (!(a.params == b.params))
    throw std::invalid_argument("tensor width/depth mismatch");
}

// 64 GiB of doubles is a safe "you did not mean this" bound.
constexpr std::size_t kMaxCoeffs = std::size_t{1} << 33;

}  // namespace

std::size_t feature_count(const AlgebraParams& params) {
  check_params(params);
  std::size_t total = 0;
  std::size_t level = 1;
  for (int k = 1; k <= params.depth; ++k) {
    level *= static_cast<std::size_t>(params.width);
    total += level;
    if (total > kMaxCoeffs)
      throw std::invalid_argument("width/depth combination too large");
  }
  return total;
}

std::size_t tensor_size(const AlgebraParams& params) {
  return 1 + feature_count(params);
}

std::size_t level_offset(const AlgebraParams& params, int degree) {
  check_params(params);
  if (degree < 0 || degree > params.depth)
    throw std::out_of_range("degree outside 0..depth");
  std::size_t offset = 0;
  std::size_t level = 1;
  for (int k = 0; k < degree; ++k) {
    offset += level;
    level *= static_cast<std::size_t>(params.width);
  }
  return offset;
}

std::size_t slot_of(const AlgebraParams& params, const MultiIndex& index) {
  check_params(params);
  check_index(params, index);
  std::size_t within = 0;
  for (const int letter : index)
    within = within * static_cast<std::size_t>(params.width) +
             static_cast<std::size_t>(letter - 1);
  return level_offset(params, static_cast<int>(index.size())) + within;
}

MultiIndex multi_index_at(const AlgebraParams& params, std::size_t slot) {
  check_params(params);
  if (slot >= tensor_size(params)) throw std::out_of_range("slot out of range");
  int degree = 0;
  while (degree < params.depth && slot >= level_offset(params, degree + 1))
    ++degree;
  std::size_t within = slot - level_offset(params, degree);
  MultiIndex index(static_cast<std::size_t>(degree));
  for (int pos = degree - 1; pos >= 0; --pos) {
    index[static_cast<std::size_t>(pos)] =
        static_cast<int>(within % static_cast<std::size_t>(params.width)) + 1;
    within /= static_cast<std::size_t>(params.width);
  }
  return index;
}

std::vector<MultiIndex> all_multi_indices(const AlgebraParams& params) {
  const std::size_t total = tensor_size(params);
  std::vector<MultiIndex> indices;
  indices.reserve(total - 1);
  for (std::size_t slot = 1; slot < total; ++slot)
    indices.push_back(multi_index_at(params, slot));
  return indices;
}

std::string dotted(const MultiIndex& index) {
  std::string text;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) text += '.';
    text += std::to_string(index[i]);
  }
  return text;
}

MultiIndex parse_dotted(std::string_view text, const AlgebraParams& params) {
  check_params(params);
  MultiIndex index;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    std::int64_t letter = 0;
    if (!try_parse_int(text.substr(start, dot - start), letter))
      throw ParseError("bad multi-index: " + std::string(text));
    index.push_back(static_cast<int>(letter));
    start = dot + 1;
  }
  try {
    check_index(params, index);
  } catch (const std::out_of_range& e) {
    throw ParseError("bad multi-index '" + std::string(text) + "': " + e.what());
  }
  return index;
}

TruncatedTensor zero_tensor(const AlgebraParams& params) {
  return TruncatedTensor{params, std::vector<double>(tensor_size(params), 0.0)};
}

TruncatedTensor unit_tensor(const AlgebraParams& params) {
  TruncatedTensor t = zero_tensor(params);
  t.coeffs[0] = 1.0;
  return t;
}

TruncatedTensor exp_of_increment(const std::vector<double>& v,
                                 const AlgebraParams& params) {
  check_params(params);
  if (v.size() != static_cast<std::size_t>(params.width))
    throw std::invalid_argument("increment has wrong dimension");
  TruncatedTensor t = zero_tensor(params);
  t.coeffs[0] = 1.0;
  const std::size_t d = static_cast<std::size_t>(params.width);
  std::size_t prev_offset = 0;
  std::size_t prev_size = 1;
  for (int k = 1; k <= params.depth; ++k) {
    const std::size_t offset = level_offset(params, k);
    // v^(x)k / k! = (v^(x)(k-1) / (k-1)!) (x) v / k
    for (std::size_t i = 0; i < prev_size; ++i) {
      const double base = t.coeffs[prev_offset + i] / static_cast<double>(k);
      double* dest = t.coeffs.data() + offset + i * d;
      for (std::size_t j = 0; j < d; ++j) dest[j] = base * v[j];
    }
    prev_offset = offset;
    prev_size *= d;
  }
  return t;
}

void concat_inplace(TruncatedTensor& a, const TruncatedTensor& b) {
  check_same_params(a, b);
  const AlgebraParams& p = a.params;
  const std::size_t d = static_cast<std::size_t>(p.width);
  const double a0 = a.coeffs[0];
  const double b0 = b.coeffs[0];
  // c_n = sum_{j=0..n} a_j (x) b_{n-j}; filling top degree first means every
  // a_j read below is still the original value.
  for (int n = p.depth; n >= 1; --n) {
    double* cn = a.coeffs.data() + level_offset(p, n);
    std::size_t size_n = 1;
    for (int k = 0; k < n; ++k) size_n *= d;
    if (b0 != 1.0)
      for (std::size_t i = 0; i < size_n; ++i) cn[i] *= b0;
    std::size_t size_j = size_n;
    for (int j = n - 1; j >= 1; --j) {
      size_j /= d;
      const double* aj = a.coeffs.data() + level_offset(p, j);
      const double* bk = b.coeffs.data() + level_offset(p, n - j);
      const std::size_t size_k = size_n / size_j;
      double* dest = cn;
      for (std::size_t ia = 0; ia < size_j; ++ia, dest += size_k) {
        const double av = aj[ia];
        if (av == 0.0) continue;
        for (std::size_t ib = 0; ib < size_k; ++ib) dest[ib] += av * bk[ib];
      }
    }
    if (a0 != 0.0) {
      const double* bn = b.coeffs.data() + level_offset(p, n);
      for (std::size_t i = 0; i < size_n; ++i) cn[i] += a0 * bn[i];
    }
  }
  a.coeffs[0] = a0 * b0;
}

TruncatedTensor concat_product(const TruncatedTensor& a,
                               const TruncatedTensor& b) {
  TruncatedTensor result = a;
  concat_inplace(result, b);
  return result;
}

TruncatedTensor log(const TruncatedTensor& t) {
  const double head = t.coeffs[0];
  if (std::abs(head - 1.0) > 1e-9)
    throw std::domain_error("log requires degree-0 coefficient 1 (got " +
                            format_double(head) + ")");
  TruncatedTensor x = t;
  if (head != 1.0)
    for (double& c : x.coeffs) c /= head;
  x.coeffs[0] = 0.0;

  TruncatedTensor result = x;
  TruncatedTensor power = x;
  double sign = 1.0;
  for (int n = 2; n <= t.params.depth; ++n) {
    concat_inplace(power, x);
    sign = -sign;
    const double weight = sign / static_cast<double>(n);
    for (std::size_t i = 0; i < result.coeffs.size(); ++i)
      result.coeffs[i] += weight * power.coeffs[i];
  }
  return result;
}

namespace {

void riffle(const MultiIndex& I, std::size_t i, const MultiIndex& J,
            std::size_t j, MultiIndex& current,
            std::vector<MultiIndex>& out) {
  if (i == I.size() && j == J.size()) {
    out.push_back(current);
    return;
  }
  if (i < I.size()) {
    current.push_back(I[i]);
    riffle(I, i + 1, J, j, current, out);
    current.pop_back();
  }
  if (j < J.size()) {
    current.push_back(J[j]);
    riffle(I, i, J, j + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> shuffle_product(const MultiIndex& I,
                                        const MultiIndex& J,
                                        const AlgebraParams& params) {
  check_params(params);
  check_index(params, I);
  check_index(params, J);
  if (I.size() + J.size() > static_cast<std::size_t>(params.depth))
    throw std::invalid_argument("combined multi-index length exceeds depth");
  std::vector<MultiIndex> out;
  MultiIndex current;
  current.reserve(I.size() + J.size());
  riffle(I, 0, J, 0, current, out);
  return out;
}

double get_coefficient(const TruncatedTensor& t, const MultiIndex& index) {
  return t.coeffs[slot_of(t.params, index)];
}

}  // namespace sigstream
