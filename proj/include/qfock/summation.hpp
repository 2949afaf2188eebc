#pragma once

#include <cstddef>
#include <utility>

namespace qfock {

/// Sum term(0) + ... + term(n-1) by recursive halving. The association
/// order depends only on n, so results are bit-identical across runs.
template <typename T, typename Term>
T pairwise_sum(std::ptrdiff_t begin, std::ptrdiff_t end, Term&& term) {
  const std::ptrdiff_t n = end - begin;
  if (n <= 8) {
    if (n <= 0) return T{};
    T acc = term(begin);
    for (std::ptrdiff_t i = begin + 1; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::ptrdiff_t mid = begin + n / 2;
  T left = pairwise_sum<T>(begin, mid, term);
  left += pairwise_sum<T>(mid, end, term);
  return left;
}

template <typename T, typename Term>
T pairwise_sum(std::ptrdiff_t n, Term&& term) {
  return pairwise_sum<T>(0, n, std::forward<Term>(term));
}

}  // namespace qfock
