#pragma once

#include <cstddef>
#include <span>

namespace ssimlab {

// Pairwise (cascade) summation over a fixed split tree. The tree depends only
// on the index range, never on data or thread count, so every reduction in the
// library is reproducible bit for bit.

namespace detail {

template <class Term>
double pairwise_sum_range(std::size_t begin, std::size_t end, const Term& term) {
  const std::size_t n = end - begin;
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum_range(begin, mid, term) + pairwise_sum_range(mid, end, term);
}

}  // namespace detail

template <class Term>
double pairwise_sum(std::size_t n, const Term& term) {
  return detail::pairwise_sum_range(0, n, term);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

template <class Term>
double pairwise_mean(std::size_t n, const Term& term) {
  return n == 0 ? 0.0 : pairwise_sum(n, term) / static_cast<double>(n);
}

inline double pairwise_mean(std::span<const double> v) {
  return pairwise_mean(v.size(), [&](std::size_t i) { return v[i]; });
}

}  // namespace ssimlab
