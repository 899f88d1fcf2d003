#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fockbell {

using BigInt = boost::multiprecision::cpp_int;

/// Occupation counts per mode (detector rows or source columns).
using Counts = std::vector<int>;

inline int total(std::span<const int> counts) {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

inline double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int j = 1; j <= k; ++j) {
    result *= n - k + j;
    result /= j;
  }
  return result;
}

inline BigInt factorial_exact(int n) {
  BigInt result = 1;
  for (int j = 2; j <= n; ++j) result *= j;
  return result;
}

/// Number of compositions of n into d non-negative parts, C(n+d-1, d-1),
/// saturating at UINT64_MAX.
inline std::uint64_t composition_count(int parts, int n) {
  if (parts < 1 || n < 0) return 0;
  BigInt count = binomial_exact(n + parts - 1, parts - 1);
  if (count > std::numeric_limits<std::uint64_t>::max())
    return std::numeric_limits<std::uint64_t>::max();
  return count.convert_to<std::uint64_t>();
}

/// Calls visit(counts) for every composition of n into `parts` non-negative
/// parts, in lexicographic order.
template <class Visitor>
void for_each_composition(int parts, int n, Visitor&& visit) {
  if (parts < 1) throw std::invalid_argument("for_each_composition: need at least one part");
  if (n < 0) throw std::invalid_argument("for_each_composition: negative total");
  Counts counts(parts, 0);
  counts.back() = n;
  while (true) {
    visit(std::as_const(counts));
    // Successor: bump the rightmost non-final slot that has mass after it,
    // and move the remaining tail mass (minus one) into the final slot.
    int rest = counts.back();
    int j = parts - 2;
    while (j >= 0 && rest == 0) {
      rest += counts[j];
      --j;
    }
    if (j < 0) return;
    ++counts[j];
    std::fill(counts.begin() + j + 1, counts.end(), 0);
    counts.back() = rest - 1;
  }
}

inline std::vector<Counts> enumerate_compositions(int parts, int n) {
  std::vector<Counts> out;
  out.reserve(static_cast<std::size_t>(composition_count(parts, n)));
  for_each_composition(parts, n, [&](const Counts& c) { out.push_back(c); });
  return out;
}

/// Visits every non-negative integer matrix table[row][col] with the given
/// row and column sums. The table is passed row-major.
template <class Visitor>
void for_each_contingency_table(std::span<const int> row_sums, std::span<const int> col_sums,
                                Visitor&& visit) {
  const std::size_t rows = row_sums.size();
  const std::size_t cols = col_sums.size();
  if (total(row_sums) != total(col_sums)) return;
  std::vector<int> table(rows * cols, 0);
  std::vector<int> col_left(col_sums.begin(), col_sums.end());

  // Fill row by row; within a row distribute row_sums[r] across columns
  // bounded by the remaining column capacity.
  std::function<void(std::size_t, std::size_t, int)> fill = [&](std::size_t r, std::size_t c,
                                                                 int row_left) {
    if (r == rows) {
      visit(std::as_const(table));
      return;
    }
    if (c + 1 == cols) {
      if (row_left > col_left[c]) return;
      table[r * cols + c] = row_left;
      col_left[c] -= row_left;
      fill(r + 1, 0, r + 1 < rows ? row_sums[r + 1] : 0);
      col_left[c] += row_left;
      table[r * cols + c] = 0;
      return;
    }
    const int hi = std::min(row_left, col_left[c]);
    for (int v = 0; v <= hi; ++v) {
      table[r * cols + c] = v;
      col_left[c] -= v;
      fill(r, c + 1, row_left - v);
      col_left[c] += v;
    }
    table[r * cols + c] = 0;
  };
  if (rows == 0) {
    visit(std::as_const(table));
    return;
  }
  if (cols == 0) {
    if (total(row_sums) == 0) visit(std::as_const(table));
    return;
  }
  fill(0, 0, row_sums[0]);
}

}  // namespace fockbell
