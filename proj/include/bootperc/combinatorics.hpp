#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <utility>
#include <vector>

#include "bootperc/errors.hpp"

namespace bootperc {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InvalidInput("integer overflow in count");
  return out;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw InvalidInput("integer overflow in count");
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

/// C(n, k); zero when k > n.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // out * (n - k + i) is divisible by i at every step
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(out, i);
    out = checked_mul(out / g, num / (i / g));
  }
  return out;
}

/// Advances `comb` (strictly increasing values in [0, n)) to the next k-subset
/// in lexicographic order. Returns false after the last one.
template <typename Int>
bool next_combination(std::vector<Int>& comb, Int n) {
  const std::size_t k = comb.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (comb[i] < static_cast<Int>(n - static_cast<Int>(k - i))) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Calls fn(const std::vector<Int>&) for every k-subset of [0, n) in
/// lexicographic order. If fn returns bool, returning false stops early.
template <typename Int = std::size_t, typename Fn>
void for_each_combination(Int n, std::size_t k, Fn&& fn) {
  if (k > static_cast<std::size_t>(n)) return;
  std::vector<Int> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = static_cast<Int>(i);
  do {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const std::vector<Int>&>, bool>) {
      if (!fn(std::as_const(comb))) return;
    } else {
      fn(std::as_const(comb));
    }
  } while (next_combination(comb, n));
}

}  // namespace bootperc
