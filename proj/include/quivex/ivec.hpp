#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "quivex/error.hpp"

namespace quivex {

/// Dimension vectors and related integer vectors, always in the canonical
/// vertex order of the quiver at hand.
using IVec = std::vector<long long>;

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(errc::overflow, "integer overflow in add");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(errc::overflow, "integer overflow in mul");
  return r;
}

inline bool is_zero(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

inline bool is_nonnegative(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; });
}

inline bool is_positive(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](long long x) { return x > 0; });
}

/// Componentwise e <= d. Sizes must already agree.
inline bool leq(const IVec& e, const IVec& d) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > d[i]) return false;
  return true;
}

inline IVec vec_sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IVec vec_scaled(const IVec& a, long long k) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], k);
  return r;
}

/// Advances v one step in lexicographic order through the box [0, hi];
/// returns false once the box is exhausted.
inline bool next_in_box(IVec& v, const IVec& hi) {
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
    if (v[i] < hi[i]) {
      ++v[i];
      std::fill(v.begin() + i + 1, v.end(), 0);
      return true;
    }
  }
  return false;
}

/// Number of lattice points of [0, hi] stays within `budget`?
inline bool box_within_budget(const IVec& hi, long long budget) {
  unsigned __int128 points = 1;
  for (long long h : hi) {
    points *= static_cast<unsigned __int128>(h) + 1;
    if (points > static_cast<unsigned __int128>(budget)) return false;
  }
  return true;
}

inline std::string to_string(const IVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace quivex
