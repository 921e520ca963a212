#pragma once

#include <string>
#include <vector>

#include "quivex/quivex.hpp"
#include "quivex/rng.hpp"

namespace qt {

using namespace quivex;

/// Two vertices "1", "2" with m parallel arrows 1 -> 2.
inline Quiver kronecker(long long m) {
  return Quiver::validate({"1", "2"}, {{"1", "2", m}});
}

/// Linear A_n quiver 1 -> 2 -> ... -> n.
inline Quiver path_quiver(int n) {
  std::vector<std::string> vertices;
  std::vector<Quiver::RawArrow> arrows;
  for (int i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i)
    arrows.emplace_back(std::to_string(i), std::to_string(i + 1), 1);
  return Quiver::validate(vertices, arrows);
}

/// D4: three sources "1", "2", "3" all pointing at the center "c".
inline Quiver d4_quiver() {
  return Quiver::validate({"1", "2", "3", "c"},
                          {{"1", "c", 1}, {"2", "c", 1}, {"3", "c", 1}});
}

/// Wild three-vertex quiver 1->2, 2->3 and a double arrow 1->3.
inline Quiver wild3_quiver() {
  return Quiver::validate({"1", "2", "3"},
                          {{"1", "2", 1}, {"2", "3", 1}, {"1", "3", 2}});
}

/// Random acyclic quiver: n vertices in a fixed topological order, each
/// forward pair carrying 0..max_mult parallel arrows. Isolated vertices and
/// disconnected outcomes are kept; they are legitimate inputs.
inline Quiver random_acyclic_quiver(Rng& rng, int max_vertices = 4, int max_mult = 3) {
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices)));
  std::vector<std::string> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
  std::vector<Quiver::RawArrow> arrows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const long long mult = static_cast<long long>(rng.below(static_cast<std::uint64_t>(max_mult + 1)));
      if (mult > 0) arrows.emplace_back(vertices[i], vertices[j], mult);
    }
  return Quiver::validate(vertices, arrows);
}

inline IVec random_vector(Rng& rng, int n, long long lo, long long hi) {
  IVec v(n);
  for (auto& x : v) x = rng.int_in(lo, hi);
  return v;
}

}  // namespace qt
