#pragma once

// Standard quivers. Vertices are named "1", "2", ...

#include <string>
#include <vector>

#include "preproj/quiver.hpp"

namespace preproj::families {

inline std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t k = 1; k <= n; ++k) v.push_back(std::to_string(k));
  return v;
}

/// Oriented n-cycle a_k : k -> k+1 (mod n); n = 1 is a single loop.
inline Quiver cycle(std::size_t n) {
  std::vector<QuiverArrow> arrows;
  for (std::size_t k = 0; k < n; ++k) arrows.push_back({"a" + std::to_string(k + 1), k, (k + 1) % n});
  return Quiver(numbered(n), std::move(arrows));
}

/// Linear quiver 1 -> 2 -> ... -> n.
inline Quiver linear(std::size_t n) {
  std::vector<QuiverArrow> arrows;
  for (std::size_t k = 0; k + 1 < n; ++k) arrows.push_back({"a" + std::to_string(k + 1), k, k + 1});
  return Quiver(numbered(n), std::move(arrows));
}

/// Four leaves pointing at a central vertex 5.
inline Quiver affine_d4() {
  std::vector<QuiverArrow> arrows;
  for (std::size_t k = 0; k < 4; ++k) arrows.push_back({"a" + std::to_string(k + 1), k, 4});
  return Quiver(numbered(5), std::move(arrows));
}

/// One vertex carrying k loops.
inline Quiver loops(std::size_t k) {
  std::vector<QuiverArrow> arrows;
  for (std::size_t j = 0; j < k; ++j) arrows.push_back({"l" + std::to_string(j + 1), 0, 0});
  return Quiver(numbered(1), std::move(arrows));
}

/// Two vertices with k parallel arrows 1 -> 2.
inline Quiver parallel(std::size_t k) {
  std::vector<QuiverArrow> arrows;
  for (std::size_t j = 0; j < k; ++j) arrows.push_back({"b" + std::to_string(j + 1), 0, 1});
  return Quiver(numbered(2), std::move(arrows));
}

/// Star with node n+1 and arms[i] arrows from the node to leaf i+1.
/// `white` holds 0-based vertex indices (the node is arms.size()).
inline Quiver star(const std::vector<std::size_t>& arms, std::vector<std::size_t> white = {}) {
  const std::size_t node = arms.size();
  std::vector<QuiverArrow> arrows;
  for (std::size_t i = 0; i < arms.size(); ++i)
    for (std::size_t k = 0; k < arms[i]; ++k)
      arrows.push_back({"a" + std::to_string(i + 1) + "_" + std::to_string(k + 1), node, i});
  return Quiver(numbered(arms.size() + 1), std::move(arrows), std::move(white));
}

}  // namespace preproj::families
