#pragma once

// Seeded generators and brute-force oracles shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "preproj/algebra.hpp"
#include "preproj/families.hpp"

namespace testing_support {

using namespace preproj;

inline std::string quiver_path(const std::string& name) { return std::string(PREPROJ_QUIVER_DIR) + "/" + name; }

/// Random quadratic presentation: up to `max_vertices` vertices, up to
/// `max_gens` arrows and up to `max_rels` block-homogeneous relations with
/// small nonzero integer coefficients.
inline Presentation random_presentation(std::mt19937_64& rng, std::size_t max_vertices = 3, std::size_t max_gens = 4,
                                        std::size_t max_rels = 2, FieldSpec field = FieldSpec::rationals()) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  const std::size_t n = nv(rng);
  std::uniform_int_distribution<std::size_t> vert(0, n - 1);
  std::uniform_int_distribution<std::size_t> ng(1, max_gens);
  std::vector<Generator> gens;
  const std::size_t g = ng(rng);
  for (std::size_t k = 0; k < g; ++k) gens.push_back({"x" + std::to_string(k), vert(rng), vert(rng)});

  // Length-two paths grouped by block (end, start).
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> blocks;
  for (std::size_t inner = 0; inner < g; ++inner)
    for (std::size_t outer = 0; outer < g; ++outer)
      if (gens[inner].head == gens[outer].tail) blocks[{gens[outer].head, gens[inner].tail}].push_back({outer, inner});

  std::vector<Relation> rels;
  std::uniform_int_distribution<std::size_t> nr(0, max_rels);
  const std::size_t want = blocks.empty() ? 0 : nr(rng);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (std::size_t k = 0; k < want; ++k) {
    auto it = blocks.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, blocks.size() - 1)(rng));
    const auto& paths = it->second;
    for (int attempt = 0; attempt < 10; ++attempt) {
      Relation r;
      for (const auto& [outer, inner] : paths) {
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
        int c = coeff(rng);
        if (c == 0) c = 1;
        r.terms.push_back({Rational(c), outer, inner});
      }
      if (r.terms.empty()) continue;
      // Keep only relations that survive reduction into the field.
      bool survives = visit_field(field, [&](const auto& f) {
        return std::any_of(r.terms.begin(), r.terms.end(), [&](const auto& t) { return !f.is_zero(f.from_rational(t.coeff)); });
      });
      if (!survives) continue;
      rels.push_back(std::move(r));
      break;
    }
  }
  return Presentation(families::numbered(n), std::move(gens), std::move(rels), field);
}

/// Random presentation on a fixed vertex count (for free products).
inline Presentation random_presentation_on(std::mt19937_64& rng, std::size_t n, std::size_t max_gens,
                                           std::size_t max_rels) {
  for (;;) {
    auto p = random_presentation(rng, n, max_gens, max_rels);
    if (p.vertex_count() == n) return p;
  }
}

/// Dense rank over Q by textbook Gaussian elimination (oracle).
inline std::size_t dense_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Dense rank over GF(p) (oracle).
inline std::size_t dense_rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  auto md = [&](std::int64_t x) { return ((x % p) + p) % p; };
  auto inv = [&](std::int64_t a) {
    std::int64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : m)
    for (auto& x : row) x = md(x);
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const auto iv = inv(m[rank][c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const auto f = m[r][c] * iv % p;
      for (std::size_t k = c; k < cols; ++k) m[r][k] = md(m[r][k] - f * m[rank][k]);
    }
    ++rank;
  }
  return rank;
}

/// Powers of an integer matrix as a series: sum_d M^d t^d.
inline MatrixSeries geometric(const IntMatrix& m, std::size_t N) {
  std::vector<IntMatrix> c{IntMatrix::identity(m.size())};
  for (std::size_t d = 1; d <= N; ++d) c.push_back(c.back() * m);
  return MatrixSeries(std::move(c));
}

}  // namespace testing_support
