#pragma once

// Graded dimensions of quadratic algebras.
//
// Two independent routes: relation_span/graded_dimension enumerate every path
// of a degree and take the rank of the full relation span (simple, used as a
// cross-check and by the integer analysis), while hilbert_series runs the
// incremental normal-word engine, which only ever eliminates one-letter
// extensions of the previous degree's basis.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "preproj/graded_quotient.hpp"
#include "preproj/matrix.hpp"
#include "preproj/presentation.hpp"
#include "preproj/series.hpp"

namespace preproj {

/// All length-d paths of one block together with the spanning vectors
/// u * r * w of the ideal in that block.
struct SpanBlock {
  std::size_t end = 0;
  std::size_t start = 0;
  std::vector<std::vector<std::uint32_t>> paths;  // traversal order, lexicographic
  std::vector<SparseVec<Rational>> rows;          // over path indices
};

namespace detail {

struct PathList {
  std::vector<std::vector<std::uint32_t>> arrows;
  std::vector<std::size_t> start, end;
};

// Paths of each length 0..d, ordered by start vertex then arrow sequence.
inline std::vector<PathList> enumerate_paths(const Presentation& p, std::size_t d) {
  std::vector<std::vector<std::uint32_t>> out(p.vertex_count());
  for (std::size_t k = 0; k < p.generators().size(); ++k) out[p.generators()[k].tail].push_back(static_cast<std::uint32_t>(k));
  std::vector<PathList> by_len(d + 1);
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    by_len[0].arrows.push_back({});
    by_len[0].start.push_back(v);
    by_len[0].end.push_back(v);
  }
  for (std::size_t len = 1; len <= d; ++len) {
    const auto& prev = by_len[len - 1];
    auto& cur = by_len[len];
    for (std::size_t k = 0; k < prev.arrows.size(); ++k)
      for (auto a : out[prev.end[k]]) {
        auto w = prev.arrows[k];
        w.push_back(a);
        cur.arrows.push_back(std::move(w));
        cur.start.push_back(prev.start[k]);
        cur.end.push_back(p.generators()[a].head);
      }
  }
  return by_len;
}

}  // namespace detail

/// Degree-d relation span, one entry per block (end, start) that has paths.
inline std::vector<SpanBlock> relation_span(const Presentation& p, std::size_t d) {
  const auto paths = detail::enumerate_paths(p, d);
  std::map<std::pair<std::size_t, std::size_t>, SpanBlock> blocks;
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  const auto& top = paths[d];
  for (std::size_t k = 0; k < top.arrows.size(); ++k) {
    auto& b = blocks[{top.end[k], top.start[k]}];
    b.end = top.end[k];
    b.start = top.start[k];
    index[top.arrows[k]] = static_cast<std::uint32_t>(b.paths.size());
    b.paths.push_back(top.arrows[k]);
  }
  if (d >= 2) {
    for (std::size_t left = 0; left + 2 <= d; ++left) {
      const auto& us = paths[left];
      const auto& ws = paths[d - 2 - left];
      for (std::size_t u = 0; u < us.arrows.size(); ++u)
        for (const auto& r : p.relations()) {
          if (p.relation_start(r) != us.end[u]) continue;
          for (std::size_t w = 0; w < ws.arrows.size(); ++w) {
            if (ws.start[w] != p.relation_end(r)) continue;
            SparseVec<Rational> row;
            for (const auto& t : r.terms) {
              auto word = us.arrows[u];
              word.push_back(static_cast<std::uint32_t>(t.inner));
              word.push_back(static_cast<std::uint32_t>(t.outer));
              word.insert(word.end(), ws.arrows[w].begin(), ws.arrows[w].end());
              row.emplace_back(index.at(word), t.coeff);
            }
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            blocks[{ws.end[w], us.start[u]}].rows.push_back(std::move(row));
          }
        }
    }
  }
  std::vector<SpanBlock> out;
  for (auto& [key, b] : blocks) out.push_back(std::move(b));
  return out;
}

/// dim A[d] by enumerating all paths and ranking the full relation span.
inline IntMatrix graded_dimension(const Presentation& p, std::size_t d) {
  IntMatrix m(p.vertex_count());
  for (const auto& b : relation_span(p, d)) {
    std::size_t r = visit_field(p.field(), [&](const auto& field) -> std::size_t {
      RowEchelon ech(field, b.paths.size());
      for (const auto& row : b.rows) ech.insert(to_field(field, row));
      return ech.rank();
    });
    m(b.end, b.start) = static_cast<std::int64_t>(b.paths.size() - r);
  }
  return m;
}

/// Matrix Hilbert series of p up to degree N.
inline MatrixSeries hilbert_series(const Presentation& p, std::size_t N) {
  return visit_field(p.field(), [&](const auto& field) {
    GradedQuotient engine(p, field);
    return engine.series(N);
  });
}

/// dim E per block: the rank of the relations inside V (x)_R V.
inline IntMatrix relation_dimension_matrix(const Presentation& p) {
  const IntMatrix c = p.generator_matrix();
  const auto h = hilbert_series(p, 2);
  return c * c - h[2];
}

/// Walks on the doubled n-cycle (a_i : i -> i+1 mod n, plus stars) that never
/// traverse a_i immediately followed by a_i*.
inline MatrixSeries count_avoiding_paths(std::size_t n, std::size_t N) {
  if (n < 1) throw InputError("count_avoiding_paths: cycle length must be at least 1");
  const std::size_t m = 2 * n;
  auto tail = [&](std::size_t a) { return a < n ? a : (a - n + 1) % n; };
  auto head = [&](std::size_t a) { return a < n ? (a + 1) % n : a - n; };
  // ways[start][last arrow]
  std::vector<std::vector<std::int64_t>> ways(n, std::vector<std::int64_t>(m, 0));
  std::vector<IntMatrix> coeffs{IntMatrix::identity(n)};
  for (std::size_t d = 1; d <= N; ++d) {
    std::vector<std::vector<std::int64_t>> next(n, std::vector<std::int64_t>(m, 0));
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t b = 0; b < m; ++b) {
        if (d == 1) {
          if (tail(b) == s) next[s][b] = 1;
          continue;
        }
        for (std::size_t a = 0; a < m; ++a) {
          if (ways[s][a] == 0 || head(a) != tail(b)) continue;
          if (a < n && b == a + n) continue;
          next[s][b] = detail::checked_add(next[s][b], ways[s][a]);
        }
      }
    ways = std::move(next);
    IntMatrix c(n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t b = 0; b < m; ++b) c(head(b), s) = detail::checked_add(c(head(b), s), ways[s][b]);
    coeffs.push_back(std::move(c));
  }
  return MatrixSeries(std::move(coeffs));
}

}  // namespace preproj
