#pragma once

// Sparse exact matrices and incremental row echelon forms.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "preproj/field.hpp"

namespace preproj {

/// (index, value) pairs. Producers keep indices ascending and values nonzero
/// unless stated otherwise.
template <class T>
using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational value;
};

/// rows x cols matrix stored as (row, col, value) triplets. Repeated
/// positions are summed.
struct ExactMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Triplet> entries;

  static ExactMatrix from_dense(const std::vector<std::vector<long>>& dense) {
    ExactMatrix m;
    m.rows = dense.size();
    m.cols = dense.empty() ? 0 : dense.front().size();
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (dense[i].size() != m.cols) throw InputError("ragged dense matrix");
      for (std::size_t j = 0; j < m.cols; ++j)
        if (dense[i][j] != 0) m.entries.push_back({i, j, Rational(dense[i][j])});
    }
    return m;
  }

  /// Row-wise sparse form with merged duplicates, zeros dropped.
  std::vector<SparseVec<Rational>> sparse_rows() const {
    std::vector<SparseVec<Rational>> out(rows);
    for (const auto& t : entries) {
      if (t.row >= rows || t.col >= cols) throw InputError("matrix entry out of range");
      out[t.row].emplace_back(static_cast<std::uint32_t>(t.col), t.value);
    }
    for (auto& r : out) {
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      SparseVec<Rational> merged;
      for (auto& [c, v] : r) {
        if (!merged.empty() && merged.back().first == c)
          merged.back().second += v;
        else
          merged.emplace_back(c, v);
      }
      std::erase_if(merged, [](const auto& e) { return sgn(e.second) == 0; });
      r = std::move(merged);
    }
    return out;
  }
};

/// dst += f * src for index-sorted sparse vectors.
template <ExactField F>
void axpy(const F& field, SparseVec<typename F::value_type>& dst, const typename F::value_type& f,
          const SparseVec<typename F::value_type>& src) {
  using V = typename F::value_type;
  SparseVec<V> out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  V neg_f = field.neg(f);
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      V v = field.zero();
      field.sub_mul(v, neg_f, src[j].second);
      out.emplace_back(src[j].first, std::move(v));
      ++j;
    } else {
      V v = std::move(dst[i].second);
      field.sub_mul(v, neg_f, src[j].second);
      if (!field.is_zero(v)) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

/// Incremental row echelon form over an exact field.
///
/// Each stored row is normalised so that its largest column (the lead) has
/// coefficient one, and no two stored rows share a lead. Tails are left
/// unreduced until reduce_fully() is called, after which every tail is
/// supported on non-pivot columns only.
template <ExactField F>
class RowEchelon {
 public:
  using value_type = typename F::value_type;
  using Row = SparseVec<value_type>;

  RowEchelon(F field, std::size_t cols)
      : field_(std::move(field)), pivot_(cols, kNone), dense_(cols, field_.zero()), queued_(cols, 0), seen_(cols, 0) {}

  std::size_t cols() const { return pivot_.size(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t col) const { return pivot_[col] != kNone; }

  /// Normalised row whose lead is `col`; col must be a pivot.
  const Row& pivot_row(std::size_t col) const { return rows_[pivot_[col]]; }

  /// Lead columns in insertion order.
  std::vector<std::uint32_t> leads() const {
    std::vector<std::uint32_t> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.back().first);
    return out;
  }

  /// Reduces `row` (duplicate indices are summed) and stores it when it stays
  /// nonzero. Returns the lead of the stored row.
  std::optional<std::uint32_t> insert(const Row& row) { return insert_impl(row, nullptr); }

  /// As insert(), tracking the combination of inserted rows. `history` is the
  /// combination represented by `row`; on a zero reduction it is replaced by
  /// a combination that sums to zero.
  std::optional<std::uint32_t> insert_tracked(const Row& row, Row& history) { return insert_impl(row, &history); }

  /// Back-substitutes so that tails avoid pivot columns.
  void reduce_fully() {
    std::vector<std::uint32_t> order = leads();
    std::sort(order.begin(), order.end());
    for (std::uint32_t lead : order) {
      Row& r = rows_[pivot_[lead]];
      bool dirty = false;
      for (std::size_t k = 0; k + 1 < r.size(); ++k) dirty = dirty || is_pivot(r[k].first);
      if (!dirty) continue;
      // Rows with smaller leads are already fully reduced, so subtracting
      // them never introduces a pivot column.
      for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        const auto& [c, v] = r[k];
        if (!is_pivot(c)) {
          touch(c);
          dense_[c] = field_.add(dense_[c], v);
          continue;
        }
        const Row& p = rows_[pivot_[c]];
        for (std::size_t m = 0; m + 1 < p.size(); ++m) {
          touch(p[m].first);
          field_.sub_mul(dense_[p[m].first], v, p[m].second);
        }
      }
      Row out;
      for (auto c : touched_)
        if (!field_.is_zero(dense_[c])) out.emplace_back(c, dense_[c]);
      clear_scratch();
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.emplace_back(lead, field_.one());
      r = std::move(out);
    }
    fully_reduced_ = true;
  }

  bool fully_reduced() const { return fully_reduced_; }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  void touch(std::uint32_t c) {
    if (!seen_[c]) {
      seen_[c] = 1;
      touched_.push_back(c);
    }
  }

  void clear_scratch() {
    for (auto c : touched_) {
      dense_[c] = field_.zero();
      seen_[c] = 0;
    }
    touched_.clear();
  }

  std::optional<std::uint32_t> insert_impl(const Row& row, Row* history) {
    fully_reduced_ = false;
    std::priority_queue<std::uint32_t> heap;
    auto enqueue = [&](std::uint32_t c) {
      touch(c);
      if (!queued_[c]) {
        queued_[c] = 1;
        heap.push(c);
      }
    };
    for (const auto& [c, v] : row) {
      dense_[c] = field_.add(dense_[c], v);
      enqueue(c);
    }
    std::optional<std::uint32_t> lead;
    while (!heap.empty()) {
      std::uint32_t c = heap.top();
      heap.pop();
      queued_[c] = 0;
      if (field_.is_zero(dense_[c])) continue;
      if (pivot_[c] == kNone) {
        lead = c;
        break;
      }
      value_type f = dense_[c];
      const Row& p = rows_[pivot_[c]];
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        field_.sub_mul(dense_[p[k].first], f, p[k].second);
        enqueue(p[k].first);
      }
      dense_[c] = field_.zero();
      if (history) axpy(field_, *history, field_.neg(f), histories_[pivot_[c]]);
    }
    while (!heap.empty()) {
      queued_[heap.top()] = 0;
      heap.pop();
    }
    Row out;
    if (lead) {
      value_type scale = field_.inv(dense_[*lead]);
      for (auto c : touched_)
        if (c != *lead && !field_.is_zero(dense_[c])) out.emplace_back(c, field_.mul(dense_[c], scale));
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.emplace_back(*lead, field_.one());
      Row h;
      if (history) axpy(field_, h, scale, *history);
      histories_.push_back(std::move(h));
    }
    clear_scratch();
    if (!lead) return std::nullopt;
    pivot_[*lead] = static_cast<std::uint32_t>(rows_.size());
    rows_.push_back(std::move(out));
    return lead;
  }

  F field_;
  std::vector<std::uint32_t> pivot_;
  std::vector<Row> rows_;
  std::vector<Row> histories_;
  std::vector<value_type> dense_;
  std::vector<std::uint8_t> queued_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint32_t> touched_;
  bool fully_reduced_ = true;
};

template <ExactField F>
SparseVec<typename F::value_type> to_field(const F& field, const SparseVec<Rational>& row) {
  SparseVec<typename F::value_type> out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    auto x = field.from_rational(v);
    if (!field.is_zero(x)) out.emplace_back(c, std::move(x));
  }
  return out;
}

/// Exact rank of m over f. Integer entries are reduced mod p for GF(p).
inline std::size_t rank(const ExactMatrix& m, const FieldSpec& f) {
  return visit_field(f, [&](const auto& field) -> std::size_t {
    RowEchelon ech(field, m.cols);
    for (const auto& r : m.sparse_rows()) ech.insert(to_field(field, r));
    return ech.rank();
  });
}

/// Basis of {x : sum_k x_k rows[k] = 0}, as sparse vectors over row indices.
template <ExactField F>
std::vector<SparseVec<typename F::value_type>> left_kernel(const F& field, std::size_t cols,
                                                           const std::vector<SparseVec<typename F::value_type>>& rows) {
  RowEchelon<F> ech(field, cols);
  std::vector<SparseVec<typename F::value_type>> kernel;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    SparseVec<typename F::value_type> h{{static_cast<std::uint32_t>(k), field.one()}};
    if (!ech.insert_tracked(rows[k], h)) kernel.push_back(std::move(h));
  }
  return kernel;
}

}  // namespace preproj
