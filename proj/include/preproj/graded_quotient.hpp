#pragma once

// Degree-by-degree linear basis of a quadratic algebra A = T_R(V)/(E).
//
// Words are arrow sequences in traversal order (first arrow first). They are
// ordered by start vertex, then lexicographically by generator index; this
// order is compatible with appending letters. Writing I_d for the degree-d
// part of the ideal,
//
//   I_d = I_{d-1} V + T_{d-2} E,
//
// so the normal words N_d (words outside the leading-word set of I_d) all
// have a normal prefix, and A_d is the quotient of span(N_{d-1} V) by the
// images of u * r for u in N_{d-2} and r in E. Each degree needs one sparse
// elimination whose columns are the one-letter extensions of N_{d-1}.

#include <cstdint>
#include <limits>
#include <vector>

#include "preproj/matrix.hpp"
#include "preproj/presentation.hpp"
#include "preproj/series.hpp"

namespace preproj {

template <ExactField F>
class GradedQuotient {
 public:
  using value_type = typename F::value_type;
  using Vec = SparseVec<value_type>;
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Word {
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::uint32_t parent = kNone;  // prefix in the previous degree
    std::uint32_t last = kNone;    // final arrow
  };

  struct Layer {
    std::vector<Word> words;
    // Columns of this degree: (parent word of the previous degree, arrow).
    // column_nf[c] expresses that word in terms of this degree's words.
    std::vector<Vec> column_nf;
    // first_column[w]: index of (w, first out-arrow of end(w)) in the next
    // degree's column list; has words.size() + 1 entries.
    std::vector<std::uint32_t> first_column;
    std::vector<std::vector<std::uint32_t>> by_start;
    std::vector<std::uint32_t> rank_in_start;
  };

  GradedQuotient(const Presentation& p, F field) : field_(std::move(field)), n_(p.vertex_count()) {
    if (field_.spec() != p.field()) throw InputError("GradedQuotient: field does not match the presentation");
    out_arrows_.resize(n_);
    for (std::size_t k = 0; k < p.generators().size(); ++k) {
      const auto& g = p.generators()[k];
      out_pos_.push_back(static_cast<std::uint32_t>(out_arrows_[g.tail].size()));
      out_arrows_[g.tail].push_back(static_cast<std::uint32_t>(k));
      heads_.push_back(static_cast<std::uint32_t>(g.head));
      tails_.push_back(static_cast<std::uint32_t>(g.tail));
    }
    relations_by_start_.resize(n_);
    for (const auto& r : p.relations()) {
      std::vector<Term> terms;
      for (const auto& t : r.terms) {
        auto c = field_.from_rational(t.coeff);
        if (!field_.is_zero(c))
          terms.push_back({c, static_cast<std::uint32_t>(t.outer), static_cast<std::uint32_t>(t.inner)});
      }
      if (!terms.empty()) relations_by_start_[p.relation_start(r)].push_back(std::move(terms));
    }
    Layer zero;
    for (std::uint32_t v = 0; v < n_; ++v) zero.words.push_back({v, v, kNone, kNone});
    finish_layer(zero);
    layers_.push_back(std::move(zero));
  }

  const F& field() const { return field_; }
  std::size_t vertex_count() const { return n_; }
  std::size_t degree() const { return layers_.size() - 1; }
  const Layer& layer(std::size_t d) const { return layers_.at(d); }
  std::size_t generator_count() const { return heads_.size(); }
  std::uint32_t head(std::uint32_t arrow) const { return heads_[arrow]; }
  std::uint32_t tail(std::uint32_t arrow) const { return tails_[arrow]; }
  const std::vector<std::uint32_t>& out_arrows(std::size_t v) const { return out_arrows_[v]; }

  void extend_to(std::size_t d) {
    while (degree() < d) build_next();
  }

  /// Normal form of (word w of degree d) followed by `arrow`, in degree d+1
  /// word ids. Requires degree() > d and end(w) == tail(arrow).
  const Vec& append(std::size_t d, std::uint32_t w, std::uint32_t arrow) const {
    const Layer& l = layers_[d];
    return layers_[d + 1].column_nf[l.first_column[w] + out_pos_[arrow]];
  }

  /// Degree-1 word of a generator.
  std::uint32_t generator_word(std::uint32_t arrow) const {
    return append(0, tails_[arrow], arrow).front().first;
  }

  /// dim A_d as an |I| x |I| matrix, entry (end, start).
  IntMatrix dimension(std::size_t d) const {
    IntMatrix m(n_);
    for (const auto& w : layers_.at(d).words) m(w.end, w.start) += 1;
    return m;
  }

  MatrixSeries series(std::size_t N) {
    extend_to(N);
    std::vector<IntMatrix> coeffs;
    for (std::size_t d = 0; d <= N; ++d) coeffs.push_back(dimension(d));
    return MatrixSeries(std::move(coeffs));
  }

  /// Arrow sequence of a normal word.
  std::vector<std::uint32_t> spell(std::size_t d, std::uint32_t w) const {
    std::vector<std::uint32_t> out(d);
    for (std::size_t k = d; k > 0; --k) {
      out[k - 1] = layers_[k].words[w].last;
      w = layers_[k].words[w].parent;
    }
    return out;
  }

 private:
  struct Term {
    value_type coeff;
    std::uint32_t outer;
    std::uint32_t inner;
  };

  void finish_layer(Layer& l) const {
    l.first_column.assign(l.words.size() + 1, 0);
    for (std::size_t w = 0; w < l.words.size(); ++w)
      l.first_column[w + 1] = l.first_column[w] + static_cast<std::uint32_t>(out_arrows_[l.words[w].end].size());
    l.by_start.assign(n_, {});
    l.rank_in_start.resize(l.words.size());
    for (std::uint32_t w = 0; w < l.words.size(); ++w) {
      auto& list = l.by_start[l.words[w].start];
      l.rank_in_start[w] = static_cast<std::uint32_t>(list.size());
      list.push_back(w);
    }
  }

  void build_next() {
    const std::size_t d = degree() + 1;
    const Layer& prev = layers_[d - 1];
    const std::size_t ncols = prev.first_column.back();

    RowEchelon<F> ech(field_, ncols);
    if (d >= 2) {
      const Layer& prev2 = layers_[d - 2];
      Vec row;
      for (std::uint32_t u = 0; u < prev2.words.size(); ++u)
        for (const auto& rel : relations_by_start_[prev2.words[u].end]) {
          row.clear();
          for (const auto& t : rel)
            for (const auto& [z, c] : append(d - 2, u, t.inner))
              row.emplace_back(prev.first_column[z] + out_pos_[t.outer], field_.mul(t.coeff, c));
          ech.insert(row);
        }
      ech.reduce_fully();
    }

    Layer next;
    std::vector<std::uint32_t> word_of_col(ncols, kNone);
    for (std::uint32_t y = 0; y < prev.words.size(); ++y) {
      const auto& ys = prev.words[y];
      for (std::uint32_t k = 0; k < out_arrows_[ys.end].size(); ++k) {
        std::uint32_t c = prev.first_column[y] + k;
        if (ech.is_pivot(c)) continue;
        std::uint32_t arrow = out_arrows_[ys.end][k];
        word_of_col[c] = static_cast<std::uint32_t>(next.words.size());
        next.words.push_back({ys.start, heads_[arrow], y, arrow});
      }
    }
    next.column_nf.resize(ncols);
    for (std::uint32_t c = 0; c < ncols; ++c) {
      if (word_of_col[c] != kNone) {
        next.column_nf[c] = {{word_of_col[c], field_.one()}};
        continue;
      }
      // c + tail = 0 in A, so c = -tail.
      const auto& r = ech.pivot_row(c);
      Vec nf;
      nf.reserve(r.size() - 1);
      for (std::size_t k = 0; k + 1 < r.size(); ++k) nf.emplace_back(word_of_col[r[k].first], field_.neg(r[k].second));
      next.column_nf[c] = std::move(nf);
    }
    finish_layer(next);
    layers_.push_back(std::move(next));
  }

  F field_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> out_arrows_;
  std::vector<std::uint32_t> out_pos_;
  std::vector<std::uint32_t> heads_;
  std::vector<std::uint32_t> tails_;
  std::vector<std::vector<std::vector<Term>>> relations_by_start_;
  std::vector<Layer> layers_;
};

}  // namespace preproj
