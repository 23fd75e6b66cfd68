#pragma once

// Graded free right A-modules F = ⊕_g g·A and degreewise minimal resolutions
// of R = A/A_+.
//
// A basis element of F[d] is (g, w) with w a normal word of degree
// d - deg(g) starting where g ends; elements are ordered by generator and
// then by the word's rank among words with the same start. The right action
// appends letters, so boundary images are built incrementally:
// ∂(g·wx) = ∂(g·w)·x.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "preproj/graded_quotient.hpp"
#include "preproj/matrix.hpp"
#include "preproj/series.hpp"

namespace preproj {

template <ExactField F>
class FreeModules {
 public:
  using Quotient = GradedQuotient<F>;
  using Vec = typename Quotient::Vec;
  static constexpr std::uint32_t kNone = Quotient::kNone;

  struct Gen {
    std::size_t degree = 0;
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    Vec boundary;  // in the basis of the level below, degree `degree`
  };

  struct Basis {
    std::vector<std::uint32_t> offset;  // per generator; kNone if deg > d
    std::vector<std::uint32_t> gen;
    std::vector<std::uint32_t> word;
    std::vector<std::uint32_t> block;  // end * n + start
    std::size_t size() const { return gen.size(); }
  };

  explicit FreeModules(const Quotient& a) : a_(a), n_(a.vertex_count()) {}

  const Quotient& algebra() const { return a_; }
  std::size_t block_count() const { return n_ * n_; }

  Basis basis(const std::vector<Gen>& gens, std::size_t d) const {
    Basis b;
    b.offset.assign(gens.size(), kNone);
    for (std::uint32_t g = 0; g < gens.size(); ++g)
      if (gens[g].degree <= d) add_generator(b, gens, g, d);
    return b;
  }

  /// Appends generator g (of degree <= d) to an existing basis of degree d.
  void add_generator(Basis& b, const std::vector<Gen>& gens, std::uint32_t g, std::size_t d) const {
    const std::size_t e = d - gens[g].degree;
    const auto& layer = a_.layer(e);
    if (b.offset.size() <= g) b.offset.resize(g + 1, kNone);
    b.offset[g] = static_cast<std::uint32_t>(b.gen.size());
    for (auto w : layer.by_start[gens[g].end]) {
      b.gen.push_back(g);
      b.word.push_back(w);
      b.block.push_back(layer.words[w].end * static_cast<std::uint32_t>(n_) + gens[g].start);
    }
  }

  /// Images of every element of `self` (degree d) in the level below,
  /// given the images at degree d-1.
  std::vector<Vec> images(const std::vector<Gen>& gens, const std::vector<Gen>& lower, std::size_t d, const Basis& self,
                          const Basis& self_prev, const std::vector<Vec>& prev_images, const Basis& lower_prev,
                          const Basis& lower_cur) const {
    std::vector<Vec> out(self.size());
    for (std::size_t k = 0; k < self.size(); ++k) {
      const auto g = self.gen[k];
      const std::size_t e = d - gens[g].degree;
      if (e == 0) {
        out[k] = gens[g].boundary;
        continue;
      }
      const auto& w = a_.layer(e).words[self.word[k]];
      const auto& src = prev_images[self_prev.offset[g] + a_.layer(e - 1).rank_in_start[w.parent]];
      out[k] = shift(src, w.last, lower, d, lower_prev, lower_cur);
    }
    return out;
  }

  /// Per-block counts of a basis.
  std::vector<std::int64_t> block_sizes(const Basis& b) const {
    std::vector<std::int64_t> c(block_count(), 0);
    for (auto blk : b.block) ++c[blk];
    return c;
  }

  IntMatrix to_matrix(const std::vector<std::int64_t>& per_block) const {
    IntMatrix m(n_);
    for (std::size_t b = 0; b < per_block.size(); ++b) m(b / n_, b % n_) = per_block[b];
    return m;
  }

  /// Level 0: one generator e_v per vertex.
  std::vector<Gen> vertex_generators() const {
    std::vector<Gen> gens;
    for (std::uint32_t v = 0; v < n_; ++v) gens.push_back({0, v, v, {}});
    return gens;
  }

  /// Level 1: one generator per arrow x, mapping to e_tail(x)·x.
  std::vector<Gen> arrow_generators(const Basis& level0_deg1) const {
    std::vector<Gen> gens;
    for (std::uint32_t x = 0; x < a_.generator_count(); ++x) {
      const auto t = a_.tail(x);
      const auto w = a_.generator_word(x);
      const auto idx = level0_deg1.offset[t] + a_.layer(1).rank_in_start[w];
      gens.push_back({1, t, a_.head(x), {{idx, a_.field().one()}}});
    }
    return gens;
  }

 private:
  // (sum_j c_j (g_j, w_j)) · x, reduced to normal words.
  Vec shift(const Vec& src, std::uint32_t x, const std::vector<Gen>& lower, std::size_t d, const Basis& lower_prev,
            const Basis& lower_cur) const {
    const auto& f = a_.field();
    Vec acc;
    for (const auto& [j, c] : src) {
      const auto g = lower_prev.gen[j];
      const std::size_t e = d - 1 - lower[g].degree;
      const auto& next_layer = a_.layer(e + 1);
      for (const auto& [z, c2] : a_.append(e, lower_prev.word[j], x))
        acc.emplace_back(lower_cur.offset[g] + next_layer.rank_in_start[z], f.mul(c, c2));
    }
    std::sort(acc.begin(), acc.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    Vec out;
    out.reserve(acc.size());
    for (auto& [i, v] : acc) {
      if (!out.empty() && out.back().first == i)
        out.back().second = f.add(out.back().second, v);
      else
        out.emplace_back(i, std::move(v));
    }
    std::erase_if(out, [&](const auto& e) { return f.is_zero(e.second); });
    return out;
  }

  const Quotient& a_;
  std::size_t n_;
};

/// Graded Tor_i^A(R, R) dimensions for i <= i_max and internal degree <= d_max.
struct TorTable {
  std::size_t i_max = 0;
  std::size_t d_max = 0;
  std::vector<std::vector<IntMatrix>> dims;  // [i][d]
  /// Highest internal degree computed in full; below d_max means partial.
  std::optional<std::size_t> complete_through;

  bool partial() const { return complete_through != d_max; }
  const IntMatrix& at(std::size_t i, std::size_t d) const { return dims.at(i).at(d); }
  bool operator==(const TorTable&) const = default;

  /// h_{Tor_i}(t) up to d_max.
  MatrixSeries series(std::size_t i) const { return MatrixSeries(dims.at(i)); }
};

struct ResolutionLimits {
  /// Largest free-module degree piece the resolution will build.
  std::size_t max_basis = 3'000'000;
};

template <ExactField F>
TorTable minimal_resolution(const Presentation& p, const F& field, std::size_t i_max, std::size_t d_max,
                            const ResolutionLimits& limits = {}) {
  using FM = FreeModules<F>;
  using Vec = typename FM::Vec;
  using Basis = typename FM::Basis;
  using Gen = typename FM::Gen;

  GradedQuotient<F> a(p, field);
  a.extend_to(d_max);
  const FM fm(a);
  const std::size_t n = p.vertex_count();
  const std::size_t nb = fm.block_count();

  TorTable t;
  t.i_max = i_max;
  t.d_max = d_max;
  t.dims.assign(i_max + 1, std::vector<IntMatrix>(d_max + 1, IntMatrix(n)));
  t.dims[0][0] = IntMatrix::identity(n);

  std::vector<std::vector<Gen>> gens(i_max + 1);
  gens[0] = fm.vertex_generators();
  if (i_max >= 1 && d_max >= 1) gens[1] = fm.arrow_generators(fm.basis(gens[0], 1));

  std::vector<Basis> prev_basis(i_max + 1), cur_basis(i_max + 1);
  std::vector<std::vector<Vec>> prev_images(i_max + 1), cur_images(i_max + 1);

  for (std::size_t d = 0; d <= d_max; ++d) {
    cur_basis[0] = fm.basis(gens[0], d);
    // Rank of the augmentation F_0 -> R in each block.
    std::vector<std::int64_t> rank_below(nb, 0);
    if (d == 0)
      for (std::size_t v = 0; v < n; ++v) rank_below[v * n + v] = 1;

    bool over_cap = cur_basis[0].size() > limits.max_basis;
    for (std::size_t lvl = 1; lvl <= i_max && !over_cap; ++lvl) {
      Basis& self = cur_basis[lvl];
      self = fm.basis(gens[lvl], d);
      if (self.size() > limits.max_basis) {
        over_cap = true;
        break;
      }
      const auto below_sizes = fm.block_sizes(cur_basis[lvl - 1]);
      std::vector<std::int64_t> kernel_below(nb);
      for (std::size_t b = 0; b < nb; ++b) kernel_below[b] = below_sizes[b] - rank_below[b];

      std::vector<std::int64_t> rank_here(nb, 0);
      if (lvl == 1) {
        // A is generated in degree 1, so F_1 -> F_0 is onto A_+; its
        // generators were placed in degree 1 up front.
        if (d >= 1) rank_here = kernel_below;
        if (d == 1)
          for (const auto& g : gens[1]) t.dims[1][1](g.end, g.start) += 1;
        cur_images[1] = d == 0 ? std::vector<Vec>{}
                               : fm.images(gens[1], gens[0], d, self, prev_basis[1], prev_images[1], prev_basis[0],
                                           cur_basis[0]);
        rank_below = rank_here;
        continue;
      }

      cur_images[lvl] = fm.images(gens[lvl], gens[lvl - 1], d, self, prev_basis[lvl], prev_images[lvl],
                                  prev_basis[lvl - 1], cur_basis[lvl - 1]);
      RowEchelon<F> ech(field, cur_basis[lvl - 1].size());
      for (std::size_t k = 0; k < self.size(); ++k)
        if (ech.insert(cur_images[lvl][k])) ++rank_here[self.block[k]];

      for (std::size_t b = 0; b < nb; ++b) {
        std::int64_t missing = kernel_below[b] - rank_here[b];
        if (missing < 0) throw std::logic_error("resolution: image exceeds kernel");
        if (missing == 0) continue;
        // Kernel of the map one level down, restricted to this block.
        const Basis& below = cur_basis[lvl - 1];
        std::vector<std::uint32_t> members;
        std::vector<Vec> rows;
        for (std::uint32_t k = 0; k < below.size(); ++k)
          if (below.block[k] == b) {
            members.push_back(k);
            rows.push_back(cur_images[lvl - 1][k]);
          }
        const auto kernel = left_kernel(field, cur_basis[lvl - 2].size(), rows);
        for (const auto& kv : kernel) {
          if (missing == 0) break;
          Vec v;
          for (const auto& [k, c] : kv) v.emplace_back(members[k], c);
          if (!ech.insert(v)) continue;
          const auto g = static_cast<std::uint32_t>(gens[lvl].size());
          gens[lvl].push_back({d, static_cast<std::uint32_t>(b % n), static_cast<std::uint32_t>(b / n), v});
          fm.add_generator(self, gens[lvl], g, d);
          cur_images[lvl].push_back(std::move(v));
          t.dims[lvl][d](b / n, b % n) += 1;
          ++rank_here[b];
          --missing;
        }
        if (missing != 0) throw std::logic_error("resolution: kernel lift failed");
      }
      rank_below = rank_here;
    }
    if (over_cap) return t;
    t.complete_through = d;
    std::swap(prev_basis, cur_basis);
    std::swap(prev_images, cur_images);
  }
  return t;
}

}  // namespace preproj
