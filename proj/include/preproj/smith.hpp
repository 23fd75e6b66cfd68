#pragma once

// Smith normal form of integer matrices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "preproj/matrix.hpp"

namespace preproj {

namespace detail {

using IntRow = SparseVec<BigInt>;

inline const BigInt* find_entry(const IntRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// dst -= f * src
inline void int_sub_mul(IntRow& dst, const BigInt& f, const IntRow& src) {
  IntRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, -f * src[j].second);
      ++j;
    } else {
      BigInt v = dst[i].second - f * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

// Fraction-free elimination with full pivoting. Returns the rank and the
// last pivot, which is a nonzero rank-sized minor (entries stay minors, so
// their size is bounded).
inline std::pair<std::size_t, BigInt> bareiss_rank_minor(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  BigInt prev = 1;
  std::size_t k = 0;
  for (; k < rows && k < cols; ++k) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(a[k], a[pr]);
    for (auto& r : a) std::swap(r[k], r[pc]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        BigInt v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return {k, abs(prev)};
}

// Pollard-Brent factor search; n must be composite.
inline BigInt pollard_brent(const BigInt& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, g = 1, q = 1, ys;
    std::size_t r = 1;
    auto f = [&](const BigInt& v) {
      BigInt out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    while (g == 1) {
      x = y;
      for (std::size_t i = 0; i < r; ++i) y = f(y);
      for (std::size_t k = 0; k < r && g == 1; k += 128) {
        ys = y;
        for (std::size_t i = 0; i < std::min<std::size_t>(128, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(BigInt n, std::map<BigInt, std::size_t>& out) {
  for (unsigned long p = 2; p < 10000 && n > 1; ++p)
    while (n % p == 0) {
      ++out[BigInt(p)];
      n /= p;
    }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

inline std::size_t valuation(const BigInt& x, const BigInt& p) {
  std::size_t v = 0;
  BigInt y = x;
  while (y != 0 && y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

// Valuations at p of the nonzero invariant factors, by elimination over
// Z/p^(e+1) where p^e bounds every such factor. Ascending.
inline std::vector<std::size_t> local_valuations(std::vector<std::vector<BigInt>> a, const BigInt& p, std::size_t e) {
  BigInt mod;
  mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), e + 1);
  auto red = [&](BigInt& x) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()); };
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (auto& r : a)
    for (auto& x : r) red(x);
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    std::size_t pr = rows, pc = cols, best = e + 1;
    for (std::size_t i = t; i < rows && best > 0; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        const auto v = valuation(a[i][j], p);
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
          if (v == 0) break;
        }
      }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& r : a) std::swap(r[t], r[pc]);
    BigInt pv, unit = a[t][t], inv;
    mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), best);
    mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), pv.get_mpz_t());
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      BigInt f;
      mpz_divexact(f.get_mpz_t(), a[i][t].get_mpz_t(), pv.get_mpz_t());
      f *= inv;
      red(f);
      for (std::size_t j = t; j < cols; ++j) {
        a[i][j] -= f * a[t][j];
        red(a[i][j]);
      }
    }
    // The pivot divides the rest of its row, so clearing the row leaves the
    // trailing block untouched.
    out.push_back(best);
  }
  return out;
}

// Nonzero invariant factors of a dense integer matrix, ascending.
inline std::vector<BigInt> dense_smith(const std::vector<std::vector<BigInt>>& a) {
  const auto [rank, minor] = bareiss_rank_minor(a);
  std::vector<BigInt> diag(rank, BigInt(1));
  if (rank == 0) return diag;
  std::map<BigInt, std::size_t> primes;
  factor_into(minor, primes);
  for (const auto& [p, e] : primes) {
    const auto vals = local_valuations(a, p, e);
    if (vals.size() != rank) throw std::logic_error("smith_normal_form: local rank disagrees with rank over Q");
    for (std::size_t i = 0; i < rank; ++i) {
      BigInt pw;
      mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), vals[i]);
      diag[i] *= pw;
    }
  }
  return diag;
}

}  // namespace detail

/// Elementary divisors d1 | d2 | ... of an integer matrix: min(rows, cols)
/// values, nonzero ones ascending, followed by zeros.
///
/// Unit entries are eliminated sparsely first (each contributes a divisor 1
/// without disturbing the rest of the Smith form); the remaining block goes
/// through a dense reduction.
inline std::vector<BigInt> smith_normal_form(std::size_t rows, std::size_t cols, std::vector<SparseVec<BigInt>> m) {
  using detail::IntRow;
  std::vector<BigInt> divisors;
  std::vector<std::uint8_t> row_alive(m.size(), 1);
  std::vector<std::vector<std::uint32_t>> col_rows(cols);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (const auto& [c, v] : m[r]) col_rows[c].push_back(static_cast<std::uint32_t>(r));

  std::size_t units = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (!row_alive[r] || m[r].empty()) continue;
      // Prefer the unit whose column is shortest to limit fill-in.
      std::uint32_t best = 0;
      std::size_t best_len = SIZE_MAX;
      for (const auto& [c, v] : m[r])
        if ((v == 1 || v == -1) && col_rows[c].size() < best_len) {
          best = c;
          best_len = col_rows[c].size();
        }
      if (best_len == SIZE_MAX) continue;
      const BigInt u = *detail::find_entry(m[r], best);
      const IntRow pivot = m[r];
      row_alive[r] = 0;
      for (std::uint32_t s : col_rows[best]) {
        if (s == r || !row_alive[s]) continue;
        const BigInt* e = detail::find_entry(m[s], best);
        if (!e) continue;
        BigInt f = *e * u;  // u = +-1, so e / u = e * u
        detail::int_sub_mul(m[s], f, pivot);
        // Stale or repeated entries in col_rows are harmless: lookups recheck.
        for (const auto& [c, v] : pivot)
          if (c != best) col_rows[c].push_back(s);
      }
      col_rows[best].clear();
      m[r].clear();
      ++units;
      progress = true;
    }
  }

  // Remaining live rows restricted to columns still in use.
  std::vector<std::uint32_t> live_cols;
  std::vector<std::int64_t> col_map(cols, -1);
  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (!row_alive[r] || m[r].empty()) continue;
    live_rows.push_back(r);
    for (const auto& [c, v] : m[r])
      if (col_map[c] < 0) {
        col_map[c] = static_cast<std::int64_t>(live_cols.size());
        live_cols.push_back(c);
      }
  }
  std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size(), 0));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, v] : m[live_rows[i]]) dense[i][static_cast<std::size_t>(col_map[c])] = v;

  for (std::size_t k = 0; k < units; ++k) divisors.emplace_back(1);
  auto rest = detail::dense_smith(dense);
  for (auto& d : rest) divisors.push_back(std::move(d));
  const std::size_t total = std::min(rows, cols);
  while (divisors.size() < total) divisors.emplace_back(0);
  return divisors;
}

/// Elementary divisors of an ExactMatrix with integer entries.
inline std::vector<BigInt> smith_normal_form(const ExactMatrix& m) {
  std::vector<SparseVec<BigInt>> rows;
  for (const auto& r : m.sparse_rows()) {
    SparseVec<BigInt> ir;
    for (const auto& [c, v] : r) {
      if (v.get_den() != 1) throw InputError("smith_normal_form needs integer entries, got " + v.get_str());
      ir.emplace_back(c, v.get_num());
    }
    rows.push_back(std::move(ir));
  }
  return smith_normal_form(m.rows, m.cols, std::move(rows));
}

}  // namespace preproj
