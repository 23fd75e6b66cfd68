#include <gtest/gtest.h>

#include <functional>

#include <numeric>
#include <random>

#include "preproj/matrix.hpp"
#include "preproj/smith.hpp"
#include "support.hpp"

using namespace preproj;
using namespace testing_support;

namespace {

std::vector<std::vector<long>> random_dense(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi,
                                            double density) {
  std::uniform_int_distribution<int> v(lo, hi);
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<long>> m(r, std::vector<long>(c, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (keep(rng)) x = v(rng);
  return m;
}

// Determinantal divisors: gcd of all k x k minors (oracle for Smith forms).
BigInt det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d.get_num();
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<BigInt> smith_by_minors(const std::vector<std::vector<long>>& a) {
  const std::size_t r = a.size(), c = a[0].size();
  std::vector<BigInt> dk{1};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(r, k, rs);
    subsets(c, k, cs);
    BigInt g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a[ri[i]][ci[j]];
        BigInt dv = det(m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dv.get_mpz_t());
      }
    dk.push_back(g);
  }
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] == 0 ? BigInt(0) : BigInt(dk[k] / dk[k - 1]));
  return out;
}

}  // namespace

TEST(Matrix, RankMatchesDenseEliminationOverQ) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    auto d = random_dense(rng, r, c, -3, 3, 0.5);
    std::vector<std::vector<Rational>> q(r, std::vector<Rational>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) q[i][j] = d[i][j];
    EXPECT_EQ(rank(ExactMatrix::from_dense(d), FieldSpec::rationals()), dense_rank(q));
  }
}

TEST(Matrix, RankMatchesDenseEliminationModP) {
  std::mt19937_64 rng(2);
  for (std::int64_t p : {2, 3, 7}) {
    for (int t = 0; t < 100; ++t) {
      std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      auto d = random_dense(rng, r, c, -4, 4, 0.6);
      std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m[i][j] = d[i][j];
      EXPECT_EQ(rank(ExactMatrix::from_dense(d), FieldSpec::prime(static_cast<std::uint64_t>(p))), dense_rank_mod(m, p));
    }
  }
}

TEST(Matrix, FullyReducedTailsAvoidPivots) {
  std::mt19937_64 rng(3);
  RationalField f;
  RowEchelon<RationalField> ech(f, 10);
  for (int t = 0; t < 12; ++t) {
    SparseVec<Rational> row;
    for (std::uint32_t c = 0; c < 10; ++c)
      if (rng() % 3 == 0) row.emplace_back(c, Rational(static_cast<long>(rng() % 5) - 2));
    std::erase_if(row, [](const auto& e) { return e.second == 0; });
    ech.insert(row);
  }
  ech.reduce_fully();
  for (auto lead : ech.leads()) {
    const auto& r = ech.pivot_row(lead);
    EXPECT_EQ(r.back().first, lead);
    EXPECT_EQ(r.back().second, 1);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) EXPECT_FALSE(ech.is_pivot(r[k].first));
  }
}

TEST(Matrix, DuplicateIndicesAreSummed) {
  RationalField f;
  RowEchelon<RationalField> ech(f, 3);
  EXPECT_FALSE(ech.insert({{1, Rational(2)}, {1, Rational(-2)}}).has_value());
  EXPECT_EQ(ech.insert({{2, Rational(1)}, {0, Rational(1)}, {2, Rational(1)}}), 2u);
}

TEST(Matrix, LeftKernelAnnihilatesRows) {
  std::mt19937_64 rng(4);
  PrimeField f(5);
  for (int t = 0; t < 50; ++t) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 6;
    std::vector<SparseVec<std::uint64_t>> rows(r);
    for (auto& row : rows)
      for (std::uint32_t j = 0; j < c; ++j)
        if (rng() % 2) row.emplace_back(j, 1 + rng() % 4);
    const auto ker = left_kernel(f, c, rows);
    RowEchelon<PrimeField> ech(f, c);
    std::size_t rk = 0;
    for (const auto& row : rows) rk += ech.insert(row).has_value();
    EXPECT_EQ(ker.size(), r - rk);
    for (const auto& v : ker) {
      std::vector<std::uint64_t> sum(c, 0);
      for (const auto& [k, coef] : v)
        for (const auto& [j, x] : rows[k]) sum[j] = f.add(sum[j], f.mul(coef, x));
      for (auto s : sum) EXPECT_EQ(s, 0u);
    }
  }
}

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto d = random_dense(rng, r, c, -6, 6, 0.7);
    EXPECT_EQ(smith_normal_form(ExactMatrix::from_dense(d)), smith_by_minors(d)) << "trial " << t;
  }
}

TEST(Smith, KnownForms) {
  EXPECT_EQ(smith_normal_form(ExactMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})),
            (std::vector<BigInt>{2, 6, 12}));
  EXPECT_EQ(smith_normal_form(ExactMatrix::from_dense({{1, 1}, {1, -1}})), (std::vector<BigInt>{1, 2}));
  EXPECT_EQ(smith_normal_form(ExactMatrix::from_dense({{0, 0}, {0, 0}, {0, 0}})), (std::vector<BigInt>{0, 0}));
  ExactMatrix frac;
  frac.rows = frac.cols = 1;
  frac.entries.push_back({0, 0, Rational(1, 2)});
  EXPECT_THROW(smith_normal_form(frac), InputError);
}

TEST(Smith, DivisorChainAndRankOnLargerSparseMatrices) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    std::size_t r = 5 + rng() % 25, c = 5 + rng() % 25;
    auto d = random_dense(rng, r, c, -2, 2, 0.15);
    auto m = ExactMatrix::from_dense(d);
    auto s = smith_normal_form(m);
    ASSERT_EQ(s.size(), std::min(r, c));
    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] != 0) ++nonzero;
      if (k + 1 < s.size() && s[k] != 0 && s[k + 1] != 0) {
        EXPECT_EQ(s[k + 1] % s[k], 0);
      }
      if (k + 1 < s.size() && s[k] == 0) {
        EXPECT_EQ(s[k + 1], 0);
      }
    }
    EXPECT_EQ(nonzero, rank(m, FieldSpec::rationals()));
    for (std::uint64_t p : {2u, 3u}) {
      std::size_t units = 0;
      for (const auto& x : s)
        if (x != 0 && x % p != 0) ++units;
      EXPECT_EQ(units, rank(m, FieldSpec::prime(p)));
    }
  }
}

TEST(Smith, DenseBlocksStayTractable) {
  // Dense integer blocks that make naive Euclidean elimination blow up.
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    std::size_t r = 10 + rng() % 10, c = 10 + rng() % 30;
    auto d = random_dense(rng, r, c, -9, 9, 0.8);
    auto s = smith_normal_form(ExactMatrix::from_dense(d));
    std::vector<std::vector<Rational>> q(r, std::vector<Rational>(c));
    std::vector<std::vector<std::int64_t>> z(r, std::vector<std::int64_t>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) q[i][j] = z[i][j] = d[i][j];
    const auto rq = dense_rank(q);
    std::size_t nonzero = 0;
    for (const auto& x : s) nonzero += x != 0;
    EXPECT_EQ(nonzero, rq);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
      std::size_t divisible = 0;
      for (const auto& x : s) divisible += x != 0 && x % p == 0;
      EXPECT_EQ(rq - divisible, dense_rank_mod(z, p)) << "trial " << t << " prime " << p;
    }
  }
}

TEST(Smith, LargePrimeDivisorsThroughUnimodularMixing) {
  // U * diag(1, p, p q, 0) * V with unimodular U, V built from row and
  // column operations; p and q are primes beyond trial division.
  const long p = 1000003, q = 999983;
  std::vector<std::vector<long>> d{{1, 0, 0, 0, 0}, {0, p, 0, 0, 0}, {0, 0, p * q, 0, 0}, {0, 0, 0, 0, 0}};
  std::mt19937_64 rng(8);
  std::vector<std::vector<BigInt>> a(4, std::vector<BigInt>(5));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) a[i][j] = d[i][j];
  for (int k = 0; k < 40; ++k) {
    const std::size_t x = rng() % 4, y = rng() % 4, u = rng() % 5, v = rng() % 5;
    const long f = static_cast<long>(rng() % 5) - 2, g = static_cast<long>(rng() % 5) - 2;
    if (x != y)
      for (std::size_t j = 0; j < 5; ++j) a[x][j] += f * a[y][j];
    if (u != v)
      for (std::size_t i = 0; i < 4; ++i) a[i][u] += g * a[i][v];
  }
  std::vector<SparseVec<BigInt>> rows;
  for (const auto& row : a) {
    SparseVec<BigInt> sv;
    for (std::size_t j = 0; j < 5; ++j)
      if (row[j] != 0) sv.emplace_back(static_cast<std::uint32_t>(j), row[j]);
    rows.push_back(std::move(sv));
  }
  EXPECT_EQ(smith_normal_form(4, 5, std::move(rows)), (std::vector<BigInt>{1, p, BigInt(p) * q, 0}));
}
