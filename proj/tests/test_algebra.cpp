#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "preproj/algebra.hpp"
#include "preproj/families.hpp"
#include "support.hpp"

using namespace preproj;
using namespace testing_support;

namespace {

const FieldSpec Q = FieldSpec::rationals();

// Same algebra with generators and relations listed in a shuffled order.
Presentation shuffled(const Presentation& p, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(p.generators().size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Generator> gens(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) gens[perm[k]] = p.generators()[k];
  std::vector<Relation> rels;
  for (auto r : p.relations()) {
    for (auto& t : r.terms) {
      t.outer = perm[t.outer];
      t.inner = perm[t.inner];
    }
    std::shuffle(r.terms.begin(), r.terms.end(), rng);
    rels.push_back(std::move(r));
  }
  std::shuffle(rels.begin(), rels.end(), rng);
  return Presentation(p.vertices(), std::move(gens), std::move(rels), p.field());
}

// Walks on the doubled n-cycle by direct enumeration of arrow words.
IntMatrix enumerate_avoiding(std::size_t n, std::size_t d) {
  struct Arrow {
    std::size_t tail, head, base;
    bool star;
  };
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < n; ++i) arrows.push_back({i, (i + 1) % n, i, false});
  for (std::size_t i = 0; i < n; ++i) arrows.push_back({(i + 1) % n, i, i, true});
  IntMatrix out(n);
  std::vector<std::size_t> word;
  auto rec = [&](auto&& self, std::size_t start, std::size_t at) -> void {
    if (word.size() == d) {
      out(at, start) += 1;
      return;
    }
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      if (arrows[k].tail != at) continue;
      if (!word.empty()) {
        const auto& prev = arrows[word.back()];
        if (!prev.star && arrows[k].star && prev.base == arrows[k].base) continue;
      }
      word.push_back(k);
      self(self, start, arrows[k].head);
      word.pop_back();
    }
  };
  for (std::size_t s = 0; s < n; ++s) rec(rec, s, s);
  return out;
}

}  // namespace

TEST(Algebra, PreprojectiveRelations) {
  auto loop = preprojective_presentation(families::cycle(1));
  ASSERT_EQ(loop.relations().size(), 1u);
  EXPECT_EQ(loop.relations()[0].terms, (std::vector<RelationTerm>{{Rational(1), 0, 1}, {Rational(-1), 1, 0}}));

  // A(r): arrows 2 -> 1, vertex 1 black, vertex 2 white.
  auto ar = preprojective_presentation(families::star({3}, {1}));
  ASSERT_EQ(ar.relations().size(), 1u);
  for (const auto& t : ar.relations()[0].terms) {
    EXPECT_EQ(t.coeff, 1);
    EXPECT_LT(t.outer, 3u);
    EXPECT_EQ(t.inner, t.outer + 3);
  }
  EXPECT_EQ(ar.relations()[0].terms.size(), 3u);

  auto all_white = preprojective_presentation(families::star({1, 2}, {0, 1, 2}));
  EXPECT_TRUE(all_white.relations().empty());

  for (const auto& q : {families::cycle(3), families::affine_d4(), families::star({2, 1}, {2})})
    EXPECT_EQ(preprojective_presentation(q).relation_matrix(), relation_count_matrix(q));
}

TEST(Algebra, SmallGradedDimensions) {
  auto loop = preprojective_presentation(families::cycle(1));
  EXPECT_EQ(graded_dimension(loop, 2), IntMatrix{{3}});
  EXPECT_EQ(hilbert_series(loop, 3), MatrixSeries({IntMatrix{{1}}, IntMatrix{{2}}, IntMatrix{{3}}, IntMatrix{{4}}}));
  auto a2 = preprojective_presentation(families::linear(2));
  EXPECT_TRUE(graded_dimension(a2, 2).is_zero());
  auto a1 = preprojective_presentation(families::star({1}, {1}));
  auto h = hilbert_series(a1, 2);
  EXPECT_EQ(h[1], (IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(h[2], (IntMatrix{{0, 0}, {0, 1}}));
}

TEST(Algebra, PathAlgebraCountsPaths) {
  for (const auto& q : {families::cycle(3), families::star({1, 2, 2}), families::parallel(2)}) {
    std::vector<std::size_t> all(q.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    auto p = preprojective_presentation(q.with_white(all));
    EXPECT_EQ(hilbert_series(p, 6), geometric(adjacency_double(q), 6));
  }
  auto free2 = preprojective_presentation(families::loops(1).with_white({0}));
  for (std::size_t d = 0; d <= 10; ++d) EXPECT_EQ(hilbert_series(free2, 10)[d](0, 0), std::int64_t{1} << d);
}

TEST(Algebra, EngineMatchesBruteForce) {
  std::mt19937_64 rng(101);
  const FieldSpec fields[] = {Q, FieldSpec::prime(2), FieldSpec::prime(3)};
  for (int t = 0; t < 120; ++t) {
    auto p = random_presentation(rng, 3, 4, 3, fields[t % 3]);
    auto h = hilbert_series(p, 5);
    EXPECT_EQ(h[0], IntMatrix::identity(p.vertex_count()));
    EXPECT_EQ(h[1], p.generator_matrix());
    for (std::size_t d = 0; d <= 5; ++d) EXPECT_EQ(h[d], graded_dimension(p, d)) << "trial " << t << " degree " << d;
  }
  for (const auto& q : {families::cycle(2), families::affine_d4(), families::loops(2)}) {
    auto p = preprojective_presentation(q);
    auto h = hilbert_series(p, 5);
    for (std::size_t d = 0; d <= 5; ++d) EXPECT_EQ(h[d], graded_dimension(p, d));
  }
}

TEST(Algebra, IndependentOfListingOrder) {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 80; ++t) {
    auto p = random_presentation(rng, 3, 5, 3);
    auto s = shuffled(p, rng);
    EXPECT_EQ(hilbert_series(p, 6), hilbert_series(s, 6));
    EXPECT_EQ(graded_dimension(p, 4), graded_dimension(s, 4));
  }
}

TEST(Algebra, FreeProductSeries) {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 2;
    auto p1 = random_presentation_on(rng, n, 3, 2), p2 = random_presentation_on(rng, n, 3, 2);
    auto fp = free_product(p1, p2);
    EXPECT_EQ(hilbert_series(fp, 7), free_product_series(hilbert_series(p1, 7), hilbert_series(p2, 7), 7));
  }
  auto loop = path_algebra(families::numbered(1), {{"x", 0, 0}});
  auto fp = free_product(loop, loop);
  EXPECT_EQ(fp.generators()[1].name, "x'");
  EXPECT_EQ(hilbert_series(fp, 8), geometric(IntMatrix{{2}}, 8));
  auto p = preprojective_presentation(families::cycle(2));
  EXPECT_EQ(free_product(p, path_algebra(p.vertices(), {})), p);
}

TEST(Algebra, FreeProductOfArmsIsTheStar) {
  // With the node white, each arm contributes its own relation.
  const std::vector<std::size_t> arms{1, 2, 2};
  auto whole = preprojective_presentation(families::star(arms, {3}));
  std::optional<Presentation> prod;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    std::vector<std::size_t> one(arms.size(), 0);
    one[i] = arms[i];
    auto part = preprojective_presentation(families::star(one, {3}));
    prod = prod ? free_product(*prod, part) : part;
  }
  EXPECT_EQ(hilbert_series(*prod, 8), hilbert_series(whole, 8));
}

TEST(Algebra, AssociatedGradedDominates) {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 60; ++t) {
    auto p = random_presentation(rng, 3, 4, 3);
    std::vector<std::size_t> w;
    for (std::size_t k = 0; k < p.generators().size(); ++k) w.push_back(rng() % 3);
    auto h = hilbert_series(p, 7), hg = hilbert_series(associated_graded(p, w), 7);
    EXPECT_TRUE(termwise_compare(hg, h).first_geq()) << "trial " << t;
  }
  auto p = preprojective_presentation(families::cycle(3));
  EXPECT_EQ(associated_graded(p, std::vector<std::size_t>(6, 2)), p);
}

TEST(Algebra, StarDegeneratesToFreeProduct) {
  // A(3) with a1, a1* in degree one keeps only a1 a1*, which is A(1) free
  // product with the path algebra on the other arrows.
  auto a3 = preprojective_presentation(families::star({3}, {1}));
  auto g = associated_graded(a3, weights_by_name(a3, {{"a1_1", 1}, {"a1_1*", 1}}));
  ASSERT_EQ(g.relations().size(), 1u);
  EXPECT_EQ(g.relations()[0].terms.size(), 1u);
  EXPECT_EQ(g.generators()[g.relations()[0].terms[0].outer].name, "a1_1");
  auto a1 = preprojective_presentation(families::star({1}, {1}));
  auto rest = path_algebra(a1.vertices(), {{"b", 1, 0}, {"b*", 0, 1}, {"c", 1, 0}, {"c*", 0, 1}});
  EXPECT_EQ(hilbert_series(g, 8), hilbert_series(free_product(a1, rest), 8));
  EXPECT_TRUE(termwise_compare(hilbert_series(g, 8), hilbert_series(a3, 8)).first_geq());
}

TEST(Algebra, AvoidingPathsMatchEnumeration) {
  auto one = count_avoiding_paths(1, 2);
  EXPECT_EQ(one[1](0, 0), 2);
  EXPECT_EQ(one[2](0, 0), 3);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto s = count_avoiding_paths(n, 7);
    EXPECT_EQ(s[0], IntMatrix::identity(n));
    for (std::size_t d = 1; d <= 7; ++d) EXPECT_EQ(s[d], enumerate_avoiding(n, d)) << n << " " << d;
  }
  EXPECT_EQ(count_avoiding_paths(2, 10), closed_form(adjacency_double(families::cycle(2)), IntMatrix::identity(2), 10));
  EXPECT_THROW(count_avoiding_paths(0, 3), InputError);
}

TEST(Algebra, GammaDoesNotChangeTheSeries) {
  std::mt19937_64 rng(505);
  const auto base = families::cycle(3);
  const auto f7 = FieldSpec::prime(7);
  const auto plain = hilbert_series(preprojective_presentation(base, f7), 8);
  const auto tree = families::star({1, 1, 1});
  const auto tree_plain = hilbert_series(preprojective_presentation(tree), 7);
  for (int t = 0; t < 10; ++t) {
    std::map<std::string, Rational> g;
    for (const auto& a : double_quiver(base).arrows) g[a.name] = Rational(1 + static_cast<long>(rng() % 6));
    EXPECT_EQ(hilbert_series(preprojective_presentation(base.with_gamma(g), f7), 8), plain);
    std::map<std::string, Rational> gt;
    for (const auto& a : double_quiver(tree).arrows)
      gt[a.name] = Rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3)) * (rng() % 2 ? 1 : -1);
    EXPECT_EQ(hilbert_series(preprojective_presentation(tree.with_gamma(gt)), 7), tree_plain);
  }
}

TEST(Algebra, RejectsBadInput) {
  auto p = preprojective_presentation(families::cycle(2));
  EXPECT_THROW(free_product(p, preprojective_presentation(families::cycle(3))), InputError);
  EXPECT_THROW(free_product(p, p.over(FieldSpec::prime(2))), InputError);
  EXPECT_THROW(associated_graded(p, {1, 2}), InputError);
  EXPECT_THROW(weights_by_name(p, {{"zz", 1}}), InputError);
  EXPECT_THROW(preprojective_presentation(families::cycle(2).with_gamma({{"a1", Rational(2)}})), InputError);
  std::map<std::string, Rational> g{{"a1", 7}, {"a1*", 1}, {"a2", 1}, {"a2*", 1}};
  EXPECT_THROW(preprojective_presentation(families::cycle(2).with_gamma(g), FieldSpec::prime(7)), InputError);
  const std::vector<Generator> gens{{"x", 0, 1}, {"y", 0, 1}};
  EXPECT_THROW(Presentation(families::numbered(2), gens, {Relation{{{Rational(1), 0, 1}}}}), InputError);
  const std::vector<Generator> loops{{"x", 0, 0}};
  EXPECT_THROW(Presentation(families::numbered(1), loops, {Relation{{{Rational(2), 0, 0}}}}, FieldSpec::prime(2)),
               InputError);
  EXPECT_THROW(Presentation(families::numbered(1), loops, {Relation{}}), InputError);
}
