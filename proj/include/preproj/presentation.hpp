#pragma once

// Quadratic presentations T_R(V)/(E) over the vertex ring R.
//
// Convention: paths compose right to left. A relation term c * (outer o inner)
// means "traverse inner, then outer", so it runs from tail(inner) to
// head(outer). Degree-d dimensions are |I| x |I| matrices whose (i, j) entry
// counts paths from j to i.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "preproj/field.hpp"
#include "preproj/quiver.hpp"
#include "preproj/series.hpp"

namespace preproj {

struct Generator {
  std::string name;
  std::size_t tail = 0;
  std::size_t head = 0;
  bool operator==(const Generator&) const = default;
};

struct RelationTerm {
  Rational coeff;
  std::size_t outer = 0;  // applied second
  std::size_t inner = 0;  // applied first
  bool operator==(const RelationTerm&) const = default;
};

struct Relation {
  std::vector<RelationTerm> terms;
  bool operator==(const Relation&) const = default;
};

class Presentation {
 public:
  Presentation() = default;

  /// Validates composability, block homogeneity and nonzero coefficients
  /// in `field`. Terms on the same (outer, inner) pair are merged; relations
  /// that vanish in `field` are rejected.
  Presentation(std::vector<std::string> vertices, std::vector<Generator> generators, std::vector<Relation> relations,
               FieldSpec field = FieldSpec::rationals())
      : vertices_(std::move(vertices)), generators_(std::move(generators)), field_(field) {
    for (const auto& g : generators_)
      if (g.tail >= vertices_.size() || g.head >= vertices_.size())
        throw InputError("generator '" + g.name + "' has an unknown endpoint");
    for (auto& r : relations) relations_.push_back(normalise(std::move(r)));
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const FieldSpec& field() const { return field_; }

  std::size_t relation_start(const Relation& r) const { return generators_[r.terms.front().inner].tail; }
  std::size_t relation_end(const Relation& r) const { return generators_[r.terms.front().outer].head; }

  /// dim V_{ij}: generators from j to i.
  IntMatrix generator_matrix() const {
    IntMatrix c(vertex_count());
    for (const auto& g : generators_) c(g.head, g.tail) += 1;
    return c;
  }

  /// Number of listed relations in each block (end, start).
  IntMatrix relation_matrix() const {
    IntMatrix d(vertex_count());
    for (const auto& r : relations_) d(relation_end(r), relation_start(r)) += 1;
    return d;
  }

  /// Same algebra over another field (coefficients are re-validated).
  Presentation over(const FieldSpec& f) const { return Presentation(vertices_, generators_, relations_, f); }

  bool operator==(const Presentation&) const = default;

 private:
  Relation normalise(Relation r) const {
    if (r.terms.empty()) throw InputError("empty relation");
    std::map<std::pair<std::size_t, std::size_t>, Rational> merged;
    for (const auto& t : r.terms) {
      if (t.outer >= generators_.size() || t.inner >= generators_.size()) throw InputError("relation uses an unknown generator");
      if (generators_[t.inner].head != generators_[t.outer].tail)
        throw InputError("relation term " + generators_[t.outer].name + "∘" + generators_[t.inner].name + " is not a path");
      merged[{t.outer, t.inner}] += t.coeff;
    }
    Relation out;
    std::size_t start = generators_[r.terms.front().inner].tail, end = generators_[r.terms.front().outer].head;
    visit_field(field_, [&](const auto& field) {
      for (const auto& [key, c] : merged) {
        if (field.is_zero(field.from_rational(c))) continue;
        if (generators_[key.second].tail != start || generators_[key.first].head != end)
          throw InputError("relation is not block-homogeneous");
        out.terms.push_back({c, key.first, key.second});
      }
    });
    if (out.terms.empty()) throw InputError("relation vanishes over " + field_.to_string());
    return out;
  }

  std::vector<std::string> vertices_;
  std::vector<Generator> generators_;
  std::vector<Relation> relations_;
  FieldSpec field_;
};

/// Generators = arrows of the double (Q's arrows, then their stars); one
/// relation per black vertex i carrying arrows:
///   sum_{h(a)=i} gamma_a a a*  -  sum_{t(a)=i} gamma_{a*} a* a.
/// Without gamma every weight is 1. With gamma, every weight that appears in
/// a relation must be given.
inline Presentation preprojective_presentation(const Quiver& q, const FieldSpec& field = FieldSpec::rationals()) {
  const auto dq = double_quiver(q);
  std::vector<Generator> gens;
  for (const auto& a : dq.arrows) gens.push_back({a.name, a.tail, a.head});
  auto weight = [&](std::size_t k) -> Rational {
    if (!q.has_gamma()) return 1;
    auto it = q.gamma().find(dq.arrows[k].name);
    if (it == q.gamma().end()) throw InputError("gamma value missing for arrow '" + dq.arrows[k].name + "'");
    return it->second;
  };
  std::vector<Relation> rels;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (q.is_white(v)) continue;
    Relation r;
    for (std::size_t k = 0; k < dq.original_count(); ++k) {
      const auto& a = q.arrows()[k];
      if (a.head == v) r.terms.push_back({weight(k), k, dq.star(k)});    // a ∘ a*
      if (a.tail == v) r.terms.push_back({-weight(dq.star(k)), dq.star(k), k});  // a* ∘ a
    }
    if (!r.terms.empty()) {
      visit_field(field, [&](const auto& f) {
        for (const auto& t : r.terms)
          if (f.is_zero(f.from_rational(t.coeff)))
            throw InputError("gamma value " + t.coeff.get_str() + " vanishes over " + field.to_string());
      });
      rels.push_back(std::move(r));
    }
  }
  return Presentation(q.vertices(), std::move(gens), std::move(rels), field);
}

/// Free algebra on the given generators (no relations).
inline Presentation path_algebra(std::vector<std::string> vertices, std::vector<Generator> gens,
                                 const FieldSpec& field = FieldSpec::rationals()) {
  return Presentation(std::move(vertices), std::move(gens), {}, field);
}

/// Generators and relations concatenated; clashing generator names from p2
/// get a prime appended until unique.
inline Presentation free_product(const Presentation& p1, const Presentation& p2) {
  if (p1.vertices() != p2.vertices()) throw InputError("free_product: vertex sets differ");
  if (p1.field() != p2.field()) throw InputError("free_product: fields differ");
  std::vector<Generator> gens = p1.generators();
  std::set<std::string> names;
  for (const auto& g : gens) names.insert(g.name);
  const std::size_t shift = gens.size();
  for (auto g : p2.generators()) {
    while (names.count(g.name)) g.name += "'";
    names.insert(g.name);
    gens.push_back(g);
  }
  std::vector<Relation> rels = p1.relations();
  for (auto r : p2.relations()) {
    for (auto& t : r.terms) {
      t.outer += shift;
      t.inner += shift;
    }
    rels.push_back(std::move(r));
  }
  return Presentation(p1.vertices(), std::move(gens), std::move(rels), p1.field());
}

/// Degeneration along the filtration given by generator weights: each
/// relation keeps only its terms of maximal total weight.
inline Presentation associated_graded(const Presentation& p, const std::vector<std::size_t>& weights) {
  if (weights.size() != p.generators().size()) throw InputError("associated_graded: one weight per generator required");
  std::vector<Relation> rels;
  for (const auto& r : p.relations()) {
    std::size_t top = 0;
    for (const auto& t : r.terms) top = std::max(top, weights[t.outer] + weights[t.inner]);
    Relation kept;
    for (const auto& t : r.terms)
      if (weights[t.outer] + weights[t.inner] == top) kept.terms.push_back(t);
    rels.push_back(std::move(kept));
  }
  return Presentation(p.vertices(), p.generators(), std::move(rels), p.field());
}

/// Weights by generator name; unnamed generators get weight 0.
inline std::vector<std::size_t> weights_by_name(const Presentation& p, const std::map<std::string, std::size_t>& w) {
  std::vector<std::size_t> out;
  for (const auto& g : p.generators()) {
    auto it = w.find(g.name);
    out.push_back(it == w.end() ? 0 : it->second);
  }
  for (const auto& [name, value] : w)
    if (std::none_of(p.generators().begin(), p.generators().end(), [&](const auto& g) { return g.name == name; }))
      throw InputError("weight for unknown generator '" + name + "'");
  return out;
}

}  // namespace preproj
